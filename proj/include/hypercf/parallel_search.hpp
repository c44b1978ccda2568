#pragma once

// Sharded execution of the attack's delta schedule.
//
// Worker s of w owns indices {s+1, s+1+w, s+1+2w, ...} within [1, b]. Each
// candidate (i, variant) has a global rank (i-1)*|variants| + variant_pos; the
// lowest-ranked hit wins, so the outcome matches the sequential scan no matter
// which worker finishes first. A shared atomic holds the best rank found so
// far; a worker stops once its next candidate ranks above it. Candidates are
// never abandoned midway, and every candidate ranked below the winner is
// tested by its owner before that owner stops.

#include "hypercf/attack.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace hypercf {

struct ShardPlan {
    unsigned workers = 1;
    unsigned shard = 0;

    /// First index owned by this shard (1-based).
    std::uint64_t first() const { return shard + 1ULL; }
    std::uint64_t step() const { return workers; }
    bool owns(std::uint64_t i) const { return i >= 1 && (i - 1) % workers == shard; }

    /// Indices of [1, bound] owned by this shard, ascending.
    std::vector<std::uint64_t> indices(std::uint64_t bound) const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t i = first(); i <= bound; i += step()) out.push_back(i);
        return out;
    }
};

namespace detail {

struct ShardLog {
    struct Entry {
        std::uint64_t rank;
        std::uint64_t gcd_tests;
    };
    std::vector<Entry> tested;  // positive candidates in the order tested
    std::optional<std::uint64_t> hit_rank;
    std::optional<DeltaCandidate> hit_delta;
    std::optional<DeltaHit> hit;
};

}  // namespace detail

inline AttackResult parallel_attack(const Natural& n, const AttackConfig& cfg) {
    cfg.validate();
    if (cfg.workers == 1) return attack(n, cfg);
    if (!cfg.bound().fits_ulong_p()) throw std::invalid_argument("bound too large for sharded search");

    const auto t0 = std::chrono::steady_clock::now();
    if (auto r = detail::precheck(n)) {
        r->elapsed = std::chrono::steady_clock::now() - t0;
        return *r;
    }

    const Natural alpha_j4 = (n - 1) / 2;
    const Rational r4 = p4_ratio(n);
    const std::uint64_t b = cfg.bound().get_ui();
    const std::uint64_t nv = cfg.variants.size();

    std::atomic<std::uint64_t> best_rank{std::numeric_limits<std::uint64_t>::max()};
    std::vector<detail::ShardLog> logs(cfg.workers);

    auto run_shard = [&](unsigned shard) {
        const ShardPlan plan{cfg.workers, shard};
        auto& log = logs[shard];
        for (std::uint64_t i = plan.first(); i <= b; i += plan.step()) {
            for (std::uint64_t v = 0; v < nv; ++v) {
                const std::uint64_t rank = (i - 1) * nv + v;
                if (rank > best_rank.load(std::memory_order_acquire)) return;
                DeltaCandidate cand = detail::candidate_for(Natural(static_cast<unsigned long>(i)), n, alpha_j4,
                                                            cfg.variants[v], cfg);
                if (!cand.positive()) continue;
                auto outcome = test_delta_counted(n, r4, cand.value, cfg.max_convergents_per_target);
                log.tested.push_back({rank, outcome.gcd_tests});
                if (outcome.hit) {
                    log.hit_rank = rank;
                    log.hit_delta = std::move(cand);
                    log.hit = std::move(outcome.hit);
                    std::uint64_t cur = best_rank.load(std::memory_order_relaxed);
                    while (rank < cur && !best_rank.compare_exchange_weak(cur, rank, std::memory_order_acq_rel)) {
                    }
                    return;
                }
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(cfg.workers);
        for (unsigned s = 0; s < cfg.workers; ++s) pool.emplace_back(run_shard, s);
    }

    AttackResult result;
    const detail::ShardLog* winner = nullptr;
    for (const auto& log : logs)
        if (log.hit_rank && (!winner || *log.hit_rank < *winner->hit_rank)) winner = &log;

    const std::uint64_t cutoff = winner ? *winner->hit_rank : std::numeric_limits<std::uint64_t>::max();
    for (const auto& log : logs) {
        for (const auto& e : log.tested) {
            ++result.work_candidates;
            result.work_gcd_tests += e.gcd_tests;
            if (e.rank <= cutoff) {
                ++result.candidates_tried;
                result.gcd_tests += e.gcd_tests;
            }
        }
    }
    if (winner) {
        detail::fill_factors(result, n, winner->hit->factor);
        result.delta_used = winner->hit_delta;
        result.convergent = winner->hit->convergent;
        result.convergent_index = winner->hit->index;
    }
    result.elapsed = std::chrono::steady_clock::now() - t0;
    return result;
}

}  // namespace hypercf
