// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fail.

#include "cli.hpp"
#include "hypercf/hypercf.hpp"
#include "point_table.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace hypercf;
using nlohmann::json;

namespace {

struct Verdict {
    bool ok;
    std::string detail;
};

std::string rat_str(const json& r) {
    if (r.is_null()) return "";
    const std::string num = r["num"].is_string() ? r["num"].get<std::string>() : r["num"].dump();
    const std::string den = r["den"].is_string() ? r["den"].get<std::string>() : r["den"].dump();
    return den == "1" ? num : num + "/" + den;
}

std::string int_str(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::pair<int, std::string> cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hypercf");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str()};
}

Verdict point_table() {
    int rows_ok = 0;
    std::string first_bad;
    for (const auto& row : testdata::point_table()) {
        const auto [code, out] = cli({"enumerate", "--factors", row.factors, "--json"});
        bool ok = code == 0;
        if (ok) {
            const auto j = json::parse(out);
            const auto& pts = j["points"];
            ok = int_str(j["n"]) == row.n && pts.size() == row.points.size();
            std::multiset<std::string> got, want(row.ratios.begin(), row.ratios.end());
            for (std::size_t i = 0; ok && i < pts.size(); ++i) {
                ok = int_str(pts[i]["x"]) == row.points[i].first && int_str(pts[i]["y"]) == row.points[i].second;
                if (!pts[i]["ratio"].is_null()) got.insert(rat_str(pts[i]["ratio"]));
            }
            ok = ok && got == want;
        }
        if (ok)
            ++rows_ok;
        else if (first_bad.empty())
            first_bad = " first mismatch n=" + row.n;
    }
    const int total = static_cast<int>(testdata::point_table().size());
    return {rows_ok == total, std::to_string(rows_ok) + "/" + std::to_string(total) + " rows exact" + first_bad};
}

Verdict attack_example_1() {
    AttackConfig cfg;
    cfg.bound_exponent = 2;
    const auto r = attack(14893, cfg);
    const bool factored = r.status == AttackStatus::Factored && r.factor_small == 53 && r.factor_large == 281;
    const auto h = test_delta(14893, make_rational(7447, 7446), make_rational(7, 1000));
    const bool delta_ok = h && h->factor == 281 && h->convergent.p == 141 && h->convergent.q == 140;
    return {factored && delta_ok, "attack -> {" + r.factor_small.get_str() + ", " + r.factor_large.get_str() +
                                      "}; test_delta via " + (h ? h->convergent.value().str() : "none")};
}

Verdict attack_example_2() {
    const auto h = test_delta(439007603, make_rational(219503802, 219503801), make_rational(1938, 100000000));
    const bool delta_ok = h && h->factor == 13931 && h->convergent.p == Integer("122935301") &&
                          h->convergent.q == Integer("122932918");
    AttackConfig cfg;
    cfg.bound_exponent = 4;
    const auto r = attack(439007603, cfg);
    const bool factored = r.status == AttackStatus::Factored && r.factor_small * r.factor_large == 439007603 &&
                          r.factor_small == 13931;
    return {delta_ok && factored, std::string("test_delta -> ") + (h ? h->factor.get_str() : "none") + " via " +
                                      (h ? h->convergent.value().str() : "none") + "; attack b=10^4 -> " +
                                      std::string(to_string(r.status)) + " at i=" +
                                      (r.delta_used ? r.delta_used->i.get_str() : "-")};
}

Verdict suite_verdict(const std::vector<verify::PropertyReport>& reports, const std::set<std::string>& required) {
    bool ok = true;
    std::string detail;
    std::size_t seen = 0;
    for (const auto& r : reports) {
        if (!required.empty() && !required.count(r.name)) continue;
        ++seen;
        ok = ok && r.passed == r.trials && r.trials > 0;
        if (!detail.empty()) detail += "; ";
        detail += r.name + " " + std::to_string(r.passed) + "/" + std::to_string(r.trials);
        if (r.counterexample) detail += " (" + *r.counterexample + ")";
    }
    return {ok && (required.empty() || seen == required.size()), detail};
}

Verdict window_oracle() {
    verify::SuiteOptions opt;
    opt.trials = 200;
    opt.seed = 1;
    opt.max_bits = 16;
    return suite_verdict(verify::window_suite(opt), {"|r4 + delta - r3| < 1/(2 alpha_j3^2)",
                                                     "test_delta finds a nontrivial factor"});
}

Verdict theorem_suites() {
    verify::SuiteOptions ident;
    ident.trials = 500;
    ident.seed = 1;
    auto a = verify::theorems_suite(ident);
    const auto first = suite_verdict(a, {"split_ratio: sum p, difference 1, coprime",
                                         "power identity: alpha_i^a - alpha_j^a = p*delta, a in {2,4,6,8}",
                                         "prime square t^2: exactly 3 points"});
    verify::SuiteOptions group;
    group.trials = 100;
    group.seed = 1;
    const auto second =
        suite_verdict(verify::theorems_suite(group), {"group law: P2 + P3 = P4", "polynomial coordinates of P0..P4"});
    return {first.ok && second.ok, first.detail + "; " + second.detail};
}

Verdict cf_engine() {
    std::mt19937_64 rng(20240601);
    int round_trip = 0, determinant = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Integer num = random_range(rng, Integer(0), Integer(1) << 128);
        Integer den = random_range(rng, Integer(1), Integer(1) << 128);
        if (t % 4 == 1) num = -num;
        const Rational r = make_rational(num, den);
        const auto terms = cf_expand(r);
        // fold the terms back with GMP rationals, innermost first
        mpq_class back(terms.back());
        for (std::size_t k = terms.size() - 1; k-- > 0;) back = mpq_class(terms[k]) + 1 / back;
        mpq_class want(num, den);
        want.canonicalize();
        round_trip += back == want;

        const auto convs = convergents(terms);
        bool det = true;
        for (std::size_t k = 1; k < convs.size(); ++k) {
            const Integer lhs = convs[k].p * convs[k - 1].q - convs[k - 1].p * convs[k].q;
            det = det && lhs == ((k % 2) ? -1 : 1) * -1;
        }
        det = det && convs.back().value() == r;
        determinant += det;
    }
    return {round_trip == trials && determinant == trials,
            "round trip " + std::to_string(round_trip) + "/1000, determinant law " + std::to_string(determinant) +
                "/1000"};
}

Verdict wiener() {
    int broken = 0, refused = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const unsigned bits = 32 + static_cast<unsigned>(seed % 17);
        const auto k = rsa::keygen(bits, seed, true);
        if (rsa::below_wiener_bound(k.d, k.n) && rsa::wiener_attack(k.n, k.e) == k.d) ++broken;
        const auto big = rsa::keygen_large_d(bits, seed);
        if (!rsa::below_wiener_bound(big.d, big.n) && !rsa::wiener_attack(big.n, big.e)) ++refused;
    }
    return {broken == 100 && refused >= 95, "small-d broken " + std::to_string(broken) +
                                                "/100, large-d not recovered " + std::to_string(refused) + "/100"};
}

Verdict parallel_determinism() {
    int identical = 0, runs = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto key = rsa::keygen(24 + static_cast<unsigned>(seed % 16), seed);
        AttackConfig cfg;
        cfg.bound_exponent = 3;
        cfg.variants = {DeltaVariant::Raw, DeltaVariant::Scaled};
        const auto seq = attack(key.n, cfg);
        for (unsigned w : {2U, 4U}) {
            cfg.workers = w;
            ++runs;
            identical += same_outcome(seq, parallel_attack(key.n, cfg));
        }
    }
    return {identical == runs, std::to_string(identical) + "/" + std::to_string(runs) + " parallel runs identical"};
}

struct BenchRow {
    std::string n, status;
    std::uint64_t candidates = 0, gcd_tests = 0;
};

BenchRow bench_row(unsigned y) {
    const auto [code, out] = cli({"bench", "--bits-list", "48", "--bound-exp", std::to_string(y), "--seed", "1"});
    BenchRow row;
    if (code != 0) return row;
    std::istringstream in(out);
    std::string line;
    std::getline(in, line);  // header
    std::getline(in, line);
    std::vector<std::string> cols;
    std::istringstream cells(line);
    for (std::string c; std::getline(cells, c, ',');) cols.push_back(c);
    if (cols.size() != 8) return row;
    row.n = cols[1];
    row.status = cols[2];
    row.candidates = std::stoull(cols[4]);
    row.gcd_tests = std::stoull(cols[5]);
    return row;
}

// Longest convergent list over the candidates the scan tests.
std::size_t max_convergents(const Natural& n, unsigned y) {
    const Rational r4 = p4_ratio(n);
    const Natural aj4 = (n - 1) / 2;
    std::size_t best = 0;
    const std::uint64_t b = pow10(y).get_ui();
    for (std::uint64_t i = 1; i <= b; ++i)
        for (auto v : {DeltaVariant::Raw, DeltaVariant::Scaled}) {
            const auto c = delta_schedule(i, aj4, v);
            if (c.positive()) best = std::max(best, cf_expand(r4 + c.value).size());
        }
    return best;
}

Verdict bench_counters() {
    std::vector<BenchRow> rows;
    std::vector<std::uint64_t> bounds;
    bool ok = true;
    std::string detail;
    for (unsigned y : {2U, 3U, 4U}) {
        const auto row = bench_row(y);
        const std::uint64_t b = pow10(y).get_ui();
        if (row.n.empty()) return {false, "bench failed at y=" + std::to_string(y)};
        const std::size_t maxc = max_convergents(parse_integer(row.n), y);
        ok = ok && row.status == "EXHAUSTED" && row.candidates <= 2 * b && row.gcd_tests <= row.candidates * maxc;
        detail += "y=" + std::to_string(y) + ": " + row.status + " cand=" + std::to_string(row.candidates) +
                  " gcd=" + std::to_string(row.gcd_tests) + " (<= " + std::to_string(row.candidates * maxc) + "); ";
        rows.push_back(row);
        bounds.push_back(b);
    }
    // finite-difference slopes per unit of b
    auto slope = [&](std::size_t k, auto field) {
        return double(field(rows[k]) - field(rows[k - 1])) / double(bounds[k] - bounds[k - 1]);
    };
    auto cand = [](const BenchRow& r) { return r.candidates; };
    auto gcds = [](const BenchRow& r) { return r.gcd_tests; };
    const double c1 = slope(1, cand), c2 = slope(2, cand);
    const double g1 = slope(1, gcds), g2 = slope(2, gcds);
    const double cdev = std::abs(c2 - c1) / c1, gdev = std::abs(g2 - g1) / g1;
    ok = ok && cdev <= 0.10 && gdev <= 0.10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%s; candidate slopes %.3f/%.3f (%.1f%%), gcd slopes %.2f/%.2f (%.1f%%)",
                  rows[0].n.c_str(), c1, c2, 100 * cdev, g1, g2, 100 * gdev);
    return {ok, detail + buf};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Verdict()> fn;
    };
    const std::vector<Criterion> criteria{
        {1, "hyperbola point table", 1.0, point_table},
        {2, "attack example 14893", 1.0, attack_example_1},
        {3, "attack example 439007603", 30.0, attack_example_2},
        {4, "delta window oracle", 10.0, window_oracle},
        {5, "identity suites", 10.0, theorem_suites},
        {6, "continued fraction engine", 5.0, cf_engine},
        {7, "Wiener baseline", 10.0, wiener},
        {8, "parallel determinism", 60.0, parallel_determinism},
        {9, "bench counters", 60.0, bench_counters},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.fn();
        } catch (const std::exception& ex) {
            v = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = v.ok && in_time;
        failures += !pass;
        std::printf("criterion %d %-28s %s  %.3fs (limit %.0fs)  %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                    c.limit_s, v.detail.c_str(), in_time ? "" : " [over time limit]");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
