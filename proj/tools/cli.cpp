#include "cli.hpp"

#include "hypercf/hypercf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hypercf::cli {
namespace {

using nlohmann::json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
json to_json(const Integer& v) {
    if (v >= 0 && v.fits_ulong_p() && sizeof(unsigned long) == 8) return static_cast<std::uint64_t>(v.get_ui());
    if (v < 0 && v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

json to_json(const Rational& r) { return json{{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }


std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(' ');
        auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<DeltaVariant> parse_variants(const std::string& s) {
    std::vector<DeltaVariant> out;
    for (const auto& item : split_list(s)) {
        DeltaVariant v = parse_variant(item);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("at least one delta variant required");
    return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& s, const char* what) {
    std::vector<unsigned> out;
    for (const auto& item : split_list(s)) {
        Integer v = parse_integer(item);
        if (v < 1 || !v.fits_uint_p()) throw std::invalid_argument(std::string("bad ") + what + " value '" + item + "'");
        out.push_back(static_cast<unsigned>(v.get_ui()));
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

double millis(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

json attack_json(const Natural& n, const AttackConfig& cfg, const AttackResult& r) {
    json j{
        {"command", "attack"},
        {"n", to_json(n)},
        {"bound_exp", cfg.bound_exponent},
        {"workers", cfg.workers},
        {"status", std::string(to_string(r.status))},
        {"candidates_tried", r.candidates_tried},
        {"gcd_tests", r.gcd_tests},
        {"work_candidates", r.work_candidates},
        {"work_gcd_tests", r.work_gcd_tests},
        {"elapsed_ms", millis(r.elapsed)},
    };
    json variants = json::array();
    for (auto v : cfg.variants) variants.push_back(std::string(to_string(v)));
    j["variants"] = variants;
    if (r.status == AttackStatus::Factored) {
        j["factors"] = json::array({to_json(r.factor_small), to_json(r.factor_large)});
        j["gcd"] = to_json(r.gcd_hit);
        j["perfect_power"] = r.perfect_power;
    } else {
        j["factors"] = json::array();
    }
    if (r.delta_used) {
        j["delta"] = {{"i", to_json(r.delta_used->i)},
                      {"m", r.delta_used->m},
                      {"variant", std::string(to_string(r.delta_used->variant))},
                      {"value", to_json(r.delta_used->value)}};
    }
    if (r.convergent) {
        j["convergent"] = {{"p", to_json(r.convergent->p)}, {"q", to_json(r.convergent->q)}, {"index", r.convergent_index}};
    }
    return j;
}

// ---------------------------------------------------------------------------

struct AttackArgs {
    std::string n;
    unsigned bound_exp = 2;
    std::string variants = "raw";
    unsigned workers = 1;
    std::size_t max_convergents = 0;
    std::string e;
    bool literal_exponent = false;
    bool json_out = false;
};

int cmd_attack(const AttackArgs& a, std::ostream& out, std::ostream& err) {
    const Natural n = parse_integer(a.n);
    if (n <= 4) throw std::invalid_argument("modulus must be odd and > 4");
    if (mpz_even_p(n.get_mpz_t())) throw std::invalid_argument("even modulus unsupported");
    AttackConfig cfg;
    cfg.bound_exponent = a.bound_exp;
    cfg.variants = parse_variants(a.variants);
    cfg.workers = a.workers;
    if (a.max_convergents > 0) cfg.max_convergents_per_target = a.max_convergents;
    cfg.literal_exponent = a.literal_exponent;
    cfg.validate();

    const AttackResult r = parallel_attack(n, cfg);
    std::optional<Natural> d;
    std::string d_error;
    if (!a.e.empty() && r.status == AttackStatus::Factored) {
        try {
            d = recover_private_key(r.factor_small, r.factor_large, parse_integer(a.e));
        } catch (const std::invalid_argument& ex) {
            d_error = ex.what();
        }
    }

    if (a.json_out) {
        json j = attack_json(n, cfg, r);
        if (!a.e.empty()) {
            j["e"] = to_json(parse_integer(a.e));
            if (d) j["d"] = to_json(*d);
            if (!d_error.empty()) j["d_error"] = d_error;
        }
        out << j.dump() << "\n";
    } else {
        out << std::left;
        out << std::setw(18) << "n" << n << "\n";
        out << std::setw(18) << "status" << to_string(r.status) << "\n";
        if (r.status == AttackStatus::Factored) {
            out << std::setw(18) << "factors" << r.factor_small << " * " << r.factor_large << "\n";
            if (r.perfect_power) out << std::setw(18) << "method" << "perfect power\n";
        }
        if (r.delta_used) {
            out << std::setw(18) << "delta" << r.delta_used->value << "  (i=" << r.delta_used->i
                << ", m=" << r.delta_used->m << ", " << to_string(r.delta_used->variant) << ")\n";
        }
        if (r.convergent)
            out << std::setw(18) << "convergent" << r.convergent->p << "/" << r.convergent->q << "  (k="
                << r.convergent_index << ")\n";
        if (d) out << std::setw(18) << "d" << *d << "\n";
        out << std::setw(18) << "candidates_tried" << r.candidates_tried << "\n";
        out << std::setw(18) << "gcd_tests" << r.gcd_tests << "\n";
        out << std::setw(18) << "elapsed_ms" << std::fixed << std::setprecision(3) << millis(r.elapsed) << "\n";
    }
    if (!d_error.empty()) err << "warning: " << d_error << "\n";
    return r.status == AttackStatus::Factored ? kOk : kExhausted;
}

struct EnumerateArgs {
    std::string factors;
    bool csv = false;
    bool json_out = false;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
    const Factorization fact = Factorization::parse(a.factors);
    const Natural n = fact.value();
    const auto pts = enumerate_points(fact);

    auto alpha_of = [](const Point& pt) -> std::optional<Natural> {
        try {
            return alpha_from_point(pt);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    };

    if (a.csv) {
        out << "n,index,x,y,ratio_num,ratio_den,alpha\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            out << n << "," << i << "," << pts[i].x << "," << pts[i].y << ",";
            if (pts[i].y != 0) {
                const Rational r = ratio_of_point(pts[i]);
                out << r.num() << "," << r.den();
            } else {
                out << ",";
            }
            out << ",";
            if (auto al = alpha_of(pts[i])) out << *al;
            out << "\n";
        }
        return kOk;
    }
    if (a.json_out) {
        json rows = json::array();
        for (const auto& pt : pts) {
            json row{{"x", to_json(pt.x)}, {"y", to_json(pt.y)}};
            row["ratio"] = pt.y != 0 ? to_json(ratio_of_point(pt)) : json(nullptr);
            auto al = alpha_of(pt);
            row["alpha"] = al ? to_json(*al) : json(nullptr);
            rows.push_back(row);
        }
        out << json{{"command", "enumerate"}, {"n", to_json(n)}, {"factors", fact.str()}, {"points", rows}}.dump()
            << "\n";
        return kOk;
    }
    out << "n = " << n << " = " << fact.str() << "\n";
    out << "B_n = {";
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? ", " : "") << pts[i];
    out << "}\n";
    out << "ratios:";
    for (const auto& pt : pts)
        if (pt.y != 0) out << " " << ratio_of_point(pt);
    out << "\n";
    return kOk;
}

int cmd_cf(const std::string& num, const std::string& den, bool json_out, std::ostream& out) {
    const Rational r = make_rational(parse_integer(num), parse_integer(den));
    const auto terms = cf_expand(r);
    const auto convs = convergents(terms);
    if (json_out) {
        json t = json::array(), c = json::array();
        for (const auto& a : terms) t.push_back(to_json(a));
        for (const auto& k : convs) c.push_back(json{{"p", to_json(k.p)}, {"q", to_json(k.q)}, {"index", k.index}});
        out << json{{"command", "cf"}, {"value", to_json(r)}, {"terms", t}, {"convergents", c}}.dump() << "\n";
        return kOk;
    }
    out << "[";
    for (std::size_t i = 0; i < terms.size(); ++i) out << (i ? ", " : "") << terms[i];
    out << "]\n";
    for (const auto& k : convs) out << "k=" << k.index << "  " << k.p << "/" << k.q << "\n";
    return kOk;
}

void print_key(const rsa::KeyPair& k, bool json_out, std::ostream& out) {
    if (json_out) {
        out << json{{"command", "keygen"},  {"p", to_json(k.p)}, {"q", to_json(k.q)},    {"n", to_json(k.n)},
                    {"e", to_json(k.e)},    {"d", to_json(k.d)}, {"phi", to_json(k.phi)}}
                   .dump()
            << "\n";
        return;
    }
    out << std::left;
    out << std::setw(5) << "p" << k.p << "\n" << std::setw(5) << "q" << k.q << "\n";
    out << std::setw(5) << "n" << k.n << "\n" << std::setw(5) << "e" << k.e << "\n";
    out << std::setw(5) << "d" << k.d << "\n" << std::setw(5) << "phi" << k.phi << "\n";
}

int print_suite(const std::string& suite, const std::vector<verify::PropertyReport>& reports, std::ostream& out,
                bool json_out) {
    bool all_ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
        all_ok = all_ok && r.ok();
        json j{{"name", r.name}, {"passed", r.passed}, {"trials", r.trials}, {"ok", r.ok()},
               {"informational", r.informational}};
        if (r.counterexample) j["counterexample"] = *r.counterexample;
        arr.push_back(j);
    }
    if (json_out) {
        out << json{{"command", "verify"}, {"suite", suite}, {"ok", all_ok}, {"properties", arr}}.dump() << "\n";
    } else {
        for (const auto& r : reports) {
            const char* tag = r.informational ? "INFO" : (r.ok() ? "PASS" : "FAIL");
            out << "[" << tag << "] " << r.name << ": " << r.passed << "/" << r.trials;
            if (r.informational && r.trials > 0)
                out << " (" << std::fixed << std::setprecision(1) << 100.0 * double(r.passed) / double(r.trials)
                    << "%)";
            if (r.counterexample) out << "  first counterexample: " << *r.counterexample;
            out << "\n";
        }
    }
    return all_ok ? kOk : kExhausted;
}

struct BenchArgs {
    std::string bits_list;
    unsigned bound_exp = 2;
    std::string workers_list = "1";
    std::string variants = "raw,scaled";
    std::string csv_path;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    const auto bits = parse_unsigned_list(a.bits_list, "bits");
    const auto workers = parse_unsigned_list(a.workers_list, "workers");
    std::ofstream file;
    std::ostream* sink = &out;
    if (!a.csv_path.empty()) {
        file.open(a.csv_path);
        if (!file) {
            err << "error: cannot write '" << a.csv_path << "'\n";
            return kUsage;
        }
        sink = &file;
    }
    *sink << "n_bits,n,status,i_found,candidates_tried,gcd_tests,workers,elapsed_ms\n";
    for (unsigned nb : bits) {
        const auto key = rsa::keygen(nb, a.seed + nb);
        for (unsigned w : workers) {
            AttackConfig cfg;
            cfg.bound_exponent = a.bound_exp;
            cfg.variants = parse_variants(a.variants);
            cfg.workers = w;
            const auto r = parallel_attack(key.n, cfg);
            *sink << nb << "," << key.n << "," << to_string(r.status) << ",";
            if (r.delta_used) *sink << r.delta_used->i;
            *sink << "," << r.candidates_tried << "," << r.gcd_tests << "," << w << "," << std::fixed
                  << std::setprecision(3) << millis(r.elapsed) << "\n";
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbola-structure continued-fraction factoring toolkit", "hypercf"};
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags (flags win)");
    app.require_subcommand(1);

    AttackArgs attack_args;
    auto* attack = app.add_subcommand("attack", "Factor n by scanning the delta schedule");
    attack->add_option("--n", attack_args.n, "Odd composite modulus")->required();
    attack->add_option("--bound-exp", attack_args.bound_exp, "Scan i = 1..10^y")->capture_default_str();
    attack->add_option("--variants", attack_args.variants, "raw,scaled")->capture_default_str();
    attack->add_option("--workers", attack_args.workers, "Parallel workers")->capture_default_str();
    attack->add_option("--max-convergents", attack_args.max_convergents, "Cap convergents per target (0 = all)");
    attack->add_option("--e", attack_args.e, "Public exponent; recovers d when factoring succeeds");
    attack->add_flag("--literal-exponent", attack_args.literal_exponent,
                     "Use floor(digits(n)/2)+1+digits(i) as the delta exponent");
    attack->add_flag("--json", attack_args.json_out, "Emit one JSON object");

    EnumerateArgs enum_args;
    auto* enumerate = app.add_subcommand("enumerate", "List hyperbola points for a factored modulus");
    enumerate->add_option("--factors", enum_args.factors, "p^a,q^b,...")->required();
    enumerate->add_flag("--csv", enum_args.csv, "CSV rows for plotting");
    enumerate->add_flag("--json", enum_args.json_out, "Emit one JSON object");

    std::string cf_num, cf_den;
    bool cf_json = false;
    auto* cf = app.add_subcommand("cf", "Continued fraction expansion and convergents of num/den");
    cf->add_option("--num", cf_num)->required();
    cf->add_option("--den", cf_den)->required();
    cf->add_flag("--json", cf_json);

    unsigned kg_bits = 32;
    std::uint64_t kg_seed = 1;
    bool kg_small_d = false, kg_json = false;
    auto* keygen = app.add_subcommand("keygen", "Seeded toy RSA key pair");
    keygen->add_option("--bits", kg_bits)->capture_default_str();
    keygen->add_option("--seed", kg_seed)->capture_default_str();
    keygen->add_flag("--small-d", kg_small_d, "d below the Wiener bound n^(1/4)/3");
    keygen->add_flag("--json", kg_json);

    std::string w_n, w_e;
    bool w_json = false;
    auto* wiener = app.add_subcommand("wiener", "Wiener's continued-fraction attack on (n, e)");
    wiener->add_option("--n", w_n)->required();
    wiener->add_option("--e", w_e)->required();
    wiener->add_flag("--json", w_json);

    std::string r_p, r_q, r_e;
    bool r_json = false;
    auto* recover = app.add_subcommand("recover", "Private exponent from p, q, e");
    recover->add_option("--p", r_p)->required();
    recover->add_option("--q", r_q)->required();
    recover->add_option("--e", r_e)->required();
    recover->add_flag("--json", r_json);

    std::string v_suite = "theorems";
    verify::SuiteOptions v_opt;
    bool v_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run a seeded property suite");
    verify_cmd->add_option("--suite", v_suite)
        ->check(CLI::IsMember({"theorems", "conjecture", "window"}))
        ->capture_default_str();
    verify_cmd->add_option("--trials", v_opt.trials)->capture_default_str();
    verify_cmd->add_option("--seed", v_opt.seed)->capture_default_str();
    verify_cmd->add_option("--max-bits", v_opt.max_bits)->capture_default_str();
    verify_cmd->add_flag("--json", v_json);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Operation counters and timings as CSV");
    bench->add_option("--bits-list", bench_args.bits_list, "e.g. 24,32,40")->required();
    bench->add_option("--bound-exp", bench_args.bound_exp)->capture_default_str();
    bench->add_option("--workers-list", bench_args.workers_list)->capture_default_str();
    bench->add_option("--variants", bench_args.variants)->capture_default_str();
    bench->add_option("--seed", bench_args.seed)->capture_default_str();
    bench->add_option("--csv", bench_args.csv_path, "Output path (stdout when omitted)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*attack) return cmd_attack(attack_args, out, err);
        if (*enumerate) return cmd_enumerate(enum_args, out);
        if (*cf) return cmd_cf(cf_num, cf_den, cf_json, out);
        if (*keygen) {
            print_key(rsa::keygen(kg_bits, kg_seed, kg_small_d), kg_json, out);
            return kOk;
        }
        if (*wiener) {
            const Natural n = parse_integer(w_n);
            const Natural e = parse_integer(w_e);
            const auto r = rsa::wiener_attack_full(n, e);
            if (w_json) {
                json j{{"command", "wiener"}, {"n", to_json(n)}, {"e", to_json(e)}, {"recovered", r.has_value()}};
                if (r) {
                    j["d"] = to_json(r->d);
                    if (r->p > 0) j["factors"] = json::array({to_json(r->p), to_json(r->q)});
                }
                out << j.dump() << "\n";
            } else if (r) {
                out << "d = " << r->d << "\n";
                if (r->p > 0) out << "factors = " << r->p << " * " << r->q << "\n";
            } else {
                out << "not recovered\n";
            }
            return r ? kOk : kExhausted;
        }
        if (*recover) {
            const Natural d = recover_private_key(parse_integer(r_p), parse_integer(r_q), parse_integer(r_e));
            if (r_json)
                out << json{{"command", "recover"}, {"d", to_json(d)}}.dump() << "\n";
            else
                out << "d = " << d << "\n";
            return kOk;
        }
        if (*verify_cmd) {
            std::vector<verify::PropertyReport> reports;
            if (v_suite == "theorems")
                reports = verify::theorems_suite(v_opt);
            else if (v_suite == "window")
                reports = verify::window_suite(v_opt);
            else
                reports = verify::conjecture_suite(v_opt);
            return print_suite(v_suite, reports, out, v_json);
        }
        if (*bench) return cmd_bench(bench_args, out, err);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace hypercf::cli
