#include "cli.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "hypercf");
    std::ostringstream out, err;
    const int code = hypercf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

// CSV body without the elapsed_ms column
std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

}  // namespace

TEST_CASE("attack command", "[cli]") {
    auto r = run({"attack", "--n", "14893", "--bound-exp", "2", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["factors"] == json::array({53, 281}));
    CHECK(j["status"] == "FACTORED");
    CHECK(j["convergent"]["p"] == 141);
    CHECK(count_lines(r.out) == 1);

    r = run({"attack", "--n", "439007603", "--bound-exp", "4", "--json", "--workers", "2"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["factors"] == json::array({13931, 31513}));

    r = run({"attack", "--n", "14893", "--bound-exp", "2", "--e", "11", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["d"] == 3971);

    r = run({"attack", "--n", "16"});
    CHECK(r.code == 1);
    CHECK(r.err.find("even modulus unsupported") != std::string::npos);

    r = run({"attack", "--n", "1000036000099", "--bound-exp", "1", "--max-convergents", "1", "--json"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.out)["status"] == "EXHAUSTED");

    CHECK(run({"attack", "--n", "abc"}).code == 1);
    CHECK(run({"attack", "--n", "15", "--variants", "cooked"}).code == 1);
    CHECK(run({"attack"}).code == 1);
    CHECK(run({"attack", "--n", "15", "--bound-exp", "1"}).code == 0);
}

TEST_CASE("enumerate command", "[cli]") {
    auto r = run({"enumerate", "--factors", "3,5", "--csv"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 6);
    CHECK(r.out.rfind("n,index,x,y,ratio_num,ratio_den,alpha\n", 0) == 0);
    CHECK(r.out.find("15,4,256,224,8,7,7") != std::string::npos);

    r = run({"enumerate", "--factors", "3^2", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["points"].size() == 3);

    r = run({"enumerate", "--factors", "7", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["points"].size() == 2);

    r = run({"enumerate", "--factors", "9,5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("not a prime") != std::string::npos);

    r = run({"enumerate", "--factors", "53,281"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("141/140") != std::string::npos);
}

TEST_CASE("cf command", "[cli]") {
    auto r = run({"cf", "--num", "8", "--den", "7", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["terms"] == json::array({1, 7}));
    CHECK(j["convergents"][1]["p"] == 8);

    r = run({"cf", "--num", "7499122", "--den", "7446000", "--json"});
    j = json::parse(r.out);
    CHECK(j["terms"][0] == 1);
    CHECK(j["terms"][1] == 140);

    r = run({"cf", "--num", "0", "--den", "3"});
    CHECK(r.out.rfind("[0]", 0) == 0);

    CHECK(run({"cf", "--num", "1", "--den", "0"}).code == 1);
}

TEST_CASE("key commands", "[cli]") {
    auto a = run({"keygen", "--bits", "16", "--seed", "42"});
    auto b = run({"keygen", "--bits", "16", "--seed", "42"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run({"keygen", "--bits", "4"}).code == 1);

    auto r = run({"recover", "--p", "53", "--q", "281", "--e", "11", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["d"] == 3971);
    r = run({"recover", "--p", "53", "--q", "281", "--e", "13"});
    CHECK(r.code == 1);
    CHECK(r.err.find("e shares factor with phi(n)") != std::string::npos);

    const auto key = json::parse(run({"keygen", "--bits", "40", "--seed", "9", "--small-d", "--json"}).out);
    r = run({"wiener", "--n", key["n"].dump(), "--e", key["e"].dump(), "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["d"] == key["d"]);

    const auto plain = json::parse(run({"keygen", "--bits", "40", "--seed", "9", "--json"}).out);
    CHECK(run({"wiener", "--n", plain["n"].dump(), "--e", plain["e"].dump()}).code == 2);
}

TEST_CASE("verify command", "[cli]") {
    auto r = run({"verify", "--suite", "window", "--trials", "200", "--seed", "1", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["ok"] == true);
    for (const auto& p : j["properties"]) CHECK(p["passed"] == 200);

    r = run({"verify", "--suite", "theorems", "--trials", "100", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);

    r = run({"verify", "--suite", "conjecture", "--trials", "50", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("INFO") != std::string::npos);

    CHECK(run({"verify", "--suite", "nonsense"}).code == 1);
}

TEST_CASE("bench command", "[cli]") {
    auto a = run({"bench", "--bits-list", "24", "--workers-list", "1,4", "--seed", "3"});
    REQUIRE(a.code == 0);
    CHECK(count_lines(a.out) == 3);
    CHECK(a.out.rfind("n_bits,n,status,i_found,candidates_tried,gcd_tests,workers,elapsed_ms\n", 0) == 0);
    auto b = run({"bench", "--bits-list", "24", "--workers-list", "1,4", "--seed", "3"});
    CHECK(strip_timing(a.out) == strip_timing(b.out));

    CHECK(run({"bench", "--bits-list", ""}).code == 1);
    CHECK(run({"bench", "--bits-list", "24", "--csv", "/nonexistent-dir/x.csv"}).code == 1);

    const auto path = std::filesystem::temp_directory_path() / "hypercf_bench_test.csv";
    REQUIRE(run({"bench", "--bits-list", "24,28", "--csv", path.string()}).code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(count_lines(ss.str()) == 3);
    std::filesystem::remove(path);
}

TEST_CASE("config file supplies flags", "[cli]") {
    const auto path = std::filesystem::temp_directory_path() / "hypercf_cli_test.toml";
    {
        std::ofstream cfg(path);
        cfg << "[attack]\nn = 14893\nbound-exp = 2\njson = true\n";
    }
    auto r = run({"--config", path.string(), "attack"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["factors"] == json::array({53, 281}));

    // flags win over the file
    r = run({"--config", path.string(), "attack", "--n", "15"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["factors"] == json::array({3, 5}));
    std::filesystem::remove(path);
}
