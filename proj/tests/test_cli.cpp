// Drives the installed binary end to end. The path comes from TRIMAT_BIN
// (set by ctest); these tests fail fast if it is missing.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("TRIMAT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "TRIMAT_BIN must point at the trimat binary");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

}  // namespace

TEST_CASE("eval prints table values, bare negatives accepted") {
    CHECK(run_cli("eval T -12").out == "-20\n");
    CHECK(run_cli("eval T --n=-12").out == "-20\n");
    CHECK(run_cli("eval K 12").out == "1499\n");
    CHECK(run_cli("eval T -12").exit_code == 0);
}

TEST_CASE("matrix prints rows") {
    RunResult r = run_cli("matrix K -1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3 -2 -1\n-1 4 -1\n-1 0 5\n");
}

TEST_CASE("eval over a range equals repeated single evals") {
    RunResult range = run_cli("eval T -6..6");
    std::vector<std::string> range_lines = lines_of(range.out);
    REQUIRE(range_lines.size() == 13);
    for (long long n = -6; n <= 6; ++n) {
        RunResult single = run_cli("eval T " + std::to_string(n));
        CHECK(single.out == range_lines[static_cast<size_t>(n + 6)] + "\n");
    }
}

TEST_CASE("structured and plain modes carry identical values") {
    RunResult plain = run_cli("eval K -5..5");
    RunResult structured = run_cli("--structured eval K -5..5");
    std::vector<std::string> plain_lines = lines_of(plain.out);
    std::vector<std::string> json_lines = lines_of(structured.out);
    REQUIRE(plain_lines.size() == json_lines.size());
    for (size_t i = 0; i < plain_lines.size(); ++i) {
        json record = json::parse(json_lines[i]);
        CHECK(record["command"] == "eval");
        CHECK(record["n"] == -5 + static_cast<long long>(i));
        CHECK(record["value"] == plain_lines[i]);
    }

    json mrec = json::parse(run_cli("--structured matrix T -2").out);
    CHECK(mrec["rows"][0] == json::array({"0", "0", "1"}));
    CHECK(mrec["rows"][2] == json::array({"-1", "2", "0"}));
    RunResult mplain = run_cli("matrix T -2");
    CHECK(mplain.out == "0 0 1\n1 -1 -1\n-1 2 0\n");
}

TEST_CASE("spec files evaluate through eval") {
    const char* path = "/tmp/trimat_test_fib.json";
    {
        std::ofstream f(path);
        f << R"({"name": "F", "coefficients": [1, 1], "initials": [0, 1]})";
    }
    CHECK(run_cli(std::string("eval ") + path + " -4").out == "-3\n");
    CHECK(run_cli(std::string("eval ") + path + " 0..5").out == "0\n1\n1\n2\n3\n5\n");
    std::remove(path);

    // fractional backward values print as p/q
    const char* half = "/tmp/trimat_test_half.json";
    {
        std::ofstream f(half);
        f << R"({"name": "H", "coefficients": [1, 2], "initials": [0, "1/1"]})";
    }
    CHECK(run_cli(std::string("eval ") + half + " -1").out == "1/2\n");
    std::remove(half);
}

TEST_CASE("gf subcommand") {
    CHECK(run_cli("gf K_NEG --count 5").out == "3\n-1\n-1\n5\n-5\n");
    json rec = json::parse(lines_of(run_cli("--structured gf TMAT_NEG --count 3").out).at(2));
    CHECK(rec["n"] == 2);
    CHECK(rec["rows"][0] == json::array({"0", "0", "1"}));
}

TEST_CASE("sum subcommand with and without the oracle") {
    CHECK(run_cli("sum --family K --level scalar --m 1 --j 0 --n 3").out == "1\n");
    CHECK(run_cli("sum --family K --level scalar --m 1 --j 0 --n 3 --oracle").out == "1\n");
    RunResult matrix = run_cli("sum --family K --level matrix --m 1 --j 0 --n 2");
    CHECK(matrix.out == "4 0 2\n2 2 -2\n-2 4 4\n");
}

TEST_CASE("binet reports value and residual") {
    json rec = json::parse(run_cli("--structured binet T 10 --bits 192").out);
    CHECK(rec["exact"] == "149");
    CHECK(rec["value"].get<std::string>().substr(0, 3) == "149");
}

TEST_CASE("exit code contract") {
    CHECK(run_cli("corpus").exit_code == 0);
    CHECK(run_cli("check --expr \"T(n) = T(n)\" --range -5..5").exit_code == 0);
    CHECK(run_cli("check --expr \"K(n) = 3*T(n+1) - 2*T(n)\" --range 0..5").exit_code == 1);
    CHECK(run_cli("probe --expr \"(-1)^n * T(n) = T(n)\"").exit_code == 1);
    CHECK(run_cli("check --expr \"K(n = 3\" --range 0..1").exit_code == 2);  // parse error
    CHECK(run_cli("eval T notanumber").exit_code == 2);                      // usage error
    CHECK(run_cli("eval T 3.5").exit_code == 2);                             // not an integer
    CHECK(run_cli("eval T 1..b").exit_code == 2);
    CHECK(run_cli("eval /nonexistent/spec.json 3").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("check reads corpus files") {
    const char* path = "/tmp/trimat_test_corpus.txt";
    {
        std::ofstream f(path);
        f << "# two identities, one broken\n";
        f << "good: K(n) = T(n) + 2*T(n-1) + 3*T(n-2)\n";
        f << "bad: K(n) = T(n) + 2*T(n-1)\n";
    }
    RunResult r = run_cli(std::string("check ") + path + " --range -10..10");
    CHECK(r.exit_code == 1);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0].find("holds") != std::string::npos);
    CHECK(ls[1].find("FAILS") != std::string::npos);
    std::remove(path);
}

TEST_CASE("corpus verdict table lists every builtin entry") {
    RunResult r = run_cli("--structured corpus");
    std::vector<std::string> ls = lines_of(r.out);
    CHECK(ls.size() >= 20);
    for (const std::string& line : ls) {
        json rec = json::parse(line);
        CHECK(rec["verdict"] == "holds");
    }
}

TEST_CASE("bench cross-checks the two strategies") {
    json rec = json::parse(run_cli("--structured bench --n 512").out);
    CHECK(rec["match"] == true);
    CHECK(rec["n"] == 512);
    CHECK(rec["result_words"].get<long long>() > 1);
}

TEST_CASE("sum rejects bad enum values through the parser") {
    CHECK(run_cli("sum --family X --level scalar --m 1 --j 0 --n 1").exit_code == 2);
    CHECK(run_cli("sum --family T --level diagonal --m 1 --j 0 --n 1").exit_code == 2);
    CHECK(run_cli("sum --family T --level scalar --m 0 --j 0 --n 1").exit_code == 2);
}

TEST_CASE("TRIMAT_BITS sets the default precision") {
    const char* bin = std::getenv("TRIMAT_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string("TRIMAT_BITS=256 ") + bin + " --structured roots 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    pclose(pipe);
    CHECK(json::parse(out)["bits"] == 256);
}
