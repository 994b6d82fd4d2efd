#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ostrowski/cli.hpp"
#include "ostrowski/harness.hpp"

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ostrowski");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = ostrowski::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("encode and sigma emit digits, sigma and psi") {
    const auto r = invoke({"encode", "--alpha", "golden", "--n", "4"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["digits"] == nlohmann::json::array({0, 1, 0, 1}));
    CHECK(doc["sigma"] == 2);
    CHECK(doc["psi"]["2"] == 1);
    CHECK(doc["psi"]["0"] == 0);

    const auto s = invoke({"sigma", "--alpha", "silver", "--n", "7", "--lambda", "1,2"});
    REQUIRE(s.code == 0);
    const auto sdoc = nlohmann::json::parse(s.out);
    CHECK(sdoc["digits"] == nlohmann::json::array({0, 1, 1}));
    CHECK(sdoc["sigma"] == 2);
    CHECK(sdoc["psi"].size() == 2);
    CHECK(sdoc["psi"]["2"] == 2);

    const auto csv = invoke({"sigma", "--n", "4", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("# config {", 0) == 0);
    CHECK(csv.out.find("sigma,2\n") != std::string::npos);
}

TEST_CASE("global flags may follow the subcommand") {
    const auto r = invoke({"encode", "--n", "7", "--alpha", "silver"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["digits"] == nlohmann::json::array({0, 1, 1}));
}

TEST_CASE("decode") {
    const auto r = invoke({"decode", "--digits", "0,1,0,1"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["n"] == 4);
    CHECK(invoke({"decode", "--digits", "1,0,1"}).code == 2);
    CHECK(invoke({"decode", "--digits", "0,x"}).code == 2);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"encode"}).code == 2);
    CHECK(invoke({"encode", "--n", "4", "--alpha", "bronze"}).code == 2);
    CHECK(invoke({"encode", "--n", "4", "--format", "xml"}).code == 2);
    CHECK(invoke({"encode", "--n", "9", "--alpha", "list:1,2"}).code == 3);
    CHECK(invoke({"convergents", "--K", "200"}).code == 3);
    CHECK(invoke({"convergents", "--K", "5", "--alpha", "list:1,2"}).code == 3);
    CHECK(invoke({"fourier", "--lambda", "30"}).code == 3);
    CHECK(invoke({"correlate", "--fn", "gamma:1"}).code == 2);
    CHECK(invoke({"verify", "--only", "nonsense"}).code == 2);
    const auto help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("encode") != std::string::npos);
}

TEST_CASE("convergents table") {
    const auto r = invoke({"convergents", "--alpha", "silver", "--K", "4"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].rfind("# config ", 0) == 0);
    CHECK(rows[1] == "i,a,p,q");
    CHECK(rows[2] == "0,,0,1");
    CHECK(rows[6] == "4,2,12,29");

    const auto j = invoke({"convergents", "--K", "4", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["rows"][4]["q"] == 5);
}

TEST_CASE("correlate csv") {
    const auto r = invoke({"correlate", "--R", "4", "--N", "3", "--fn", "theta:1/2"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[1] == "r,re,im,abs");
    CHECK(rows[2].rfind("0,1,", 0) == 0);
    CHECK(rows[3].rfind("1,0.33333333333333331,", 0) == 0);
    CHECK(rows[6].rfind("quadratic_mean,", 0) == 0);

    const auto j = invoke({"correlate", "--R", "1", "--N", "100", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["quadratic_mean"] == 1.0);
}

TEST_CASE("fourier and spectrum") {
    const auto f = invoke({"fourier", "--lambda", "2", "--format", "json"});
    REQUIRE(f.code == 0);
    const auto doc = nlohmann::json::parse(f.out);
    CHECK(doc["energy"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["G"][1][0].get<double>() == doctest::Approx(1.0));

    const auto s = invoke({"spectrum", "--N", "1000", "--grid", "64", "--fn", "beta:0.3", "--format", "json"});
    REQUIRE(s.code == 0);
    const auto sdoc = nlohmann::json::parse(s.out);
    CHECK(std::abs(sdoc["beta_peak"].get<double>() - 0.7) < 1e-4);
    CHECK(sdoc["profile"].size() == 64);
}

TEST_CASE("verify with --only and --out") {
    const std::string path = "test_cli_verify.json";
    const auto r = invoke({"verify", "--only", "sieve", "--format", "json", "--out", path, "--seed", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(r.err.find("PASS sieve 500/500") != std::string::npos);
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    REQUIRE(doc["checks"].size() == 1);
    const auto report = ostrowski::CheckReport::from_json(doc["checks"][0]);
    CHECK(report.check_name == "sieve");
    CHECK(report.passed());
    in.close();
    std::remove(path.c_str());

    const std::string atoms = "test_cli_corrupt.json";
    {
        std::ofstream bad(atoms);
        bad << R"({"1": [[0, 1], [0, 1]]})";
    }
    CHECK(invoke({"verify", "--fn", "json:" + atoms}).code == 2);
    std::remove(atoms.c_str());
}

TEST_CASE("experiments") {
    const auto p = invoke({"experiment", "--kind", "pseudorandomness", "--fn", "theta:0", "--N", "2000", "--R", "4,16"});
    REQUIRE(p.code == 0);
    const auto rows = lines(p.out);
    CHECK(rows[0].rfind("# config {", 0) == 0);
    CHECK(rows[1] == "R,quadratic_mean,absolute_mean");
    CHECK(rows[2] == "4,1,1");
    CHECK(rows[3] == "16,1,1");

    const auto s = invoke({"experiment", "--kind", "spectrum", "--N", "20000", "--grid", "64", "--format", "json"});
    REQUIRE(s.code == 0);
    const auto doc = nlohmann::json::parse(s.out);
    CHECK(doc["peaks"].size() == 2);
    CHECK(doc["worst_contraction_excess"].get<double>() <= 1e-12);

    CHECK(invoke({"experiment", "--N", "10", "--R", "64"}).code == 2);
}
