#include <json.hpp>
#include <sstream>

#include "app.hpp"
#include "doctest.h"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = hk::app::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string value(const std::string& json_text, const std::string& key) {
    return nlohmann::json::parse(json_text)["entries"][key]["value"].get<std::string>();
}

}  // namespace

TEST_CASE("scalar table as JSON") {
    const Result r = run({"coeffs", "--bundle", "scalar", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(value(r.out, "c2_1") == "1/72");
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["bundle"] == "scalar");
    CHECK(j["entries"]["c1"]["num"] == nlohmann::json::array({1}));
    CHECK(j["entries"]["c1"]["den"] == nlohmann::json::array({6}));
}

TEST_CASE("transverse sphere numbers") {
    const Result primed = run({"coeffs", "--bundle", "transverse", "--sphere", "4", "--primed", "--format", "json"});
    REQUIRE(primed.code == 0);
    CHECK(value(primed.out, "c0") == "3/1");
    CHECK(value(primed.out, "c1") == "1/4");
    CHECK(value(primed.out, "c2") == "-7/1440");
    CHECK(value(primed.out, "c3") == "-541/362880");
    const Result plain = run({"sphere", "--d", "4", "--format", "json"});
    REQUIRE(plain.code == 0);
    CHECK(value(plain.out, "c2") == "-67/1440");
    CHECK(value(plain.out, "c3") == "-4321/362880");
}

TEST_CASE("log parts at d = 4") {
    const Result r = run({"coeffs", "--bundle", "transverse", "--d4", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["entries"]["c3_7"]["log_part"]["value"] == "1/360");
    CHECK(j["entries"]["c3_9"]["log_part"]["value"] == "0/1");
}

TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{{"coeffs", "--bundle", "transverse", "--format", "json"},
                                                                  {"partials", "--n", "3", "--subtraces", "--format", "latex"},
                                                                  {"offdiag", "--n", "2", "--derivs", "2", "--format", "json"}}) {
        const Result a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    CHECK(hk::app::golden_files() == hk::app::golden_files());
}

TEST_CASE("validation failures exit with 1") {
    const std::vector<std::vector<std::string>> bad{
        {},
        {"coeffs"},
        {"coeffs", "--bundle", "spinor"},
        {"coeffs", "--bundle", "scalar", "--primed"},
        {"coeffs", "--bundle", "transverse", "--sphere", "3", "--primed"},
        {"coeffs", "--bundle", "transverse", "--einstein", "--d4"},
        {"coeffs", "--bundle", "vector", "--d4"},
        {"coeffs", "--bundle", "scalar", "--sphere", "x"},
        {"coeffs", "--bundle", "scalar", "--format", "yaml"},
        {"offdiag", "--n", "3", "--derivs", "1"},
        {"offdiag", "--sigma", "--derivs", "9"},
        {"offdiag", "--n", "1", "--derivs", "0", "--format", "latex"},
        {"partials", "--n", "5"},
        {"reduce", "--expr", "Riem[a b"},
        {"reduce", "--expr", "Ric[a b;c d] Riem[a c b d]"},
        {"verify", "--sphere-d", "3", "--field", "transverse", "--primed"},
        {"verify", "--sphere-d", "3", "--s-min", "0.1", "--s-max", "0.01"},
        {"all-tables", "--self-check", "--golden-dir", "no/such/dir"},
    };
    for (const auto& args : bad) {
        const Result r = run(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        CAPTURE(joined);
        CHECK(r.code == 1);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("reduce prints the basis decomposition") {
    const Result r = run({"reduce", "--expr", "Riem[a b c d] Riem[a b c d;e e]", "--integrated"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("c3_9 = -1\n") != std::string::npos);
    CHECK(r.out.find("c3_3") == std::string::npos);
}

TEST_CASE("offdiag cells") {
    CHECK(run({"offdiag", "--n", "1", "--derivs", "0"}).out == "(1/6) R\n(-1) E\n");
    CHECK(run({"offdiag", "--sigma", "--derivs", "2"}).out == "(1) g[u u]\n");
}

TEST_CASE("verify fits the sphere spectra") {
    const Result r = run({"verify", "--sphere-d", "4", "--field", "transverse", "--primed", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["coefficients"][3]["exact"] == "-541/362880");
    // A grid far outside the asymptotic regime fails the tolerance check.
    const Result far = run({"verify", "--sphere-d", "3", "--field", "scalar", "--s-min", "1", "--s-max", "20", "--extra", "1"});
    CHECK(far.code == 2);
}

TEST_CASE("golden files self-check") {
    const Result r = run({"all-tables", "--self-check"});
    INFO(r.err);
    CHECK(r.code == 0);
    CHECK(hk::app::golden_files().size() == 22);
}
