#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "crn/cli.hpp"

namespace {

std::string fixture(const std::string& name) {
    return std::string(CRN_FIXTURES_DIR) + "/" + name + ".crn";
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = crn::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Golden command table: report name -> argv.
const std::vector<std::pair<std::string, std::vector<std::string>>> kGolden = {
    {"analyze_mm_rev", {"analyze", fixture("mm_rev"), "--json"}},
    {"analyze_mm_irrev", {"analyze", fixture("mm_irrev"), "--json"}},
    {"analyze_compinh", {"analyze", fixture("compinh"), "--json"}},
    {"analyze_futile", {"analyze", fixture("futile"), "--json"}},
    {"analyze_futile_rev", {"analyze", fixture("futile_rev"), "--json"}},
    {"analyze_kinase", {"analyze", fixture("kinase"), "--json"}},
    {"analyze_lin3", {"analyze", fixture("lin3"), "--json"}},
    {"analyze_net1", {"analyze", fixture("net1"), "--json"}},
    {"analyze_minus", {"analyze", fixture("minus"), "--json"}},
    {"analyze_lin2_inflow", {"analyze", fixture("lin2_inflow"), "--json"}},
    {"tfpv_mm_rev", {"tfpv", fixture("mm_rev"), "--json"}},
    {"tfpv_compinh", {"tfpv", fixture("compinh"), "--json"}},
    {"tfpv_futile_precheck", {"tfpv", fixture("futile"), "--precheck", "--json"}},
    {"tfpv_lin3_first_order", {"tfpv", fixture("lin3"), "--first-order", "--json"}},
    {"tfpv_mm_rev_verify",
     {"tfpv", fixture("mm_rev"), "--verify-at", "1,1,0,0;1,1,1,0;3", "--json"}},
    {"ltc_mm_rev", {"ltc", fixture("mm_rev"), "--json"}},
    {"ltc_futile", {"ltc", fixture("futile"), "--integrals", "--json"}},
    {"scale_mm_rev", {"scale", fixture("mm_rev"), "--species", "X2,X3", "--json"}},
    {"scale_mm_rev_partial",
     {"scale", fixture("mm_rev"), "--species", "X3", "--off", "k1,km2", "--json"}},
    {"scc_compinh",
     {"scc", fixture("compinh"), "--retain", "X1,X3,X6", "--theta", "i0=1,e0=0,s0=1", "--point",
      "X1=1/2,X3=0,X6=0", "--kappa", "1,1,1,1,1,1", "--json"}},
};

}  // namespace

TEST_CASE("analyze reports the structural summary") {
    const auto res = run({"analyze", fixture("mm_rev"), "--json"});
    CHECK(res.exit_code == 0);
    const auto report = nlohmann::ordered_json::parse(res.out);
    CHECK(report["summary"]["d"] == 3);
    CHECK(report["summary"]["components"] == 1);
    CHECK(report["summary"]["codimension"] == 2);
    CHECK(report["summary"]["deficiency"] == 0);
    CHECK(report["summary"]["weakly_reversible"] == true);
    // Stable top-level key order.
    auto it = report.begin();
    CHECK(it.key() == "network");
    ++it;
    CHECK(it.key() == "command");
    ++it;
    CHECK(it.key() == "summary");
    ++it;
    CHECK(it.key() == "certificates");
    ++it;
    CHECK(it.key() == "warnings");
}

TEST_CASE("tfpv reports certificates and exit codes") {
    const auto res = run({"tfpv", fixture("compinh"), "--json"});
    CHECK(res.exit_code == 0);
    const auto report = nlohmann::json::parse(res.out);
    CHECK(report["summary"]["count"] == 6);
    CHECK(report["certificates"].size() == 6);
    CHECK(report["certificates"][0]["dimension"] == 4);

    // A cycle has nothing to switch off profitably: analysis-negative.
    std::ofstream tmp("/tmp/crn_cycle.crn");
    tmp << "X1 -> X2 ; k1\nX2 -> X1 ; k2\n";
    tmp.close();
    const auto negative = run({"tfpv", "/tmp/crn_cycle.crn", "--json"});
    CHECK(negative.exit_code == 1);
}

TEST_CASE("max-off restricts the enumeration budget") {
    const auto res = run({"tfpv", fixture("mm_rev"), "--max-off", "1", "--json"});
    CHECK(res.exit_code == 1);  // pairs are needed; nothing found
    const auto report = nlohmann::json::parse(res.out);
    CHECK(report["summary"]["count"] == 0);
}

TEST_CASE("parse failures exit with code 2") {
    std::ofstream tmp("/tmp/crn_empty.crn");
    tmp << "";
    tmp.close();
    const auto res = run({"analyze", "/tmp/crn_empty.crn"});
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("SyntaxError") != std::string::npos);

    const auto missing = run({"analyze", "/tmp/no_such_file.crn"});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"scale", fixture("mm_rev"), "--species", "X9"}).exit_code == 2);
    CHECK(run({"frobnicate", fixture("mm_rev")}).exit_code == 2);
    CHECK(run({"simulate", fixture("mm_rev"), "--x0", "1,1"}).exit_code == 2);
    // Unbound rates are an input error for numeric commands.
    CHECK(run({"simulate", fixture("mm_rev"), "--x0", "1,1,1,1"}).exit_code == 2);
}

TEST_CASE("simulate emits a CSV trajectory") {
    const auto res = run({"simulate", fixture("mm_rev"), "--kappa", "1,1,1,1", "--x0", "2,1,0,0",
                          "--t", "0.1", "--step", "0.01"});
    CHECK(res.exit_code == 0);
    CHECK(res.out.rfind("t,X1,X2,X3,X4\n", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 12);
}

TEST_CASE("simulate sweep reports the reduction table") {
    const auto res = run({"simulate", fixture("mm_rev"), "--kappa", "1,1,0,0", "--x0", "1,1,0,1",
                          "--t", "20", "--step", "0.001", "--eps-sweep", "0.1,0.01", "--rho",
                          "0,0,1,1", "--json"});
    CHECK(res.exit_code == 0);
    const auto report = nlohmann::json::parse(res.out);
    CHECK(report["summary"]["rows"].size() == 2);
    CHECK(report["summary"]["metric"] == "distance");
}

TEST_CASE("reports are byte-identical across repeated runs") {
    for (const auto& [name, args] : kGolden) {
        CAPTURE(name);
        const auto first = run(args);
        const auto second = run(args);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("reports match the committed golden files") {
    const bool update = std::getenv("CRN_UPDATE_GOLDEN") != nullptr;
    for (const auto& [name, args] : kGolden) {
        CAPTURE(name);
        const auto res = run(args);
        CHECK(res.exit_code == 0);
        const std::string path = std::string(CRN_GOLDEN_DIR) + "/" + name + ".json";
        if (update) {
            std::ofstream f(path, std::ios::binary);
            f << res.out;
            continue;
        }
        std::ifstream f(path, std::ios::binary);
        REQUIRE_MESSAGE(f.good(), "missing golden file ", path);
        std::ostringstream want;
        want << f.rdbuf();
        CHECK(res.out == want.str());
    }
}

TEST_CASE("the CRN_SEED override keeps probes deterministic") {
    const std::vector<std::string> args{
        "simulate", fixture("mm_rev"), "--kappa", "1,1,0,0", "--x0",  "1,1,1,0",
        "--t",      "4",               "--step",  "0.001",   "--probe", "0.1;5",
        "--json"};
    setenv("CRN_SEED", "12345", 1);
    const auto a = run(args);
    const auto b = run(args);
    unsetenv("CRN_SEED");
    CHECK(a.out == b.out);
    const auto report = nlohmann::json::parse(a.out);
    CHECK(report["command"]["options"]["seed"] == 12345);
}
