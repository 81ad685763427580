#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "embcert/document.hpp"

using embcert::Json;

namespace {

struct RunOutput {
    int exit_code;
    std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
    std::string out_file = std::string(std::tmpnam(nullptr)) + ".out";
    std::string cmd = std::string(EMBCERT_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunOutput r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::remove(out_file.c_str());
    r.stdout_text = text;
    return r;
}

std::string temp_path(const std::string& suffix) {
    return std::string(std::tmpnam(nullptr)) + suffix;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("verify: fixtures and failures") {
    CHECK(run_cli("verify twisted-cubic").exit_code == 0);
    CHECK(run_cli("verify three-lines").exit_code == 0);

    std::string cusp = temp_path(".json");
    write_file(cusp, R"({"ambient_dim":3,"components":[["t^2","t^3","0"]]})");
    RunOutput r = run_cli("verify " + cusp);
    CHECK(r.exit_code == 1);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("certificate").at("status") == "fail");
    std::remove(cusp.c_str());

    std::string broken = temp_path(".json");
    write_file(broken, "not json");
    CHECK(run_cli("verify " + broken).exit_code == 3);
    std::remove(broken.c_str());

    CHECK(run_cli("verify /nonexistent/file.json").exit_code == 3);
}

TEST_CASE("analyze three-lines directions") {
    RunOutput good = run_cli("analyze three-lines \"(0:1:0)\"");
    CHECK(good.exit_code == 0);
    Json doc = Json::parse(good.stdout_text);
    CHECK(doc.at("certificate").at("status") == "pass");

    RunOutput bad = run_cli("analyze three-lines \"(1:0:0)\"");
    CHECK(bad.exit_code == 1);
    Json bdoc = Json::parse(bad.stdout_text);
    CHECK(bdoc.at("certificate").at("status") == "fail");
    CHECK(bdoc.at("certificate").at("witness").at("failed_condition") == "2-transversal");
}

TEST_CASE("analyze twisted cubic node direction") {
    RunOutput r = run_cli("analyze twisted-cubic \"(1:0:1)\"");
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("certificate").at("status") == "pass");
    // one node reported, with its image point under the canonical quotient:
    // rows (1,0,-1),(0,1,0) send t = +-1 to (0, 1)
    CHECK(doc.at("double_points").at("count") == 1);
    Json image = doc.at("double_points").at("pairs")[0].at("isolates")[0].at("image");
    CHECK(image == Json::array({"0", "1"}));
}

TEST_CASE("double-points reports a properness violation instead of ignoring it") {
    RunOutput r = run_cli("double-points standard-line --kernel \"(1:0:0)\"");
    CHECK(r.exit_code == 1);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("error").contains("properness_violation"));
}

TEST_CASE("double-points reports the node") {
    RunOutput r = run_cli("double-points twisted-cubic --kernel \"(1:0:1)\"");
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("system").at("finite").get<bool>());
    REQUIRE(doc.at("system").at("pairs").size() == 1);
    CHECK(doc.at("system").at("pairs")[0].at("isolates").size() == 1);
}

TEST_CASE("pipeline and check-ledger round trip") {
    std::string ledger = temp_path(".json");
    RunOutput r = run_cli("pipeline twisted-cubic standard-line --seed 7 --out " + ledger);
    CHECK(r.exit_code == 0);
    RunOutput chk = run_cli("check-ledger " + ledger);
    CHECK(chk.exit_code == 0);

    // tamper and re-check
    Json doc = Json::parse(embcert::read_file(ledger));
    std::string poly = doc["ledger"]["steps"][0]["output"]["components"][0][0].get<std::string>();
    doc["ledger"]["steps"][0]["output"]["components"][0][0] = poly + " + 1";
    write_file(ledger, doc.dump(2));
    CHECK(run_cli("check-ledger " + ledger).exit_code == 1);
    std::remove(ledger.c_str());
}

TEST_CASE("pipeline rejects invalid input with exit 3") {
    std::string cusp = temp_path(".json");
    write_file(cusp, R"({"ambient_dim":3,"components":[["t^2","t^3","0"]]})");
    CHECK(run_cli("pipeline " + cusp + " standard-line").exit_code == 3);
    std::remove(cusp.c_str());
}

TEST_CASE("jet command") {
    std::string spec = temp_path(".json");
    write_file(spec, R"({
        "p1": ["0", "0"],
        "p2": ["1", "1"],
        "A1": [["1", "0"], ["0", "1"]],
        "A2": [["1", "1"], ["0", "1"]]
    })");
    RunOutput r = run_cli("jet " + spec);
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("verification").at("exact").get<bool>());
    CHECK(doc.at("automorphism").at("factors").size() == 1);
    std::remove(spec.c_str());

    std::string bad = temp_path(".json");
    write_file(bad, R"({
        "p1": ["0", "0"],
        "p2": ["1", "1"],
        "A1": [["2", "0"], ["0", "1"]],
        "A2": [["1", "0"], ["0", "1"]]
    })");
    CHECK(run_cli("jet " + bad).exit_code == 3);
    std::remove(bad.c_str());
}

TEST_CASE("lemma-test properness always passes") {
    RunOutput r = run_cli("lemma-test properness twisted-cubic --samples 20 --seed 5");
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("report").at("passes") == 20);
}

TEST_CASE("lemma-test: constrained 2-transversality on the three lines") {
    // within {(a:b:0)} almost every direction fails, each with a classified
    // witness; exit 0 means no failure went unexplained
    RunOutput r =
        run_cli("lemma-test 2-transversality three-lines --samples 20 --seed 3 --fix-last 1");
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(r.stdout_text);
    CHECK(doc.at("report").at("failures").get<int>() >= 15);
    CHECK(doc.at("report").at("unexplained_failures") == 0);
}

TEST_CASE("pipeline on identical inputs exits 0") {
    CHECK(run_cli("pipeline standard-line standard-line --seed 3").exit_code == 0);
}

TEST_CASE("unknown lemma id exits 3") {
    CHECK(run_cli("lemma-test frobnication twisted-cubic --samples 5").exit_code == 3);
}

TEST_CASE("reports embed the reproducibility header and reproduce byte-for-byte") {
    RunOutput a = run_cli("analyze twisted-cubic \"(1:0:1)\" --seed 9");
    RunOutput b = run_cli("analyze twisted-cubic \"(1:0:1)\" --seed 9");
    CHECK(a.stdout_text == b.stdout_text);
    Json doc = Json::parse(a.stdout_text);
    CHECK(doc.at("config").at("command") == "analyze");
    CHECK(doc.at("config").at("seed") == 9);
    CHECK(doc.at("config").contains("budgets"));
    CHECK(doc.at("config").contains("precision"));
}
