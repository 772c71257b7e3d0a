#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using njson = nlohmann::json;

namespace {

struct RunResult {
    int rc = -1;
    std::string out; // stdout + stderr interleaved
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(WEDGECALC_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const std::string kScrambled =
    "W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(3,1).nu'eta + i(5,1).eta2 "
    "+ i(3,2).nu'eta + i(5,2).eta2";

} // namespace

TEST_CASE("classify: human-readable output") {
    RunResult r = run("classify --k 2 --phi \"" + kScrambled + "\"");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "class:            X10+X01  (k = 2)"));
    CHECK(contains(r.out, "normal form:"));
    CHECK(contains(r.out, "witness:"));
}

TEST_CASE("classify: JSON document, witness replayable through act") {
    RunResult r = run("--json classify --k 2 --phi \"" + kScrambled + "\"");
    REQUIRE(r.rc == 0);
    njson doc = njson::parse(r.out);
    CHECK(doc["schema"] == "wedgecalc/1");
    CHECK(doc["command"] == "classify");
    CHECK(doc["input"]["shape"]["mode"] == "classifier");
    CHECK(doc["result"]["class"] == "X10+X01");
    CHECK(doc["result"]["k"] == 2);
    CHECK(doc["result"]["obstruction"]["has_nu"] == true);
    CHECK(doc["result"]["obstruction"]["has_eta"] == true);
    CHECK(doc["result"]["obstruction"]["alignment"] == false);
    const std::string witness = doc["witness"].get<std::string>();
    const std::string normal_form = doc["result"]["normal_form"].get<std::string>();
    REQUIRE(!witness.empty());

    RunResult act = run("--json act --k 2 --map \"" + witness + "\" --phi \"" + kScrambled + "\"");
    REQUIRE(act.rc == 0);
    njson adoc = njson::parse(act.out);
    CHECK(adoc["result"]["image"] == normal_form);
    CHECK(adoc["result"]["map_is_equivalence"] == true);

    // and the inverse witness carries the normal form back
    const std::string winv = doc["witness_inverse"].get<std::string>();
    RunResult back = run("--json act --k 2 --map \"" + winv + "\" --phi \"" + normal_form + "\"");
    REQUIRE(back.rc == 0);
    njson bdoc = njson::parse(back.out);
    CHECK(bdoc["result"]["image"] == njson::parse(r.out)["input"]["phi"]);
}

TEST_CASE("equiv: yes up to sign") {
    RunResult r = run("equiv --k 1 --phi \"2*W(i(3,1),i(5,1)) + i(3,1).nu'eta\" "
                      "--psi \"-2*W(i(3,1),i(5,1)) + i(3,1).nu'eta\"");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "verdict:          yes  (up to sign)"));
}

TEST_CASE("equiv: separated by the class obstruction") {
    RunResult r = run("--json equiv --k 1 --phi \"W(i(3,1),i(5,1)) + i(3,1).nu'eta\" "
                      "--psi \"W(i(3,1),i(5,1)) + i(5,1).eta2\"");
    REQUIRE(r.rc == 0);
    njson doc = njson::parse(r.out);
    CHECK(doc["result"]["verdict"] == "no");
    CHECK(contains(doc["result"]["obstruction"].get<std::string>(),
                   "nu'-torsion presence differs"));
}

TEST_CASE("equiv: separated by invariant factors") {
    RunResult r = run("equiv --k 1 --phi \"2*W(i(3,1),i(5,1))\" --psi \"3*W(i(3,1),i(5,1))\"");
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "invariant factors differ: [2] vs [3]"));
}

TEST_CASE("equiv: exhausted search exits 5 with verdict unknown") {
    RunResult r = run("--json equiv --k 1 --budget 500 "
                      "--phi \"2*W(i(3,1),i(5,1)) + i(3,1).nu'eta\" "
                      "--psi \"2*W(i(3,1),i(5,1)) + i(5,1).eta2\"");
    REQUIRE(r.rc == 5);
    njson doc = njson::parse(r.out);
    CHECK(doc["result"]["verdict"] == "unknown");
    CHECK(doc["result"]["nodes_explored"].get<long>() >= 1);
}

TEST_CASE("split: JSON parts and replayable shear witness") {
    const std::string phi = "i(3,1).nu'eta + i(4,1).b + W(i(3,1),i(4,1)).eta";
    RunResult r = run("--json split --r 1 --l 1 --phi \"" + phi + "\"");
    REQUIRE(r.rc == 0);
    njson doc = njson::parse(r.out);
    CHECK(doc["command"] == "split");
    const std::string witness = doc["witness"].get<std::string>();
    const std::string transformed = doc["result"]["phi_transformed"].get<std::string>();
    CHECK(contains(witness, "i(4,1) ->"));

    RunResult act = run("--json act --splitter --r 1 --l 1 --map \"" + witness +
                        "\" --phi \"" + phi + "\"");
    REQUIRE(act.rc == 0);
    njson adoc = njson::parse(act.out);
    CHECK(adoc["result"]["image"] == transformed);
}

TEST_CASE("normalize: witness and inverse round-trip through act") {
    const std::string phi =
        "W(i(3,1),i(5,2)) + W(i(3,2),i(5,1)) + 2*W3(1,1,2) + i(5,1).eta2";
    RunResult r = run("--json normalize --k 2 --phi \"" + phi + "\"");
    REQUIRE(r.rc == 0);
    njson doc = njson::parse(r.out);
    CHECK(doc["result"]["b_residue"] == false);
    CHECK(doc["result"]["pairs"].size() == 2);
    const std::string nf = doc["result"]["normal_form"].get<std::string>();
    const std::string w = doc["witness"].get<std::string>();
    const std::string wi = doc["witness_inverse"].get<std::string>();

    RunResult fwd = run("--json act --k 2 --map \"" + w + "\" --phi \"" + phi + "\"");
    REQUIRE(fwd.rc == 0);
    CHECK(njson::parse(fwd.out)["result"]["image"] == nf);
    RunResult bwd = run("--json act --k 2 --map \"" + wi + "\" --phi \"" + nf + "\"");
    REQUIRE(bwd.rc == 0);
    // compare against the canonical echo: input order is not preserved
    CHECK(njson::parse(bwd.out)["result"]["image"] == doc["input"]["phi"]);
}

TEST_CASE("basis: counts and orders") {
    RunResult r = run("--json basis --k 2 --degree 7 --full");
    REQUIRE(r.rc == 0);
    njson doc = njson::parse(r.out);
    CHECK(doc["result"]["count"] == 11);
    // first catalog entry is the nu'-torsion column with order 2
    CHECK(doc["result"]["terms"][0]["term"] == "i(3,1).nu'eta");
    CHECK(doc["result"]["terms"][0]["order"] == 2);

    RunResult h = run("basis --k 1 --degree 7");
    CHECK(h.rc == 0);
    CHECK(contains(h.out, "pi_7 basis ("));
    CHECK(contains(h.out, "W(i(3,1),i(5,1))   (order 0)"));
}

TEST_CASE("exit code 2: malformed input with position") {
    RunResult r = run("classify --k 2 --phi \"W(i(3,1),i(5,9))\"");
    CHECK(r.rc == 2);
    CHECK(contains(r.out, "parse error: the wedge has no sphere S5_9 at 1:10"));
}

TEST_CASE("exit code 3: violated hypotheses and missing data") {
    RunResult r = run("normalize --k 1 --phi \"0\"");
    CHECK(r.rc == 3);
    CHECK(contains(r.out, "precondition failed:"));
    CHECK(contains(r.out, "det = 0"));

    // an undeclared Hopf invariant blocks the K2 intersection reading
    RunResult m = run("split --r 1 --l 2 --atom \"c,4,7,-1,false\" "
                      "--phi \"i(4,1).c + W(i(4,1),i(4,2))\"");
    CHECK(m.rc == 3);
    CHECK(contains(m.out, "missing data:"));
}

TEST_CASE("exit code 4: unsupported degree") {
    RunResult r = run("basis --k 1 --degree 9");
    CHECK(r.rc == 4);
    CHECK(contains(r.out, "unsupported: no basis enumeration for degree 9"));
}

TEST_CASE("declared atoms flow through parsing") {
    RunResult r = run("--json act --k 1 --atom \"q,5,7,2,false\" "
                      "--map \"i(3,1) -> i(3,1); i(5,1) -> i(5,1)\" --phi \"i(5,1).q\"");
    REQUIRE(r.rc == 0);
    njson doc = njson::parse(r.out);
    CHECK(doc["result"]["image"] == "i(5,1).q");
}

TEST_CASE("oracle subcommands report and exit clean") {
    RunResult m = run("oracle mlaw --k 2 --trials 25 --seed 3");
    CHECK(m.rc == 0);
    CHECK(contains(m.out, "M-law: 25 trials, 0 failures (seed 3)"));

    RunResult a = run("oracle alaw --r 2 --l 2 --trials 25 --seed 3");
    CHECK(a.rc == 0);
    CHECK(contains(a.out, "A-law: 25 trials, 0 failures (seed 3)"));

    RunResult l = run("--json oracle lie --generators 2");
    REQUIRE(l.rc == 0);
    njson doc = njson::parse(l.out);
    CHECK(doc["report"]["hall_basis_ok"] == true);
    CHECK(doc["report"]["weight2_checked"] == 4);
    CHECK(doc["report"]["weight3_checked"] == 16);
    CHECK(doc["report"]["mismatches"] == 0);

    RunResult o = run("--json oracle orbit --k 2 --depth 1 "
                      "--phi \"W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(3,1).nu'eta\"");
    REQUIRE(o.rc == 0);
    njson odoc = njson::parse(o.out);
    CHECK(odoc["report"]["distinct"].get<long>() > 1);
    CHECK(odoc["report"]["truncated"] == false);
}

TEST_CASE("--out writes the document to a file") {
    const std::string path = "/tmp/wedgecalc_cli_out.json";
    std::remove(path.c_str());
    RunResult r = run("--json --out " + path + " basis --k 1 --degree 3");
    CHECK(r.rc == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    njson doc = njson::parse(ss.str());
    CHECK(doc["schema"] == "wedgecalc/1");
    CHECK(doc["result"]["count"] == 1);
    std::remove(path.c_str());
}

TEST_CASE("bad command lines fail without touching the calculus") {
    CHECK(run("classify --k 2").rc != 0); // missing --phi

    RunResult a = run("act --k 1 --map \"x\" --phi \"0\" --atom \"broken\"");
    CHECK(a.rc == 2);
    CHECK(contains(a.out, "malformed --atom spec"));

    CHECK(run("nonsense").rc != 0);
}
