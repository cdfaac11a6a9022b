#include <doctest.h>

#include "test_util.hpp"

#include "mtskit/cli.hpp"

#include <sstream>

using namespace mtskit;
using namespace mtskit::test;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("refines and equiv verbs") {
    auto fig1 = fixture_path("fig1.mts");
    auto fig3 = fixture_path("fig3.mts");
    CliRun yes = run({"refines", fig1, fig3});
    CHECK(yes.exit_code == 0);
    CHECK(yes.out == "yes\n");
    CliRun no = run({"refines", fig3, fig1});
    CHECK(no.exit_code == 0);
    CHECK(no.out == "no\n");
    CliRun equiv = run({"equiv", fig1, fig1});
    CHECK(equiv.out == "yes\n");
}

TEST_CASE("three-valued check with a state override") {
    auto fig1 = fixture_path("fig1.mts");
    CliRun unknown = run({"check", "--mode", "3", "--formula", "<drinks>tt", fig1, "--state",
                          "Talks"});
    CHECK(unknown.exit_code == 0);
    CHECK(unknown.out == "unknown\n");
    CliRun asserted = run({"check", "--mode", "a", "--formula", "<newPint>tt", fig1});
    CHECK(asserted.out == "true\n");
    CliRun consistent = run({"check", "--mode", "c", "--formula", "<drinks>tt", fig1, "--state",
                             "Talks"});
    CHECK(consistent.out == "true\n");
}

TEST_CASE("distance, depth and c1") {
    auto fig1 = fixture_path("fig1.mts");
    CHECK(run({"distance", fig1, fig1}).out == "0\n");
    CHECK(run({"depth", fig1, fig1}).out == "inf\n");
    CHECK(run({"c1", fig1, fig1}).out == "0\n");
}

TEST_CASE("normalize and mc-check") {
    auto left = fixture_path("fig4_left.mts");
    CHECK(run({"mc-check", left}).out == "yes\n");
    CliRun normalized = run({"normalize", left});
    CHECK(normalized.exit_code == 0);
    CHECK(normalized.out.find("mts modal") == 0);
    CHECK(normalized.out.find("must s alpha s2") != std::string::npos);
}

TEST_CASE("witness writes a verifiable system") {
    auto fig1 = fixture_path("fig1.mts");
    auto fig3 = fixture_path("fig3.mts");
    CliRun witness = run({"witness", fig1, fig3});
    CHECK(witness.exit_code == 0);
    PointedSystem parsed = parse_system(witness.out);
    CHECK(parsed.system.is_modal());
}

TEST_CASE("distinguish honours the refines contract") {
    auto fig1 = fixture_path("fig1.mts");
    auto fig3 = fixture_path("fig3.mts");
    CliRun rejected = run({"distinguish", fig1, fig3});
    CHECK(rejected.exit_code == 1); // fig3 refines fig1: no distinguishing formula
    CliRun formula = run({"distinguish", fig3, fig1});
    REQUIRE(formula.exit_code == 0);
    CliRun on_abstract =
        run({"check", "--mode", "a", "--formula", formula.out.substr(0, formula.out.size() - 1),
             fig3});
    CHECK(on_abstract.out == "true\n");
    CliRun on_concrete =
        run({"check", "--mode", "a", "--formula", formula.out.substr(0, formula.out.size() - 1),
             fig1});
    CHECK(on_concrete.out == "false\n");
}

TEST_CASE("unfold, charformula and probe") {
    auto fig3 = fixture_path("fig3.mts");
    CliRun term = run({"unfold", fig3, "-m", "1", "--as-term", "--state", "TomDrinks"});
    CHECK(term.out == "drinks?.bot + talks!.0 + orders?.bot\n");
    CliRun system = run({"unfold", fig3, "-m", "0", "--state", "TomTalks"});
    CHECK(system.out.find("mts modal") == 0);

    CliRun phi = run({"charformula", "--term", "a!.0", "--alphabet", "a b"});
    CHECK(phi.out == "<a>(!<a>tt & !<b>tt) & [a](!<a>tt & !<b>tt) & !<b>tt\n");

    CliRun nu = run({"charformula", fig3, "--nu", "--state", "TomTalks"});
    CHECK(nu.out.find("nu X1 . ") == 0);

    CliRun probe = run({"probe", "--trace", "newPint talks", "--event", "drinks", "--term", "bot",
                        "--alphabet", "drinks talks orders newPint"});
    CHECK(probe.out == "[newPint][talks](<drinks>tt | !<drinks>tt)\n");
}

TEST_CASE("implementation and is-ltsequiv") {
    auto fig3 = fixture_path("fig3.mts");
    CliRun projected = run({"implementation", fig3});
    CHECK(projected.exit_code == 0);
    CHECK(projected.out.find("may ") == std::string::npos);
    CHECK(run({"is-ltsequiv", fig3}).out == "no\n");
}

TEST_CASE("json output is schema-tagged and byte-deterministic") {
    auto fig1 = fixture_path("fig1.mts");
    auto fig3 = fixture_path("fig3.mts");
    CliRun first = run({"--json", "refines", fig1, fig3});
    CliRun second = run({"--json", "refines", fig1, fig3});
    CHECK(first.out == second.out);
    CHECK(first.out.find("\"schema\":1") != std::string::npos);
    CHECK(first.out.find("\"result\":true") != std::string::npos);

    CliRun dist = run({"--json", "distance", fig1, fig1});
    CHECK(dist.out.find("\"kind\":\"zero\"") != std::string::npos);

    CliRun seeded = run({"--json", "--seed", "42", "equiv", fig1, fig1});
    CHECK(seeded.out.find("\"seed\":42") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage errors") {
    CHECK(run({"refines"}).exit_code == 1);
    CHECK(run({"no-such-verb"}).exit_code == 1);
    CHECK(run({"refines", "/nonexistent.mts", "/nonexistent.mts"}).exit_code == 1);
    auto fig1 = fixture_path("fig1.mts");
    CliRun bad_formula = run({"check", "--formula", "<oops", fig1});
    CHECK(bad_formula.exit_code == 1);
    CHECK(bad_formula.err.find("error:") == 0);
}

TEST_CASE("alphabet widening flag") {
    auto fig1 = fixture_path("fig1.mts");
    CliRun widened = run({"--widen-alphabet", "sings", "check", "--mode", "a", "--formula",
                          "!<sings>tt", fig1});
    CHECK(widened.exit_code == 0);
    CHECK(widened.out == "true\n");
}
