#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/system.hpp"

#include <algorithm>

using namespace mtskit;
using namespace mtskit::test;

TEST_CASE("alphabet invariants") {
    EventAlphabet alphabet({"a", "b"});
    CHECK(alphabet.size() == 2);
    CHECK(alphabet.index_of("b") == 1);
    CHECK(alphabet.index_of("z") == -1);
    CHECK_THROWS_AS(EventAlphabet({}), ValidationError);
    CHECK_THROWS_AS(EventAlphabet({"a", "a"}), ValidationError);
    CHECK_THROWS_AS(EventAlphabet({"bot"}), ValidationError);
    CHECK(alphabet.widened({"c", "a"}).names() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("validate on raw data") {
    SystemData data;
    data.kind = SystemKind::modal;
    data.alphabet = {"a"};
    data.init = "s";
    CHECK(validate(data, false).empty());

    data.transitions.push_back({"must", "s", "zap", "t"});
    auto problems = validate(data, false);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("unknown event 'zap'") != std::string::npos);
}

TEST_CASE("validate reports the modal condition on mixed data") {
    SystemData data;
    data.kind = SystemKind::mixed;
    data.alphabet = {"a"};
    data.init = "s";
    data.transitions.push_back({"a", "s", "a", "t"});
    CHECK(validate(data, false).empty());
    auto problems = validate(data, true);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("modal condition violated") != std::string::npos);

    MixedSystem built = MixedSystem::from_data(data);
    CHECK_FALSE(built.is_modal());
    auto built_problems = validate(built, true);
    REQUIRE(built_problems.size() == 1);
    CHECK(built_problems[0].find("modal condition violated") != std::string::npos);
    CHECK(validate(built, false).empty());
}

TEST_CASE("well-formed fixtures validate cleanly") {
    for (const char *name : {"fig1.mts", "fig3.mts", "fig4_left.mts", "fig4_right.mts",
                             "fig8.mts"}) {
        PointedSystem p = load_fixture(name);
        CHECK(validate(p.system, p.system.declared_kind() == SystemKind::modal).empty());
    }
}

TEST_CASE("reachability") {
    PointedSystem fig1 = load_fixture("fig1.mts");
    auto reach = reachable(fig1);
    CHECK(reach.size() == 3); // Waits, Drinks, Talks

    SUBCASE("single state") {
        SystemData data;
        data.alphabet = {"a"};
        data.init = "only";
        PointedSystem p = pointed(MixedSystem::from_data(data), "only");
        CHECK(reachable(p) == std::vector<int>{0});
    }
    SUBCASE("must then may chain") {
        SystemData data;
        data.alphabet = {"a"};
        data.init = "s0";
        data.transitions.push_back({"must", "s0", "a", "s1"});
        data.transitions.push_back({"may", "s1", "a", "s2"});
        PointedSystem p = pointed(MixedSystem::from_data(data), "s0");
        CHECK(reachable(p).size() == 3);
    }
    SUBCASE("monotone under adding transitions and under projection") {
        PointedSystem projected = must_projection(fig1);
        auto projected_reach = reachable(projected);
        CHECK(std::includes(reach.begin(), reach.end(), projected_reach.begin(),
                            projected_reach.end()));
    }
}

TEST_CASE("must projection of fig1 keeps only the newPint transitions") {
    PointedSystem fig1 = load_fixture("fig1.mts");
    PointedSystem projected = must_projection(fig1);
    CHECK(projected.system.r_a().size() == 2);
    CHECK(projected.system.r_c().size() == 2);
    CHECK(projected.system.r_a() == fig1.system.r_a());
    CHECK(is_implementation(projected));
    CHECK(refines(fig1, projected));

    SUBCASE("projection of an implementation is itself") {
        PointedSystem again = must_projection(projected);
        CHECK(again.system.r_c() == projected.system.r_c());
        CHECK(refinement_equivalent(projected, again));
    }
}

TEST_CASE("must projection of a may-only term is refinement-equivalent to deadlock") {
    TermArena terms;
    PointedSystem may_a = term_system("a?.0", "a", terms);
    PointedSystem nil = term_system("0", "a", terms);
    CHECK(refinement_equivalent(must_projection(may_a), nil));
}

TEST_CASE("disjoint union") {
    PointedSystem fig1 = load_fixture("fig1.mts");
    PointedSystem fig3 = load_fixture("fig3.mts");
    DisjointUnion merged = disjoint_union(fig1.system, fig3.system);
    CHECK(merged.system.state_count() == 3 + 5);
    CHECK(merged.system.r_a().size() == fig1.system.r_a().size() + fig3.system.r_a().size());
    CHECK(merged.system.r_c().size() == fig1.system.r_c().size() + fig3.system.r_c().size());
    // no cross transitions: every edge stays within its component
    const int left_count = fig1.system.state_count();
    for (const Transition &t : merged.system.r_c())
        CHECK(((t.src < left_count) == (t.dst < left_count)));

    SUBCASE("union with an empty-transition system") {
        SystemData data;
        data.alphabet = fig1.system.alphabet().names();
        data.init = "idle";
        MixedSystem empty = MixedSystem::from_data(data);
        DisjointUnion with_empty = disjoint_union(fig1.system, empty);
        CHECK(with_empty.system.r_c().size() == fig1.system.r_c().size());
    }
    SUBCASE("union of a system with itself gives two isomorphic copies") {
        DisjointUnion twice = disjoint_union(fig1.system, fig1.system);
        CHECK(twice.system.state_count() == 2 * fig1.system.state_count());
        PointedSystem left{twice.system, twice.left_states[fig1.init]};
        PointedSystem right{twice.system, twice.right_states[fig1.init]};
        CHECK(refinement_equivalent(left, right));
    }
    SUBCASE("alphabet mismatch is an error naming the events") {
        SystemData data;
        data.alphabet = {"zig"};
        data.init = "s";
        MixedSystem other = MixedSystem::from_data(data);
        CHECK_THROWS_WITH_AS(disjoint_union(fig1.system, other),
                             doctest::Contains("alphabet mismatch"), ValidationError);
    }
}

TEST_CASE("widening keeps transitions and indices consistent") {
    PointedSystem fig1 = load_fixture("fig1.mts");
    MixedSystem wider = fig1.system.with_alphabet(fig1.system.alphabet().widened({"sings"}));
    CHECK(wider.alphabet().size() == 5);
    CHECK(wider.r_c().size() == fig1.system.r_c().size());
    CHECK(validate(wider, true).empty());
}
