#include <doctest.h>

#include "test_util.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/formula.hpp"
#include "mtskit/metrics.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/term.hpp"
#include "mtskit/testkit.hpp"

using namespace mtskit;
using namespace mtskit::test;

TEST_CASE("term construction and the sum side condition") {
    TermArena arena;
    TermRef p = arena.must_prefix("a", arena.nil());
    CHECK(term_modal_depth(arena.bot()) == 0);
    CHECK(term_modal_depth(arena.must_prefix("a", arena.may_prefix("b", arena.nil()))) == 2);
    CHECK(term_modal_depth(arena.sum(p, arena.may_prefix("b", arena.bot()))) == 1);
    CHECK_THROWS_AS(arena.sum(p, arena.nil()), ValidationError);
    CHECK_THROWS_AS(arena.sum(arena.bot(), p), ValidationError);
}

TEST_CASE("operational semantics") {
    TermArena arena;
    SUBCASE("no transitions out of 0") {
        PointedSystem nil = term_system("0", "a", arena);
        CHECK(nil.system.state_count() == 1);
        CHECK(nil.system.r_c().empty());
    }
    SUBCASE("bot is one stub state with may loops on the whole alphabet") {
        PointedSystem bottom = term_system("bot", "a b", arena);
        CHECK(bottom.system.state_count() == 1);
        CHECK(bottom.system.r_a().empty());
        CHECK(bottom.system.r_c().size() == 2);
        for (const Transition &t : bottom.system.r_c())
            CHECK(t.src == t.dst);
    }
    SUBCASE("the depth-1 pub approximation matches its fixture") {
        PointedSystem from_term = term_system("drinks?.bot + orders?.bot + talks!.0",
                                              "drinks talks orders newPint", arena);
        CHECK(from_term.system.is_modal());
        PointedSystem fig8 = load_fixture("fig8.mts");
        CHECK(refinement_equivalent(from_term, fig8));
    }
    SUBCASE("events outside the alphabet are rejected") {
        TermRef t = parse_term("zap!.0", arena);
        CHECK_THROWS_WITH_AS(operational_semantics(t, EventAlphabet({"a"})),
                             doctest::Contains("unknown event"), ValidationError);
    }
    SUBCASE("implementation terms produce implementations") {
        PointedSystem impl = term_system("a!.b!.0 + b!.0", "a b", arena);
        CHECK(is_implementation(impl));
        PointedSystem partial = term_system("a!.b?.0", "a b", arena);
        CHECK_FALSE(is_implementation(partial));
    }
}

TEST_CASE("characteristic formulas follow the structural clauses") {
    TermArena terms;
    FormulaArena formulas;
    EventAlphabet ab({"a", "b"});

    CHECK(print_formula(char_formula(terms.bot(), ab, formulas)) == "tt");
    CHECK(print_formula(char_formula(terms.nil(), ab, formulas)) == "!<a>tt & !<b>tt");
    CHECK(print_formula(char_formula(parse_term("a!.0", terms), ab, formulas)) ==
          "<a>(!<a>tt & !<b>tt) & [a](!<a>tt & !<b>tt) & !<b>tt");
    CHECK(print_formula(char_formula(parse_term("a?.0", terms), ab, formulas)) ==
          "[a](!<a>tt & !<b>tt) & !<b>tt");

    SUBCASE("sum clause boxes every event, empty disjunction is ff") {
        FormulaRef f = char_formula(parse_term("a!.0 + a?.bot", terms), ab, formulas);
        CHECK(print_formula(f) == "<a>(!<a>tt & !<b>tt) & [a](!<a>tt & !<b>tt | tt) & [b]ff");
    }
    SUBCASE("depth relation against the term") {
        for (const char *text : {"a!.b!.0", "a?.0", "bot", "0", "a!.0 + b?.a!.0"}) {
            TermRef t = parse_term(text, terms);
            CHECK(modal_depth(char_formula(t, ab, formulas)) <= term_modal_depth(t) + 1);
        }
        // the beta-guards add one modality below the prefix clause
        CHECK(modal_depth(char_formula(parse_term("a!.b!.0", terms), ab, formulas)) == 3);
    }
}

TEST_CASE("probe formulas") {
    TermArena terms;
    FormulaArena formulas;
    EventAlphabet pub({"drinks", "talks", "orders", "newPint"});

    FormulaRef plain = phi_probe({}, "drinks", terms.bot(), pub, formulas);
    CHECK(print_formula(plain) == "<drinks>tt | !<drinks>tt");
    CHECK(modal_depth(plain) == 1);

    FormulaRef guarded = phi_probe({"newPint", "talks"}, "drinks", terms.bot(), pub, formulas);
    CHECK(print_formula(guarded) == "[newPint][talks](<drinks>tt | !<drinks>tt)");
    CHECK(modal_depth(guarded) == 3);

    PointedSystem fig1 = load_fixture("fig1.mts");
    CHECK_FALSE(check(fig1, guarded, Mode::a));
    CHECK(check(repointed(fig1, "Talks"), plain, Mode::c));
    CHECK_FALSE(check(repointed(fig1, "Talks"), plain, Mode::a));

    SUBCASE("implementations satisfy sampled probes under the asserted judgment") {
        GenParams params;
        params.max_states = 5;
        params.max_events = 2;
        for (uint64_t seed = 40; seed < 70; ++seed) {
            PointedSystem impl = must_projection(random_modal_system(params, seed));
            const EventAlphabet &alphabet = impl.system.alphabet();
            TermRef t = random_term(alphabet, 2, 2, seed, terms);
            std::vector<std::string> trace{alphabet.name(0)};
            FormulaRef probe = phi_probe(trace, alphabet.name(alphabet.size() - 1), t, alphabet,
                                         formulas);
            CHECK(check(impl, probe, Mode::a));
        }
    }
}

TEST_CASE("unfolding") {
    TermArena terms;
    PointedSystem fig3 = load_fixture("fig3.mts");
    PointedSystem tom = repointed(fig3, "TomDrinks");

    SUBCASE("depth 0 is bot or 0 depending on successors") {
        CHECK(unfold(tom, 0, terms) == terms.bot());
        CHECK(unfold(repointed(fig3, "TomTalks"), 0, terms) == terms.nil());
    }
    SUBCASE("depth 1 at TomDrinks is the fig8 approximation") {
        TermRef t = unfold(tom, 1, terms);
        CHECK(print_term(t) == "drinks?.bot + talks!.0 + orders?.bot");
        PointedSystem fig8 = load_fixture("fig8.mts");
        CHECK(refinement_equivalent(operational_semantics(t, fig3.system.alphabet()), fig8));
    }
    SUBCASE("the unfold chain sits below the system and climbs") {
        for (const char *name : {"fig1.mts", "fig3.mts"}) {
            PointedSystem p = load_fixture(name);
            PointedSystem previous = operational_semantics(unfold(p, 0, terms), p.system.alphabet());
            for (int m = 1; m <= 4; ++m) {
                PointedSystem current =
                    operational_semantics(unfold(p, m, terms), p.system.alphabet());
                CHECK(refines(previous, current));
                CHECK(refines(previous, p));
                CHECK(equivalence_depth(p, previous).value_or(m) >= m - 1);
                previous = current;
            }
            CHECK(refines(previous, p));
        }
    }
}

TEST_CASE("term enumeration") {
    TermArena arena;
    EventAlphabet a({"a"});

    SUBCASE("depth 0") {
        auto terms = enumerate_terms(a, 0, 2, arena);
        REQUIRE(terms.size() == 2);
        CHECK(print_term(terms[0]) == "0");
        CHECK(print_term(terms[1]) == "bot");
    }
    SUBCASE("depth 1 width 1 contains the four prefixes") {
        auto terms = enumerate_terms(a, 1, 1, arena);
        std::vector<std::string> printed;
        for (TermRef t : terms)
            printed.push_back(print_term(t));
        for (const char *expected : {"a!.0", "a!.bot", "a?.0", "a?.bot"})
            CHECK(std::find(printed.begin(), printed.end(), expected) != printed.end());
        CHECK(terms.size() == 6);
    }
    SUBCASE("count matches an independent recursive counter") {
        // atoms + multisets of prefixes: prefixes(d) = 2|Act| * count(d-1),
        // sums of 1..W prefixes with repetition.
        auto choose_with_repetition = [](size_t n, size_t k) {
            // C(n + k - 1, k)
            size_t num = 1, den = 1;
            for (size_t i = 0; i < k; ++i) {
                num *= n + i;
                den *= i + 1;
            }
            return num / den;
        };
        auto expected_count = [&](auto &&self, int depth, int width) -> size_t {
            if (depth == 0)
                return 2;
            size_t prefixes = 2 * self(self, depth - 1, width); // one event, two prefix kinds
            size_t total = 2;                                   // atoms
            for (int k = 1; k <= width; ++k)
                total += choose_with_repetition(prefixes, static_cast<size_t>(k));
            return total;
        };
        auto terms = enumerate_terms(a, 2, 2, arena);
        CHECK(terms.size() == expected_count(expected_count, 2, 2));
    }
    SUBCASE("ordering is by modal depth first") {
        auto terms = enumerate_terms(a, 2, 2, arena);
        for (size_t i = 1; i < terms.size(); ++i)
            CHECK(terms[i - 1]->modal_depth() <= terms[i]->modal_depth());
    }
    SUBCASE("budget overruns raise") {
        CHECK_THROWS_AS(enumerate_terms(EventAlphabet({"a", "b"}), 3, 3, arena, 500), BudgetError);
    }
}

TEST_CASE("the characteristic-formula bridge on seeded pairs") {
    TermArena terms;
    FormulaArena formulas;
    GenParams params;
    params.max_states = 6;
    params.max_events = 3;
    int agreements = 0;
    for (uint64_t seed = 0; seed < 80; ++seed) {
        PointedSystem q = random_modal_system(params, seed);
        TermRef t = random_term(q.system.alphabet(), 1 + static_cast<int>(seed % 3), 2,
                                seed ^ 0xfeed, terms);
        PointedSystem ts = operational_semantics(t, q.system.alphabet());
        FormulaRef phi = char_formula(t, q.system.alphabet(), formulas);
        CHECK(refines(ts, q) == check(q, phi, Mode::a));
        ++agreements;
    }
    CHECK(agreements == 80);
}
