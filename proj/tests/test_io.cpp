#include <doctest.h>

#include "test_util.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/io.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/nu.hpp"
#include "mtskit/term.hpp"
#include "mtskit/testkit.hpp"

#include <random>

using namespace mtskit;
using namespace mtskit::test;

TEST_CASE("system round trips") {
    for (const char *name : {"fig1.mts", "fig3.mts", "fig4_left.mts", "fig4_right.mts",
                             "fig8.mts"}) {
        PointedSystem p = load_fixture(name);
        std::string printed = print_system(p);
        PointedSystem again = parse_system(printed);
        CHECK(again.system.alphabet() == p.system.alphabet());
        CHECK(again.system.r_a() == p.system.r_a());
        CHECK(again.system.r_c() == p.system.r_c());
        CHECK(again.system.declared_kind() == p.system.declared_kind());
        CHECK(again.system.state_name(again.init) == p.system.state_name(p.init));
        CHECK(print_system(again) == printed); // print of parse of print is print-stable
    }
}

TEST_CASE("system round trips on generated systems") {
    // Printing orders states by first appearance, so a freshly generated
    // system may get renumbered once; from then on parse and print are exact
    // inverses.
    GenParams params;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        PointedSystem p = random_modal_system(params, seed);
        PointedSystem canonical = parse_system(print_system(p));
        CHECK(refinement_equivalent(canonical, p));
        PointedSystem again = parse_system(print_system(canonical));
        CHECK(again.system.r_a() == canonical.system.r_a());
        CHECK(again.system.r_c() == canonical.system.r_c());
        CHECK(again.system.state_names() == canonical.system.state_names());
        CHECK(print_system(again) == print_system(canonical));
    }
}

TEST_CASE("system parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_system(""), ParseError);
    CHECK_THROWS_AS(parse_system("mts modal\ninit: s\n"), ParseError); // alphabet missing

    try {
        parse_system("mts modal\nalphabet: a\ninit: s\nmust s zap t\n");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("unknown event 'zap'") != std::string::npos);
    }

    SUBCASE("empty alphabet line") {
        CHECK_THROWS_AS(parse_system("mts modal\nalphabet:\ninit: s\n"), ParseError);
    }
    SUBCASE("mode words match the declared kind") {
        CHECK_THROWS_AS(parse_system("mts modal\nalphabet: a\ninit: s\na s a t\n"), ParseError);
        CHECK_THROWS_AS(parse_system("mts mixed\nalphabet: a\ninit: s\nmust s a t\n"), ParseError);
    }
    SUBCASE("comments and blank lines are fine") {
        PointedSystem p = parse_system("# c\nmts modal\n\nalphabet: a # trailing\ninit: s\n");
        CHECK(p.system.state_count() == 1);
    }
}

TEST_CASE("formula grammar") {
    FormulaArena arena;
    SUBCASE("example two's formula") {
        FormulaRef f = parse_formula("<drinks>tt | !<drinks>tt", arena);
        FormulaRef dia = arena.diamond("drinks", arena.tt());
        CHECK(f == arena.disjunction(dia, arena.negation(dia)));
    }
    SUBCASE("precedence: negation over conjunction over disjunction") {
        CHECK(parse_formula("!tt & ff | tt", arena) ==
              arena.disjunction(arena.conjunction(arena.negation(arena.tt()), arena.ff()),
                                arena.tt()));
    }
    SUBCASE("modalities bind to the following atom") {
        CHECK(parse_formula("<a>tt & ff", arena) ==
              arena.conjunction(arena.diamond("a", arena.tt()), arena.ff()));
        CHECK(parse_formula("[a]<b>tt", arena) ==
              arena.box("a", arena.diamond("b", arena.tt())));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_formula("", arena), ParseError);
        CHECK_THROWS_AS(parse_formula("<a tt", arena), ParseError);
        CHECK_THROWS_AS(parse_formula("tt &", arena), ParseError);
        CHECK_THROWS_AS(parse_formula("tt tt", arena), ParseError);
    }
}

TEST_CASE("formula print/parse round trips on random formulas") {
    FormulaArena arena;
    std::mt19937_64 rng(5);
    EventAlphabet alphabet({"a", "b"});
    auto random_formula = [&](auto &&self, int depth) -> FormulaRef {
        auto pick_event = [&] { return alphabet.name(static_cast<int>(rng() % 2)); };
        if (depth == 0)
            return rng() % 2 ? arena.tt() : arena.ff();
        switch (rng() % 6) {
        case 0:
            return arena.tt();
        case 1:
            return arena.negation(self(self, depth - 1));
        case 2:
            return arena.diamond(pick_event(), self(self, depth - 1));
        case 3:
            return arena.box(pick_event(), self(self, depth - 1));
        case 4:
            return arena.conjunction(self(self, depth - 1), self(self, depth - 1));
        default:
            return arena.disjunction(self(self, depth - 1), self(self, depth - 1));
        }
    };
    for (int i = 0; i < 300; ++i) {
        FormulaRef f = random_formula(random_formula, 5);
        std::string printed = print_formula(f);
        CHECK(parse_formula(printed, arena) == f); // pointer identity via hash consing
        CHECK(print_formula(parse_formula(printed, arena)) == printed);
    }
}

TEST_CASE("term grammar") {
    TermArena arena;
    CHECK(parse_term("bot", arena) == arena.bot());
    CHECK(parse_term("0", arena) == arena.nil());
    CHECK(parse_term("a!.0", arena) == arena.must_prefix("a", arena.nil()));
    CHECK(parse_term("a?.b!.bot", arena) ==
          arena.may_prefix("a", arena.must_prefix("b", arena.bot())));
    CHECK(parse_term("a!.0 + b?.0", arena) ==
          arena.sum(arena.must_prefix("a", arena.nil()), arena.may_prefix("b", arena.nil())));
    CHECK(parse_term("a!.(b!.0 + c!.0)", arena)->kind() == TermKind::must_prefix);

    SUBCASE("the side condition rejects 0 and bot summands") {
        CHECK_THROWS_AS(parse_term("a!.0 + 0", arena), ParseError);
        CHECK_THROWS_AS(parse_term("bot + a!.0", arena), ParseError);
    }
    SUBCASE("left associativity round trips") {
        TermRef t = parse_term("a!.0 + b!.0 + a?.bot", arena);
        CHECK(print_term(t) == "a!.0 + b!.0 + a?.bot");
        CHECK(parse_term(print_term(t), arena) == t);
        TermRef nested = arena.sum(arena.must_prefix("a", arena.nil()),
                                   arena.sum(arena.must_prefix("b", arena.nil()),
                                             arena.may_prefix("a", arena.bot())));
        CHECK(print_term(nested) == "a!.0 + (b!.0 + a?.bot)");
        CHECK(parse_term(print_term(nested), arena) == nested);
    }
}

TEST_CASE("term print/parse round trips on random terms") {
    TermArena arena;
    EventAlphabet alphabet({"a", "b", "c"});
    for (uint64_t seed = 0; seed < 200; ++seed) {
        TermRef t = random_term(alphabet, 4, 3, seed, arena);
        CHECK(parse_term(print_term(t), arena) == t);
    }
}

TEST_CASE("nu-formula grammar and round trips") {
    NuRef f = parse_nu_formula("nu X1 . [a]X1 & <b>tt");
    CHECK(f->kind == NuKind::nu);
    CHECK(print_nu_formula(f) == "nu X1 . [a]X1 & <b>tt");

    SUBCASE("junction chains are n-ary, parentheses preserve nesting") {
        NuRef flat = parse_nu_formula("tt & tt & ff");
        CHECK(flat->children.size() == 3);
        NuRef nested = parse_nu_formula("(tt & tt) & ff");
        CHECK(nested->children.size() == 2);
        CHECK(print_nu_formula(nested) == "(tt & tt) & ff");
        CHECK(nu_equal(parse_nu_formula(print_nu_formula(nested)), nested));
    }
    SUBCASE("binder errors") {
        CHECK_THROWS_AS(parse_nu_formula("X1"), ParseError);              // free
        CHECK_THROWS_AS(parse_nu_formula("nu X1 . nu X1 . X1"), ParseError); // bound twice
        CHECK_THROWS_AS(parse_nu_formula("!tt"), ParseError);             // no negation
    }
    SUBCASE("characteristic formulas round trip") {
        PointedSystem fig1 = load_fixture("fig1.mts");
        NuRef phi = characteristic_nu(fig1);
        CHECK(nu_equal(parse_nu_formula(print_nu_formula(phi)), phi));
    }
}
