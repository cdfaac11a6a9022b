#include <doctest.h>

#include "test_util.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/metrics.hpp"
#include "mtskit/nu.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/term.hpp"
#include "mtskit/testkit.hpp"

using namespace mtskit;
using namespace mtskit::test;

TEST_CASE("nu evaluation basics") {
    TermArena terms;
    PointedSystem impl = term_system("a!.b!.0", "a b", terms);

    CHECK(check_nu(impl, nu_tt()));
    CHECK_FALSE(check_nu(impl, nu_ff()));
    CHECK(check_nu(impl, nu_bind(1, nu_box("a", nu_var(1))))); // full set is a fixpoint
    CHECK(check_nu(impl, nu_diamond("a", nu_diamond("b", nu_tt()))));
    CHECK_FALSE(check_nu(impl, nu_diamond("b", nu_tt())));

    SUBCASE("non-implementations are rejected") {
        PointedSystem partial = term_system("a?.0", "a", terms);
        CHECK_THROWS_WITH_AS(check_nu(partial, nu_tt()), doctest::Contains("implementation"),
                             ValidationError);
    }
    SUBCASE("unbound variables are rejected") {
        CHECK_THROWS_WITH_AS(check_nu(impl, nu_diamond("a", nu_var(3))),
                             doctest::Contains("unbound"), ValidationError);
    }
}

TEST_CASE("characteristic nu-formula of the deadlock boxes every event to ff") {
    TermArena terms;
    PointedSystem nil = term_system("0", "a b", terms);
    NuRef expected = nu_bind(1, nu_and({nu_box("a", nu_ff()), nu_box("b", nu_ff())}));
    CHECK(nu_equal(characteristic_nu(nil), expected));
}

TEST_CASE("the pub system of equations at Drinks, calling contexts included") {
    PointedSystem drinks = repointed(load_fixture("fig1.mts"), "Drinks");
    // Variables in construction order: X1 = Drinks, X2 = Talks (inside the
    // talks-box), X3 = Waits inside that, X4 = Waits under the orders-box of
    // Drinks, X5/X6 = the two Talks expansions inside X4.
    NuRef x3 = nu_bind(3, nu_and({
        nu_diamond("newPint", nu_var(1)),
        nu_diamond("newPint", nu_var(2)),
        nu_box("drinks", nu_ff()),
        nu_box("talks", nu_ff()),
        nu_box("orders", nu_ff()),
        nu_box("newPint", nu_or({nu_var(1), nu_var(2)})),
    }));
    NuRef x2 = nu_bind(2, nu_and({
        nu_box("drinks", nu_var(1)),
        nu_box("talks", nu_ff()),
        nu_box("orders", x3),
        nu_box("newPint", nu_ff()),
    }));
    auto talks_in_waits = [](int var, int waits_var) {
        return nu_bind(var, nu_and({
            nu_box("drinks", nu_var(1)),
            nu_box("talks", nu_ff()),
            nu_box("orders", nu_var(waits_var)),
            nu_box("newPint", nu_ff()),
        }));
    };
    NuRef x4 = nu_bind(4, nu_and({
        nu_diamond("newPint", nu_var(1)),
        nu_diamond("newPint", talks_in_waits(5, 4)),
        nu_box("drinks", nu_ff()),
        nu_box("talks", nu_ff()),
        nu_box("orders", nu_ff()),
        nu_box("newPint", nu_or({nu_var(1), talks_in_waits(6, 4)})),
    }));
    NuRef expected = nu_bind(1, nu_and({
        nu_box("drinks", nu_var(1)),
        nu_box("talks", x2),
        nu_box("orders", x4),
        nu_box("newPint", nu_ff()),
    }));
    CHECK(nu_equal(characteristic_nu(drinks), expected));
}

TEST_CASE("characteristic nu-formula characterizes refinement on implementations") {
    PointedSystem fig1 = load_fixture("fig1.mts");
    NuRef phi = characteristic_nu(fig1);
    CHECK(check_nu(must_projection(fig1), phi));

    GenParams params;
    params.max_states = 4;
    params.max_events = 2;
    TermArena terms;
    int checked = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        PointedSystem m = random_modal_system(params, seed * 5 + 1);
        NuRef psi = characteristic_nu(m);
        PointedSystem projected = must_projection(m);
        CHECK(check_nu(projected, psi) == refines(m, projected));
        for (TermRef t : enumerate_bounded_implementations(m, 2, terms, 2000)) {
            PointedSystem impl = operational_semantics(t, m.system.alphabet());
            CHECK(check_nu(impl, psi) == refines(m, impl));
            if (++checked > 400)
                return;
        }
    }
}

TEST_CASE("nu-free formulas agree with the asserted judgment on implementations") {
    TermArena terms;
    PointedSystem impl = term_system("a!.b!.0 + b!.0", "a b", terms);
    FormulaArena formulas;
    struct Pair {
        const char *nu_text;
        const char *hml_text;
    };
    for (const Pair &pair : {Pair{"<a><b>tt", "<a><b>tt"}, Pair{"[a]<b>tt", "[a]<b>tt"},
                             Pair{"<a>tt & [b]ff", "<a>tt & [b]ff"},
                             Pair{"<a>tt | <b>ff", "<a>tt | <b>ff"}}) {
        CHECK(check_nu(impl, parse_nu_formula(pair.nu_text)) ==
              check(impl, parse_formula(pair.hml_text, formulas), Mode::a));
    }
}
