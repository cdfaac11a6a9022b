// Seeded cross-validation harness. Every failure prints the seed and a
// minimized reproduction so it can be replayed.

#include "mtskit/errors.hpp"
#include "mtskit/formula.hpp"
#include "mtskit/io.hpp"
#include "mtskit/metrics.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/term.hpp"
#include "mtskit/testkit.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace mtskit;

namespace {

struct Failure {
    uint64_t seed;
    std::string what;
    std::vector<PointedSystem> repro;
};

int failures = 0;

void report(const Failure &failure) {
    ++failures;
    std::cout << "FAIL seed=" << failure.seed << " " << failure.what << "\n";
    for (const auto &p : failure.repro)
        std::cout << "---- minimized reproduction ----\n" << print_system(p);
}

PointedSystem shrink_guarded(const PointedSystem &p,
                             const std::function<bool(const PointedSystem &)> &fails) {
    auto guarded = [&](const PointedSystem &candidate) {
        try {
            return fails(candidate);
        } catch (const Error &) {
            return false;
        }
    };
    return shrink_system(p, guarded);
}

// refines(op_sem(t), q) must coincide with check(q, phi_t, a).
void psip_case(uint64_t seed) {
    GenParams params;
    params.max_states = 6;
    params.min_events = 1;
    params.max_events = 3;
    PointedSystem q = random_modal_system(params, seed);
    TermArena terms;
    TermRef t = random_term(q.system.alphabet(), 1 + static_cast<int>(seed % 4), 3, seed ^ 0x9e37,
                            terms);
    PointedSystem ts = operational_semantics(t, q.system.alphabet());
    FormulaArena formulas;
    FormulaRef phi = char_formula(t, q.system.alphabet(), formulas);

    auto mismatch = [&](const PointedSystem &candidate) {
        FormulaArena local;
        FormulaRef f = char_formula(t, candidate.system.alphabet(), local);
        return refines(ts, candidate) != check(candidate, f, Mode::a);
    };
    if (mismatch(q))
        report({seed, "characteristic-formula bridge disagrees with refinement for term " +
                          print_term(t),
                {shrink_guarded(q, mismatch)}});
    (void)phi;
}

void metrics_case(uint64_t seed) {
    GenParams params;
    params.max_states = 4;
    params.max_events = 2;
    PointedSystem p = random_modal_system(params, seed * 3 + 1);
    PointedSystem q = random_modal_system(params, seed * 3 + 2);
    PointedSystem r = random_modal_system(params, seed * 3 + 3);
    if (p.system.alphabet() != q.system.alphabet() || q.system.alphabet() != r.system.alphabet())
        return;

    DyadicDistance pq = distance(p, q), qp = distance(q, p);
    if (!(pq == qp)) {
        report({seed, "distance is not symmetric", {p, q}});
        return;
    }
    if (pq.is_zero() != refinement_equivalent(p, q)) {
        report({seed, "distance kernel disagrees with refinement equivalence", {p, q}});
        return;
    }
    DyadicDistance pr = distance(p, r), qr = distance(q, r);
    if (!(pr <= max(pq, qr))) {
        report({seed, "strong triangle inequality violated", {p, q, r}});
        return;
    }
    DyadicDistance oracle = oracle_distance(p, q, p.system.state_count() * q.system.state_count());
    if (!(oracle == pq))
        report({seed, "oracle distance " + oracle.str() + " != engine distance " + pq.str(),
                {p, q}});
}

void consistency_case(uint64_t seed) {
    GenParams params;
    params.max_states = 4;
    params.max_events = 2;
    PointedSystem p = random_modal_system(params, seed * 7 + 1);
    PointedSystem q = random_modal_system(params, seed * 7 + 2);
    if (p.system.alphabet() != q.system.alphabet())
        return;

    DyadicDistance measure = c1(p, q);
    auto witness = common_refinement(p, q);
    if (measure.is_zero() != witness.has_value()) {
        report({seed, "c1 kernel disagrees with common-refinement existence", {p, q}});
        return;
    }
    if (witness && (!refines(p, *witness) || !refines(q, *witness)))
        report({seed, "witness fails a refinement check", {p, q, *witness}});
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"mtskit-test - seeded cross-validation suites"};
    std::string suite = "all";
    int cases = 200;
    uint64_t seed = 1;
    app.add_option("--suite", suite)->check(CLI::IsMember({"psip", "metrics", "consistency", "all"}));
    app.add_option("--cases", cases);
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    for (int i = 0; i < cases; ++i) {
        uint64_t case_seed = seed + static_cast<uint64_t>(i);
        try {
            if (suite == "psip" || suite == "all")
                psip_case(case_seed);
            if (suite == "metrics" || suite == "all")
                metrics_case(case_seed);
            if (suite == "consistency" || suite == "all")
                consistency_case(case_seed);
        } catch (const Error &e) {
            report({case_seed, std::string("unexpected error: ") + e.what(), {}});
        }
    }
    if (failures) {
        std::cout << failures << " failing case(s)\n";
        return 1;
    }
    std::cout << "ok: " << cases << " cases per suite (" << suite << ")\n";
    return 0;
}
