#include "mtskit/errors.hpp"
#include "mtskit/formula.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/term.hpp"

namespace mtskit {

FormulaRef distinguishing_formula(const PointedSystem &abstract_side,
                                  const PointedSystem &concrete_side, FormulaArena &arena) {
    require_same_alphabet(abstract_side.system, concrete_side.system);
    require_modal(abstract_side.system, "distinguishing_formula");
    if (refines(abstract_side, concrete_side))
        throw ValidationError("distinguishing_formula called on a refining pair");

    // The concrete side must reject the characteristic formula of some
    // unfolding of the abstract side no deeper than the directed chain's
    // stabilization index. The abstract side asserts every one of them.
    const int bound =
        refinement_stabilization_index(abstract_side.system, concrete_side.system) + 1;
    TermArena terms;
    for (int depth = 0; depth <= bound; ++depth) {
        TermRef probe = unfold(abstract_side, depth, terms);
        FormulaRef formula = char_formula(probe, abstract_side.system.alphabet(), arena);
        if (!check(concrete_side, formula, Mode::a)) {
            if (!check(abstract_side, formula, Mode::a))
                throw InternalError("abstract side rejects its own unfolding's formula");
            return formula;
        }
    }
    throw InternalError("no unfolding distinguishes a non-refining pair");
}

} // namespace mtskit
