#pragma once

#include "mtskit/system.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mtskit {

/// A relation between the states of two systems, stored as a dense matrix.
/// Used both for refinement relations (greatest or bounded approximants) and
/// for the consistency relation.
class StateRelation {
public:
    StateRelation(int left_states, int right_states, bool full);

    bool contains(int left, int right) const {
        return cells_[static_cast<size_t>(left) * right_states_ + right] != 0;
    }
    void set(int left, int right, bool value) {
        cells_[static_cast<size_t>(left) * right_states_ + right] = value ? 1 : 0;
    }
    int left_states() const { return left_states_; }
    int right_states() const { return right_states_; }
    size_t pair_count() const;
    bool operator==(const StateRelation &) const = default;

    /// All related pairs, sorted, as state indices.
    std::vector<std::pair<int, int>> pairs() const;

private:
    int left_states_;
    int right_states_;
    std::vector<char> cells_;
};

/// Greatest refinement between the states of two systems over the same
/// alphabet: (s, t) related iff t refines s. Computed by removal of violating
/// pairs from the full product until stable. Accepts mixed systems.
StateRelation greatest_refinement(const MixedSystem &abstract_side,
                                  const MixedSystem &concrete_side);

/// Bounded approximant Q_k: Q_0 is the full product, Q_{i+1} keeps the pairs
/// whose obligations are dischargeable into Q_i. Coincides with
/// greatest_refinement once k reaches the stabilization index.
StateRelation bounded_refinement(const MixedSystem &abstract_side,
                                 const MixedSystem &concrete_side, int k);

/// True iff the concrete system refines the abstract one: every must of the
/// abstract initial state is matched by a must of the concrete side, every
/// consistent transition of the concrete side by one of the abstract side,
/// coinductively. Note argument order: abstract first.
bool refines(const PointedSystem &abstract_side, const PointedSystem &concrete_side);

bool refinement_equivalent(const PointedSystem &p, const PointedSystem &q);

/// Exact depth of mutual agreement: nullopt when refinement-equivalent,
/// otherwise the largest k such that the initial pair survives Q_k of both
/// directed chains.
std::optional<int> equivalence_depth(const PointedSystem &p, const PointedSystem &q);

/// Index at which the directed chain Q_0 ⊇ Q_1 ⊇ ... stabilizes; at most
/// |states| * |states|.
int refinement_stabilization_index(const MixedSystem &abstract_side,
                                   const MixedSystem &concrete_side);

/// Mix condition: every asserted (s, α, s') has some asserted-and-consistent
/// (s, α, s'') with s'' refining s'.
bool satisfies_mix_condition(const MixedSystem &system);

/// First must-transition violating the mix condition, if any.
std::optional<Transition> mix_condition_violation(const MixedSystem &system);

/// (alphabet, r_a ∩ r_c, r_c) pointed at the same state; refinement-equivalent
/// to the input whenever the mix condition holds. Throws ValidationError
/// naming a violating must-transition otherwise.
PointedSystem normalize_mixed(const PointedSystem &p);

/// No reachable may-transition (r_c \ r_a empty on the reachable part).
/// Requires a modal system.
bool is_implementation(const PointedSystem &p);

/// Whether the system is refinement-equivalent to a labelled transition
/// system, decided as refines(must_projection(p), p).
bool is_implementation_equivalent(const PointedSystem &p);

/// Greatest consistency relation between two modal systems: each must of one
/// side is answered by a consistent transition of the other into the
/// relation. Its initial pair is nonempty iff a common refinement exists.
StateRelation consistency_relation(const MixedSystem &left, const MixedSystem &right);

/// True iff the initial pair survives k rounds of obligation discharge
/// starting from the full product.
bool bounded_consistency(const PointedSystem &p, const PointedSystem &q, int k);

int consistency_stabilization_index(const MixedSystem &left, const MixedSystem &right);

/// Product witness over consistent pairs; nullopt when the initial pair is
/// inconsistent. The witness is modal and is self-checked to refine both
/// inputs (InternalError otherwise).
std::optional<PointedSystem> common_refinement(const PointedSystem &p, const PointedSystem &q);

class FormulaArena;
class Formula;

/// For a non-refining pair, a formula asserted by the abstract side but not
/// by the concrete side: the characteristic formula of the shallowest
/// unfolding of the abstract side whose system the concrete side fails to
/// refine. Throws ValidationError when the pair refines.
const Formula *distinguishing_formula(const PointedSystem &abstract_side,
                                      const PointedSystem &concrete_side, FormulaArena &arena);

} // namespace mtskit
