#include "mtskit/refinement.hpp"

#include "mtskit/errors.hpp"

#include <algorithm>

namespace mtskit {

StateRelation::StateRelation(int left_states, int right_states, bool full)
    : left_states_(left_states), right_states_(right_states),
      cells_(static_cast<size_t>(left_states) * static_cast<size_t>(right_states),
             full ? 1 : 0) {}

size_t StateRelation::pair_count() const {
    return static_cast<size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

std::vector<std::pair<int, int>> StateRelation::pairs() const {
    std::vector<std::pair<int, int>> result;
    for (int s = 0; s < left_states_; ++s)
        for (int t = 0; t < right_states_; ++t)
            if (contains(s, t))
                result.emplace_back(s, t);
    return result;
}

namespace {

// One removal round of the refinement functional: keep (s, t) iff every must
// of s is matched by a must of t into `current` and every consistent
// transition of t is matched by a consistent transition of s into `current`.
StateRelation refinement_step(const MixedSystem &m, const MixedSystem &n,
                              const StateRelation &current) {
    StateRelation next(m.state_count(), n.state_count(), false);
    const int events = m.alphabet().size();
    for (int s = 0; s < m.state_count(); ++s) {
        for (int t = 0; t < n.state_count(); ++t) {
            bool ok = true;
            for (int e = 0; e < events && ok; ++e) {
                for (int s2 : m.succ_a(s, e)) {
                    bool matched = false;
                    for (int t2 : n.succ_a(t, e))
                        if (current.contains(s2, t2)) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    break;
                for (int t2 : n.succ_c(t, e)) {
                    bool matched = false;
                    for (int s2 : m.succ_c(s, e))
                        if (current.contains(s2, t2)) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
            }
            next.set(s, t, ok);
        }
    }
    return next;
}

// Consistency functional: keep (s, t) iff every must of s has a consistent
// answer from t into `current`, and symmetrically.
StateRelation consistency_step(const MixedSystem &m, const MixedSystem &n,
                               const StateRelation &current) {
    StateRelation next(m.state_count(), n.state_count(), false);
    const int events = m.alphabet().size();
    for (int s = 0; s < m.state_count(); ++s) {
        for (int t = 0; t < n.state_count(); ++t) {
            bool ok = true;
            for (int e = 0; e < events && ok; ++e) {
                for (int s2 : m.succ_a(s, e)) {
                    bool matched = false;
                    for (int t2 : n.succ_c(t, e))
                        if (current.contains(s2, t2)) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    break;
                for (int t2 : n.succ_a(t, e)) {
                    bool matched = false;
                    for (int s2 : m.succ_c(s, e))
                        if (current.contains(s2, t2)) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
            }
            next.set(s, t, ok);
        }
    }
    return next;
}

using StepFn = StateRelation (*)(const MixedSystem &, const MixedSystem &, const StateRelation &);

StateRelation run_to_fixpoint(const MixedSystem &m, const MixedSystem &n, StepFn step,
                              int *rounds = nullptr) {
    StateRelation current(m.state_count(), n.state_count(), true);
    int k = 0;
    for (;;) {
        StateRelation next = step(m, n, current);
        ++k;
        if (next == current) {
            if (rounds)
                *rounds = k - 1; // chain already stable at the previous index
            return current;
        }
        current = std::move(next);
    }
}

StateRelation run_bounded(const MixedSystem &m, const MixedSystem &n, StepFn step, int k) {
    StateRelation current(m.state_count(), n.state_count(), true);
    for (int i = 0; i < k; ++i) {
        StateRelation next = step(m, n, current);
        if (next == current)
            return current;
        current = std::move(next);
    }
    return current;
}

// Largest k such that (init_m, init_n) survives Q_k; nullopt if it is in the
// stable relation.
std::optional<int> survival_index(const PointedSystem &m, const PointedSystem &n, StepFn step) {
    StateRelation current(m.system.state_count(), n.system.state_count(), true);
    int k = 0;
    for (;;) {
        if (!current.contains(m.init, n.init))
            return k - 1;
        StateRelation next = step(m.system, n.system, current);
        if (next == current)
            return std::nullopt;
        current = std::move(next);
        ++k;
    }
}

} // namespace

StateRelation greatest_refinement(const MixedSystem &abstract_side,
                                  const MixedSystem &concrete_side) {
    require_same_alphabet(abstract_side, concrete_side);
    return run_to_fixpoint(abstract_side, concrete_side, refinement_step);
}

StateRelation bounded_refinement(const MixedSystem &abstract_side,
                                 const MixedSystem &concrete_side, int k) {
    require_same_alphabet(abstract_side, concrete_side);
    return run_bounded(abstract_side, concrete_side, refinement_step, k);
}

bool refines(const PointedSystem &abstract_side, const PointedSystem &concrete_side) {
    return greatest_refinement(abstract_side.system, concrete_side.system)
        .contains(abstract_side.init, concrete_side.init);
}

bool refinement_equivalent(const PointedSystem &p, const PointedSystem &q) {
    return refines(p, q) && refines(q, p);
}

std::optional<int> equivalence_depth(const PointedSystem &p, const PointedSystem &q) {
    require_same_alphabet(p.system, q.system);
    auto forward = survival_index(p, q, refinement_step);
    auto backward = survival_index(q, p, refinement_step);
    if (!forward && !backward)
        return std::nullopt;
    if (!forward)
        return backward;
    if (!backward)
        return forward;
    return std::min(*forward, *backward);
}

int refinement_stabilization_index(const MixedSystem &abstract_side,
                                   const MixedSystem &concrete_side) {
    require_same_alphabet(abstract_side, concrete_side);
    int rounds = 0;
    run_to_fixpoint(abstract_side, concrete_side, refinement_step, &rounds);
    return rounds;
}

std::optional<Transition> mix_condition_violation(const MixedSystem &system) {
    StateRelation self = greatest_refinement(system, system);
    for (const Transition &t : system.r_a()) {
        bool matched = false;
        for (int dst : system.succ_a(t.src, t.event)) {
            if (!system.has_c(t.src, t.event, dst))
                continue;
            if (self.contains(t.dst, dst)) { // dst refines t.dst
                matched = true;
                break;
            }
        }
        if (!matched)
            return t;
    }
    return std::nullopt;
}

bool satisfies_mix_condition(const MixedSystem &system) {
    return !mix_condition_violation(system).has_value();
}

PointedSystem normalize_mixed(const PointedSystem &p) {
    if (auto bad = mix_condition_violation(p.system)) {
        const MixedSystem &sys = p.system;
        throw ValidationError("mix condition violated at must-transition (" +
                              sys.state_name(bad->src) + ", " + sys.alphabet().name(bad->event) +
                              ", " + sys.state_name(bad->dst) + ")");
    }
    std::vector<Transition> musts;
    for (const Transition &t : p.system.r_a())
        if (p.system.has_c(t.src, t.event, t.dst))
            musts.push_back(t);
    MixedSystem normalized(p.system.alphabet(), p.system.state_names(), std::move(musts),
                           p.system.r_c(), SystemKind::modal);
    return PointedSystem{std::move(normalized), p.init};
}

bool is_implementation(const PointedSystem &p) {
    require_modal(p.system, "is_implementation");
    for (int s : reachable(p))
        for (int e = 0; e < p.system.alphabet().size(); ++e) {
            auto may = p.system.succ_c(s, e);
            for (int dst : may)
                if (!p.system.has_a(s, e, dst))
                    return false;
        }
    return true;
}

bool is_implementation_equivalent(const PointedSystem &p) {
    require_modal(p.system, "is_implementation_equivalent");
    return refines(must_projection(p), p);
}

StateRelation consistency_relation(const MixedSystem &left, const MixedSystem &right) {
    require_same_alphabet(left, right);
    require_modal(left, "consistency_relation");
    require_modal(right, "consistency_relation");
    return run_to_fixpoint(left, right, consistency_step);
}

bool bounded_consistency(const PointedSystem &p, const PointedSystem &q, int k) {
    require_same_alphabet(p.system, q.system);
    require_modal(p.system, "bounded_consistency");
    require_modal(q.system, "bounded_consistency");
    return run_bounded(p.system, q.system, consistency_step, k).contains(p.init, q.init);
}

int consistency_stabilization_index(const MixedSystem &left, const MixedSystem &right) {
    require_same_alphabet(left, right);
    int rounds = 0;
    run_to_fixpoint(left, right, consistency_step, &rounds);
    return rounds;
}

std::optional<PointedSystem> common_refinement(const PointedSystem &p, const PointedSystem &q) {
    StateRelation consistent = consistency_relation(p.system, q.system);
    if (!consistent.contains(p.init, q.init))
        return std::nullopt;

    const MixedSystem &m = p.system;
    const MixedSystem &n = q.system;
    auto pairs = consistent.pairs();
    std::vector<int> pair_index(static_cast<size_t>(m.state_count()) * n.state_count(), -1);
    std::vector<std::string> states;
    states.reserve(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [s, t] = pairs[i];
        pair_index[static_cast<size_t>(s) * n.state_count() + t] = static_cast<int>(i);
        states.push_back(m.state_name(s) + "*" + n.state_name(t));
    }
    auto index_of = [&](int s, int t) {
        return pair_index[static_cast<size_t>(s) * n.state_count() + t];
    };

    std::vector<Transition> r_a, r_c;
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [s, t] = pairs[i];
        for (int e = 0; e < m.alphabet().size(); ++e) {
            for (int s2 : m.succ_c(s, e))
                for (int t2 : n.succ_c(t, e)) {
                    int j = index_of(s2, t2);
                    if (j < 0)
                        continue;
                    Transition u{static_cast<int>(i), e, j};
                    r_c.push_back(u);
                    if ((m.has_a(s, e, s2) || n.has_a(t, e, t2)))
                        r_a.push_back(u);
                }
        }
    }
    MixedSystem witness_system(m.alphabet(), std::move(states), std::move(r_a), std::move(r_c),
                               SystemKind::modal);
    PointedSystem witness{std::move(witness_system), index_of(p.init, q.init)};
    if (!refines(p, witness) || !refines(q, witness))
        throw InternalError("common refinement witness failed its self-check");
    return witness;
}

} // namespace mtskit
