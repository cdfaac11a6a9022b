#include "mtskit/metrics.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/io.hpp"
#include "mtskit/refinement.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mtskit {

DyadicDistance DyadicDistance::two_pow_neg(int n) {
    if (n < 0)
        throw ValidationError("dyadic exponent must be non-negative");
    return DyadicDistance(false, n);
}

DyadicDistance DyadicDistance::from_agreement_depth(std::optional<int> depth) {
    return depth ? two_pow_neg(*depth) : zero();
}

int DyadicDistance::exponent() const {
    if (zero_)
        throw ValidationError("distance 0 has no dyadic exponent");
    return n_;
}

bool DyadicDistance::operator<(const DyadicDistance &other) const {
    if (zero_)
        return !other.zero_;
    if (other.zero_)
        return false;
    return n_ > other.n_; // larger exponent, smaller value
}

std::string DyadicDistance::str() const {
    if (zero_)
        return "0";
    if (n_ == 0)
        return "1";
    return "2^-" + std::to_string(n_);
}

DyadicDistance max(DyadicDistance a, DyadicDistance b) { return a < b ? b : a; }
DyadicDistance min(DyadicDistance a, DyadicDistance b) { return a < b ? a : b; }

DyadicDistance distance(const PointedSystem &p, const PointedSystem &q) {
    return DyadicDistance::from_agreement_depth(equivalence_depth(p, q));
}

DyadicDistance c1(const PointedSystem &p, const PointedSystem &q) {
    StateRelation consistent = consistency_relation(p.system, q.system);
    if (consistent.contains(p.init, q.init))
        return DyadicDistance::zero();
    // The initial pair is outside the greatest fixpoint, so the bounded
    // chain drops it after finitely many rounds.
    int k = 0;
    while (bounded_consistency(p, q, k + 1))
        ++k;
    return DyadicDistance::two_pow_neg(k);
}

namespace {

// Canonical form of an implementation term: children canonicalized, duplicate
// branches collapsed, summands sorted. Two implementation terms are
// refinement-equivalent iff their canonical forms are the same interned node.
class ImplementationTrees {
public:
    explicit ImplementationTrees(TermArena &arena) : arena_(arena) {}

    TermRef canonical(TermRef t) {
        auto it = canon_.find(t);
        if (it != canon_.end())
            return it->second;
        std::vector<std::pair<std::string, TermRef>> branches;
        for (const TermTransition &step : sos_transitions(t)) {
            if (!step.must)
                throw ValidationError("may-transition in implementation term");
            branches.emplace_back(step.event, canonical(step.target));
        }
        TermRef result = assemble(std::move(branches));
        canon_.emplace(t, result);
        return result;
    }

    // Branch list (not yet canonical order) to canonical term.
    TermRef assemble(std::vector<std::pair<std::string, TermRef>> branches) {
        std::sort(branches.begin(), branches.end(), [this](const auto &a, const auto &b) {
            if (a.first != b.first)
                return a.first < b.first;
            return text(a.second) < text(b.second);
        });
        branches.erase(std::unique(branches.begin(), branches.end()), branches.end());
        std::vector<TermRef> parts;
        parts.reserve(branches.size());
        for (const auto &[event, target] : branches)
            parts.push_back(arena_.must_prefix(event, target));
        return arena_.sum_all(parts);
    }

    // Largest k at which two canonical trees are k-bisimilar; nullopt = equal.
    // Unmatched obligations fail at depth 1, matched ones one level later
    // than their best partner.
    std::optional<int> agreement_depth(TermRef a, TermRef b) {
        if (a == b)
            return std::nullopt;
        auto key = std::minmax(a, b);
        auto it = depth_.find(key);
        if (it != depth_.end())
            return it->second;
        std::optional<int> result;
        for (TermRef one : {key.first, key.second}) {
            TermRef two = (one == key.first) ? key.second : key.first;
            for (const TermTransition &step : sos_transitions(one)) {
                int best = -1;
                bool perfect = false;
                for (const TermTransition &other : sos_transitions(two)) {
                    if (other.event != step.event)
                        continue;
                    auto sub = agreement_depth(step.target, other.target);
                    if (!sub) {
                        perfect = true; // matched by an equal subtree
                        break;
                    }
                    best = std::max(best, *sub);
                }
                if (perfect)
                    continue;
                int fails_at = best + 1;
                if (!result || fails_at < *result)
                    result = fails_at;
            }
        }
        // Distinct canonical trees always have a failing obligation.
        if (!result)
            throw InternalError("distinct canonical trees with no failing obligation");
        depth_.emplace(key, result);
        return result;
    }

    DyadicDistance dist(TermRef a, TermRef b) {
        return DyadicDistance::from_agreement_depth(agreement_depth(a, b));
    }

    // Depth-d cut of a canonical tree, canonical again. Two implementations
    // are d-bisimilar iff their depth-d truncations are equal.
    TermRef truncate(TermRef t, int depth) {
        if (depth == 0)
            return arena_.nil();
        auto key = std::make_pair(t, depth);
        auto it = trunc_.find(key);
        if (it != trunc_.end())
            return it->second;
        std::vector<std::pair<std::string, TermRef>> branches;
        for (const TermTransition &step : sos_transitions(t))
            branches.emplace_back(step.event, truncate(step.target, depth - 1));
        TermRef result = assemble(std::move(branches));
        trunc_.emplace(key, result);
        return result;
    }

    const std::string &text(TermRef t) {
        auto it = print_.find(t);
        if (it == print_.end())
            it = print_.emplace(t, print_term(t)).first;
        return it->second;
    }

private:
    TermArena &arena_;
    std::map<TermRef, TermRef> canon_;
    std::map<std::pair<TermRef, TermRef>, std::optional<int>> depth_;
    std::map<std::pair<TermRef, int>, TermRef> trunc_;
    std::map<TermRef, std::string> print_;
};

// All resolutions of the may-choices in the depth-K unfolding, canonicalized
// and deduplicated. Stubs truncate to deadlock: beyond the horizon every
// implementation looks alike at this depth. Partial resolutions are
// deduplicated slot by slot, so the work stays proportional to the number of
// distinct behaviors rather than the raw product of choices.
std::vector<TermRef> bounded_slice(const PointedSystem &p, int K, TermArena &arena,
                                   ImplementationTrees &trees, size_t budget) {
    TermRef tree = unfold(p, K, arena);
    std::map<TermRef, std::vector<TermRef>> memo;
    auto resolve = [&](auto &&self, TermRef node) -> const std::vector<TermRef> & {
        auto it = memo.find(node);
        if (it != memo.end())
            return it->second;
        std::vector<TermRef> results;
        if (node->kind() == TermKind::bot || node->kind() == TermKind::nil) {
            results.push_back(arena.nil());
        } else {
            struct Slot {
                std::string event;
                bool optional;
                const std::vector<TermRef> *choices;
            };
            std::vector<Slot> slots;
            for (const TermTransition &step : sos_transitions(node))
                slots.push_back({step.event, !step.must, &self(self, step.target)});
            std::set<TermRef> partials{arena.nil()}; // canonical partial terms
            for (const Slot &slot : slots) {
                std::set<TermRef> extended;
                for (TermRef partial : partials) {
                    if (slot.optional)
                        extended.insert(partial);
                    std::vector<std::pair<std::string, TermRef>> branches;
                    for (const TermTransition &step : sos_transitions(partial))
                        branches.emplace_back(step.event, step.target);
                    for (TermRef choice : *slot.choices) {
                        branches.emplace_back(slot.event, choice);
                        extended.insert(trees.assemble(branches));
                        branches.pop_back();
                        if (extended.size() > budget)
                            throw BudgetError("implementation enumeration exceeded budget");
                    }
                }
                partials = std::move(extended);
            }
            results.assign(partials.begin(), partials.end());
        }
        return memo.emplace(node, std::move(results)).first->second;
    };
    std::vector<TermRef> slice = resolve(resolve, tree);
    std::sort(slice.begin(), slice.end(), [&](TermRef a, TermRef b) {
        if (a->modal_depth() != b->modal_depth())
            return a->modal_depth() < b->modal_depth();
        if (a->size() != b->size())
            return a->size() < b->size();
        return trees.text(a) < trees.text(b);
    });
    return slice;
}

IntervalEstimate exact_estimate(DyadicDistance value) { return {value, value, true}; }

// Shared framing for c2 and the Hausdorff lift: singleton implementation
// sets give the plain distance; a slice-visible extremum strictly above 2^-K
// is exact for the full implementation sets; anything else is bracketed.
IntervalEstimate bounded_estimate(const PointedSystem &p, const PointedSystem &q, int K,
                                  size_t budget, bool hausdorff_lift) {
    require_same_alphabet(p.system, q.system);
    require_modal(p.system, "bounded measures");
    require_modal(q.system, "bounded measures");
    if (K <= 0)
        throw ValidationError("depth bound must be positive");
    if (is_implementation(p) && is_implementation(q))
        return exact_estimate(distance(p, q));

    TermArena arena;
    ImplementationTrees trees(arena);
    auto left = bounded_slice(p, K, arena, trees, budget);
    auto right = bounded_slice(q, K, arena, trees, budget);

    // per-depth truncation sets make both lifts linear in the slice sizes
    std::vector<std::set<TermRef>> left_cuts(static_cast<size_t>(K) + 1),
        right_cuts(static_cast<size_t>(K) + 1);
    for (int d = 0; d <= K; ++d) {
        for (TermRef t : left)
            left_cuts[static_cast<size_t>(d)].insert(trees.truncate(t, d));
        for (TermRef t : right)
            right_cuts[static_cast<size_t>(d)].insert(trees.truncate(t, d));
    }

    DyadicDistance value = DyadicDistance::zero();
    if (hausdorff_lift) {
        // sup over one side of the distance to the nearest partner
        auto directed = [&](const std::vector<TermRef> &from,
                            const std::vector<std::set<TermRef>> &to_cuts) {
            DyadicDistance worst = DyadicDistance::zero();
            for (TermRef t : from) {
                int agree = 0;
                while (agree < K &&
                       to_cuts[static_cast<size_t>(agree) + 1].count(trees.truncate(t, agree + 1)))
                    ++agree;
                if (agree < K)
                    worst = max(worst, DyadicDistance::two_pow_neg(agree));
            }
            return worst;
        };
        value = max(directed(left, right_cuts), directed(right, left_cuts));
    } else {
        // sup over all pairs: nonzero as soon as any two truncations differ
        int d = 0;
        while (d < K) {
            std::set<TermRef> all = left_cuts[static_cast<size_t>(d) + 1];
            all.insert(right_cuts[static_cast<size_t>(d) + 1].begin(),
                       right_cuts[static_cast<size_t>(d) + 1].end());
            if (all.size() > 1)
                break;
            ++d;
        }
        if (d < K)
            value = DyadicDistance::two_pow_neg(d);
    }

    if (!value.is_zero() && value.exponent() < K)
        return exact_estimate(value);
    // Every slice extremum at or below 2^-K only witnesses agreement to the
    // horizon; disagreement beyond it is invisible, so report the bracket.
    DyadicDistance upper = DyadicDistance::two_pow_neg(K);
    DyadicDistance lower = hausdorff_lift ? DyadicDistance::zero() : value;
    if (upper < lower)
        lower = upper;
    return {lower, upper, false};
}

} // namespace

std::optional<int> implementation_agreement_depth(TermRef a, TermRef b, TermArena &arena) {
    ImplementationTrees trees(arena);
    return trees.agreement_depth(trees.canonical(a), trees.canonical(b));
}

std::vector<TermRef> enumerate_bounded_implementations(const PointedSystem &p, int K,
                                                       TermArena &arena, size_t budget) {
    require_modal(p.system, "enumerate_bounded_implementations");
    if (K < 0)
        throw ValidationError("depth bound must be non-negative");
    ImplementationTrees trees(arena);
    return bounded_slice(p, K, arena, trees, budget);
}

int slice_agreement_depth(const PointedSystem &p, const PointedSystem &q, int K, size_t budget) {
    require_same_alphabet(p.system, q.system);
    require_modal(p.system, "slice_agreement_depth");
    require_modal(q.system, "slice_agreement_depth");
    TermArena arena;
    ImplementationTrees trees(arena);
    auto left = bounded_slice(p, K, arena, trees, budget);
    auto right = bounded_slice(q, K, arena, trees, budget);
    int best = 0; // depth-0 truncations are all the deadlock
    while (best < K) {
        std::set<TermRef> cuts;
        for (TermRef t : left)
            cuts.insert(trees.truncate(t, best + 1));
        bool shared = false;
        for (TermRef t : right)
            if (cuts.count(trees.truncate(t, best + 1))) {
                shared = true;
                break;
            }
        if (!shared)
            break;
        ++best;
    }
    return best;
}

IntervalEstimate c2_bounded(const PointedSystem &p, const PointedSystem &q, int K, size_t budget) {
    return bounded_estimate(p, q, K, budget, false);
}

IntervalEstimate hausdorff_bounded(const PointedSystem &p, const PointedSystem &q, int K,
                                   size_t budget) {
    return bounded_estimate(p, q, K, budget, true);
}

} // namespace mtskit
