#pragma once

#include "mtskit/system.hpp"
#include "mtskit/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtskit {

/// A distance that is exactly 0 or exactly 2^(-n): the only values the
/// refinement ultra-metric takes. Total order matches the rationals.
class DyadicDistance {
public:
    static DyadicDistance zero() { return DyadicDistance(true, 0); }
    static DyadicDistance two_pow_neg(int n);
    /// 0 for nullopt (full agreement), else 2^-depth.
    static DyadicDistance from_agreement_depth(std::optional<int> depth);

    bool is_zero() const { return zero_; }
    /// The n of 2^-n; only for nonzero distances.
    int exponent() const;

    bool operator==(const DyadicDistance &) const = default;
    bool operator<(const DyadicDistance &other) const;
    bool operator<=(const DyadicDistance &other) const { return *this < other || *this == other; }

    std::string str() const; // "0" or "2^-n"

private:
    DyadicDistance(bool zero, int n) : zero_(zero), n_(n) {}
    bool zero_;
    int n_;
};

DyadicDistance max(DyadicDistance a, DyadicDistance b);
DyadicDistance min(DyadicDistance a, DyadicDistance b);

/// Result of a depth-bounded computation: either pinned exactly or bracketed.
struct IntervalEstimate {
    DyadicDistance lower;
    DyadicDistance upper;
    bool exact;
};

/// The refinement ultra-metric: 0 when refinement-equivalent, else
/// 2^-(equivalence depth). Exact; finite chains stabilize.
DyadicDistance distance(const PointedSystem &p, const PointedSystem &q);

/// Optimistic consistency measure: 0 iff a common refinement exists, else
/// 2^-n for the largest k at which the two systems are k-consistent.
/// Requires modal systems over one alphabet.
DyadicDistance c1(const PointedSystem &p, const PointedSystem &q);

/// Depth-K truncations of the implementations of p: every resolution of the
/// may-choices in unfold(p, K), stubs cut to deadlock, deduplicated up to
/// refinement equivalence, in enumeration order. Throws BudgetError if more
/// than `budget` distinct implementations arise.
std::vector<TermRef> enumerate_bounded_implementations(const PointedSystem &p, int K,
                                                       TermArena &arena, size_t budget = 10000);

/// Pessimistic measure over the bounded implementation enumeration: exact
/// when the extremal disagreement happens strictly above 2^-K or when both
/// sides are implementations (singleton sets); an interval otherwise.
IntervalEstimate c2_bounded(const PointedSystem &p, const PointedSystem &q, int K,
                            size_t budget = 10000);

/// Symmetric sup-inf lift over the same enumeration, with the same exactness
/// discipline as c2_bounded.
IntervalEstimate hausdorff_bounded(const PointedSystem &p, const PointedSystem &q, int K,
                                   size_t budget = 10000);

/// Agreement depth between two implementation terms (no bot, no may-prefix):
/// nullopt when bisimilar, else the largest k at which they are k-bisimilar.
std::optional<int> implementation_agreement_depth(TermRef a, TermRef b, TermArena &arena);

/// Largest d <= K at which some depth-K implementation of p agrees with one
/// of q to depth d: the slice counterpart of bounded consistency, 2^-d being
/// the infimum of horizon-truncated distances over the two slices.
int slice_agreement_depth(const PointedSystem &p, const PointedSystem &q, int K,
                          size_t budget = 10000);

} // namespace mtskit
