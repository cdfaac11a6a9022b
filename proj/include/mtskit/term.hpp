#pragma once

#include "mtskit/formula.hpp"
#include "mtskit/system.hpp"

#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

namespace mtskit {

enum class TermKind : unsigned char { nil, bot, must_prefix, may_prefix, sum };

/// One term of the process algebra: 0, bot, must/may prefix, binary sum.
/// Interned in a TermArena; structurally equal terms are pointer-equal.
class Term {
public:
    TermKind kind() const { return kind_; }
    const std::string &event() const { return event_; }
    const Term *left() const { return left_; }   // prefix body / left summand
    const Term *right() const { return right_; } // right summand
    int modal_depth() const { return modal_depth_; }
    int size() const { return size_; }
    int id() const { return id_; }

private:
    friend class TermArena;
    TermKind kind_ = TermKind::nil;
    std::string event_;
    const Term *left_ = nullptr;
    const Term *right_ = nullptr;
    int modal_depth_ = 0;
    int size_ = 1;
    int id_ = 0;
};

using TermRef = const Term *;

class TermArena {
public:
    TermArena();

    TermRef nil();
    TermRef bot();
    TermRef must_prefix(const std::string &event, TermRef body);
    TermRef may_prefix(const std::string &event, TermRef body);
    /// Throws ValidationError if a summand is 0 or bot (grammar side condition).
    TermRef sum(TermRef left, TermRef right);

    /// Left-assoc sum of a nonempty list; a single part is returned as is,
    /// an empty list as 0.
    TermRef sum_all(const std::vector<TermRef> &parts);

    size_t size() const { return nodes_.size(); }

private:
    TermRef intern(Term node);

    std::deque<Term> nodes_;
    std::unordered_map<std::string, TermRef> index_;
};

inline int term_modal_depth(TermRef t) { return t->modal_depth(); }

/// Top-level SOS transitions of a term: (event, must?, successor term).
struct TermTransition {
    std::string event;
    bool must;
    TermRef target;
};
std::vector<TermTransition> sos_transitions(TermRef t);

/// The pointed modal transition system defined by the SOS rules. Subterm
/// occurrences become distinct states except bot, which is one shared stub
/// state with a may self-loop for every alphabet event.
PointedSystem operational_semantics(TermRef t, const EventAlphabet &alphabet);

/// Characteristic formula phi_p: a system satisfies it under the asserted
/// judgment exactly when it refines the system of p.
FormulaRef char_formula(TermRef t, const EventAlphabet &alphabet, FormulaArena &arena);

/// [d1]...[dn](<event>phi_p | !<event>phi_p) — the maximality probes.
FormulaRef phi_probe(const std::vector<std::string> &trace, const std::string &event, TermRef t,
                     const EventAlphabet &alphabet, FormulaArena &arena);

/// Depth-m tree unfolding as a term: internal musts become must-prefixes,
/// mays become may-prefixes, depth-m leaves become bot when the state still
/// has consistent successors and 0 otherwise. Requires a modal system.
TermRef unfold(const PointedSystem &p, int depth, TermArena &arena);

/// All events a term mentions that are missing from the alphabet.
std::vector<std::string> unknown_events(TermRef t, const EventAlphabet &alphabet);

/// Deterministic enumeration of canonical terms up to the bounds, ordered by
/// (modal depth, size, print). Sums are kept in canonical summand order, so
/// each summand multiset appears once. Throws BudgetError past `budget`.
std::vector<TermRef> enumerate_terms(const EventAlphabet &alphabet, int max_depth, int max_width,
                                     TermArena &arena, size_t budget = 100000);

} // namespace mtskit
