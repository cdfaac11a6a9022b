#pragma once

#include "mtskit/system.hpp"

#include <deque>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mtskit {

/// Judgment mode: 'a' asserted, 'c' consistent. Negation flips the mode.
enum class Mode { a, c };

inline Mode dual(Mode m) { return m == Mode::a ? Mode::c : Mode::a; }

/// Three-valued verdict derived from the two judgments.
enum class Verdict3 { yes, no, unknown };

enum class FormulaKind : unsigned char { tt, negation, diamond, conjunction };

/// One Hennessy-Milner logic node. Nodes are owned and interned by a
/// FormulaArena, so structurally equal formulas are pointer-equal within one
/// arena; `id` is the deterministic interning index used as memo key.
class Formula {
public:
    FormulaKind kind() const { return kind_; }
    const std::string &event() const { return event_; }
    const Formula *left() const { return left_; }
    const Formula *right() const { return right_; }
    int modal_depth() const { return modal_depth_; }
    int id() const { return id_; }

private:
    friend class FormulaArena;
    FormulaKind kind_ = FormulaKind::tt;
    std::string event_;
    const Formula *left_ = nullptr;
    const Formula *right_ = nullptr;
    int modal_depth_ = 0;
    int id_ = 0;
};

using FormulaRef = const Formula *;

/// Hash-consing pool for formulas. Not thread-safe; use one arena per thread
/// of construction. Checking already-built formulas is pure.
class FormulaArena {
public:
    FormulaArena();

    FormulaRef tt();
    FormulaRef negation(FormulaRef f);
    FormulaRef diamond(const std::string &event, FormulaRef f);
    FormulaRef conjunction(FormulaRef left, FormulaRef right);

    // derived constructors
    FormulaRef ff() { return negation(tt()); }
    FormulaRef box(const std::string &event, FormulaRef f) {
        return negation(diamond(event, negation(f)));
    }
    FormulaRef disjunction(FormulaRef left, FormulaRef right) {
        return negation(conjunction(negation(left), negation(right)));
    }
    /// Left-assoc fold; empty conjunction is tt, empty disjunction is ff.
    FormulaRef conjoin(std::span<const FormulaRef> parts);
    FormulaRef disjoin(std::span<const FormulaRef> parts);

    size_t size() const { return nodes_.size(); }

private:
    FormulaRef intern(Formula node);

    std::deque<Formula> nodes_;
    std::unordered_map<std::string, FormulaRef> index_;
};

inline int modal_depth(FormulaRef f) { return f->modal_depth(); }

/// Fig.-2-style evaluation of the judgment (system, state) |=^mode formula,
/// memoized per (state, subformula, mode). Throws ValidationError if the
/// formula mentions an event outside the system's alphabet.
bool check(const PointedSystem &p, FormulaRef formula, Mode mode);

/// Both judgments folded into one verdict: yes if asserted, no if not even
/// consistent, unknown otherwise.
Verdict3 check3(const PointedSystem &p, FormulaRef formula);

/// Events mentioned by the formula that are missing from the alphabet.
std::vector<std::string> unknown_events(FormulaRef formula, const EventAlphabet &alphabet);

} // namespace mtskit
