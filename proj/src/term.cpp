#include "mtskit/term.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mtskit {

TermArena::TermArena() = default;

TermRef TermArena::intern(Term node) {
    std::string key;
    key += static_cast<char>('0' + static_cast<int>(node.kind_));
    key += node.event_;
    key += '|';
    key += std::to_string(node.left_ ? node.left_->id() : -1);
    key += '|';
    key += std::to_string(node.right_ ? node.right_->id() : -1);
    auto it = index_.find(key);
    if (it != index_.end())
        return it->second;
    node.id_ = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    TermRef ref = &nodes_.back();
    index_.emplace(std::move(key), ref);
    return ref;
}

TermRef TermArena::nil() {
    Term node;
    node.kind_ = TermKind::nil;
    return intern(node);
}

TermRef TermArena::bot() {
    Term node;
    node.kind_ = TermKind::bot;
    return intern(node);
}

TermRef TermArena::must_prefix(const std::string &event, TermRef body) {
    Term node;
    node.kind_ = TermKind::must_prefix;
    node.event_ = event;
    node.left_ = body;
    node.modal_depth_ = body->modal_depth() + 1;
    node.size_ = body->size() + 1;
    return intern(node);
}

TermRef TermArena::may_prefix(const std::string &event, TermRef body) {
    Term node;
    node.kind_ = TermKind::may_prefix;
    node.event_ = event;
    node.left_ = body;
    node.modal_depth_ = body->modal_depth() + 1;
    node.size_ = body->size() + 1;
    return intern(node);
}

TermRef TermArena::sum(TermRef left, TermRef right) {
    for (TermRef part : {left, right})
        if (part->kind() == TermKind::nil || part->kind() == TermKind::bot)
            throw ValidationError("no summand of a sum may be 0 or bot");
    Term node;
    node.kind_ = TermKind::sum;
    node.left_ = left;
    node.right_ = right;
    node.modal_depth_ = std::max(left->modal_depth(), right->modal_depth());
    node.size_ = left->size() + right->size() + 1;
    return intern(node);
}

TermRef TermArena::sum_all(const std::vector<TermRef> &parts) {
    if (parts.empty())
        return nil();
    TermRef acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
        acc = sum(acc, parts[i]);
    return acc;
}

std::vector<TermTransition> sos_transitions(TermRef t) {
    switch (t->kind()) {
    case TermKind::nil:
    case TermKind::bot:
        // bot's stub loops depend on the alphabet; alphabet-aware callers
        // contribute them (operational_semantics) or bypass them (phi_bot = tt).
        return {};
    case TermKind::must_prefix:
        return {{t->event(), true, t->left()}};
    case TermKind::may_prefix:
        return {{t->event(), false, t->left()}};
    case TermKind::sum: {
        auto left = sos_transitions(t->left());
        auto right = sos_transitions(t->right());
        left.insert(left.end(), right.begin(), right.end());
        return left;
    }
    }
    throw InternalError("unreachable term kind");
}

std::vector<std::string> unknown_events(TermRef t, const EventAlphabet &alphabet) {
    std::set<std::string> missing;
    std::set<TermRef> seen;
    std::vector<TermRef> stack{t};
    while (!stack.empty()) {
        TermRef cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second)
            continue;
        if ((cur->kind() == TermKind::must_prefix || cur->kind() == TermKind::may_prefix) &&
            !alphabet.contains(cur->event()))
            missing.insert(cur->event());
        if (cur->left())
            stack.push_back(cur->left());
        if (cur->right())
            stack.push_back(cur->right());
    }
    return {missing.begin(), missing.end()};
}

namespace {

void require_known_events(TermRef t, const EventAlphabet &alphabet) {
    auto missing = unknown_events(t, alphabet);
    if (!missing.empty()) {
        std::vector<std::string> problems;
        for (const auto &event : missing)
            problems.push_back("unknown event '" + event + "' in term");
        throw ValidationError(problems);
    }
}

} // namespace

PointedSystem operational_semantics(TermRef t, const EventAlphabet &alphabet) {
    require_known_events(t, alphabet);

    std::vector<std::string> states;
    std::vector<Transition> r_a, r_c;
    int bot_state = -1;
    auto fresh_state = [&](const std::string &name) {
        states.push_back(name);
        return static_cast<int>(states.size()) - 1;
    };
    auto stub = [&]() {
        if (bot_state < 0) {
            bot_state = fresh_state("bot");
            for (int e = 0; e < alphabet.size(); ++e)
                r_c.push_back({bot_state, e, bot_state});
        }
        return bot_state;
    };
    // Each subterm occurrence is its own state; interned sharing in the term
    // DAG does not merge states.
    auto expand = [&](auto &&self, TermRef term) -> int {
        if (term->kind() == TermKind::bot)
            return stub();
        int state = fresh_state("s" + std::to_string(states.size()));
        for (const TermTransition &step : sos_transitions(term)) {
            int target = self(self, step.target);
            Transition edge{state, alphabet.index_of(step.event), target};
            r_c.push_back(edge);
            if (step.must)
                r_a.push_back(edge);
        }
        return state;
    };
    int init = expand(expand, t);
    MixedSystem sys(alphabet, std::move(states), std::move(r_a), std::move(r_c),
                    SystemKind::modal);
    return PointedSystem{std::move(sys), init};
}

namespace {

FormulaRef char_formula_memo(TermRef t, const EventAlphabet &alphabet, FormulaArena &arena,
                             std::map<TermRef, FormulaRef> &memo) {
    auto it = memo.find(t);
    if (it != memo.end())
        return it->second;

    auto no_other_events = [&](const std::string &event, std::vector<FormulaRef> &parts) {
        for (const auto &beta : alphabet.names())
            if (beta != event)
                parts.push_back(arena.negation(arena.diamond(beta, arena.tt())));
    };

    FormulaRef result = nullptr;
    switch (t->kind()) {
    case TermKind::nil: {
        std::vector<FormulaRef> parts;
        for (const auto &alpha : alphabet.names())
            parts.push_back(arena.negation(arena.diamond(alpha, arena.tt())));
        result = arena.conjoin(parts);
        break;
    }
    case TermKind::bot:
        result = arena.tt();
        break;
    case TermKind::must_prefix: {
        FormulaRef body = char_formula_memo(t->left(), alphabet, arena, memo);
        std::vector<FormulaRef> parts{arena.diamond(t->event(), body),
                                      arena.box(t->event(), body)};
        no_other_events(t->event(), parts);
        result = arena.conjoin(parts);
        break;
    }
    case TermKind::may_prefix: {
        FormulaRef body = char_formula_memo(t->left(), alphabet, arena, memo);
        std::vector<FormulaRef> parts{arena.box(t->event(), body)};
        no_other_events(t->event(), parts);
        result = arena.conjoin(parts);
        break;
    }
    case TermKind::sum: {
        auto transitions = sos_transitions(t);
        std::vector<FormulaRef> parts;
        for (const TermTransition &step : transitions)
            if (step.must)
                parts.push_back(arena.diamond(
                    step.event, char_formula_memo(step.target, alphabet, arena, memo)));
        for (const auto &alpha : alphabet.names()) {
            std::vector<FormulaRef> branches;
            for (const TermTransition &step : transitions)
                if (step.event == alpha)
                    branches.push_back(char_formula_memo(step.target, alphabet, arena, memo));
            parts.push_back(arena.box(alpha, arena.disjoin(branches)));
        }
        result = arena.conjoin(parts);
        break;
    }
    }
    memo.emplace(t, result);
    return result;
}

} // namespace

FormulaRef char_formula(TermRef t, const EventAlphabet &alphabet, FormulaArena &arena) {
    require_known_events(t, alphabet);
    std::map<TermRef, FormulaRef> memo;
    return char_formula_memo(t, alphabet, arena, memo);
}

FormulaRef phi_probe(const std::vector<std::string> &trace, const std::string &event, TermRef t,
                     const EventAlphabet &alphabet, FormulaArena &arena) {
    if (!alphabet.contains(event))
        throw ValidationError("unknown event '" + event + "' in probe");
    for (const auto &step : trace)
        if (!alphabet.contains(step))
            throw ValidationError("unknown event '" + step + "' in probe trace");
    FormulaRef body = char_formula(t, alphabet, arena);
    FormulaRef dia = arena.diamond(event, body);
    FormulaRef core = arena.disjunction(dia, arena.negation(dia));
    for (auto it = trace.rbegin(); it != trace.rend(); ++it)
        core = arena.box(*it, core);
    return core;
}

TermRef unfold(const PointedSystem &p, int depth, TermArena &arena) {
    require_modal(p.system, "unfold");
    const MixedSystem &sys = p.system;
    // (state, remaining depth) pairs recur on cyclic systems; memoize so the
    // interned term stays polynomial even when the unfolded tree is not.
    std::map<std::pair<int, int>, TermRef> memo;
    auto has_c_successor = [&](int state) {
        for (int e = 0; e < sys.alphabet().size(); ++e)
            if (!sys.succ_c(state, e).empty())
                return true;
        return false;
    };
    auto build = [&](auto &&self, int state, int remaining) -> TermRef {
        auto key = std::make_pair(state, remaining);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        TermRef result;
        if (remaining == 0) {
            result = has_c_successor(state) ? arena.bot() : arena.nil();
        } else {
            std::vector<TermRef> parts;
            for (int e = 0; e < sys.alphabet().size(); ++e) {
                const std::string &event = sys.alphabet().name(e);
                for (int dst : sys.succ_a(state, e))
                    parts.push_back(arena.must_prefix(event, self(self, dst, remaining - 1)));
                for (int dst : sys.succ_c(state, e))
                    if (!sys.has_a(state, e, dst))
                        parts.push_back(arena.may_prefix(event, self(self, dst, remaining - 1)));
            }
            result = arena.sum_all(parts);
        }
        memo.emplace(key, result);
        return result;
    };
    return build(build, p.init, depth);
}

std::vector<TermRef> enumerate_terms(const EventAlphabet &alphabet, int max_depth, int max_width,
                                     TermArena &arena, size_t budget) {
    if (max_depth < 0 || max_width < 0)
        throw ValidationError("enumeration bounds must be non-negative");
    std::vector<TermRef> atoms{arena.nil(), arena.bot()};
    if (max_depth == 0)
        return atoms;

    // Prefixes of depth <= max_depth over bodies of depth <= max_depth - 1.
    std::vector<TermRef> bodies = enumerate_terms(alphabet, max_depth - 1, max_width, arena, budget);
    std::vector<TermRef> prefixes;
    for (const auto &event : alphabet.names())
        for (TermRef body : bodies) {
            prefixes.push_back(arena.must_prefix(event, body));
            prefixes.push_back(arena.may_prefix(event, body));
            if (prefixes.size() > budget)
                throw BudgetError("term enumeration exceeded budget");
        }

    std::vector<TermRef> result = atoms;
    // Non-decreasing index sequences give each summand multiset exactly once.
    std::vector<TermRef> chosen;
    auto combine = [&](auto &&self, size_t first) -> void {
        if (!chosen.empty()) {
            result.push_back(arena.sum_all(chosen));
            if (result.size() > budget)
                throw BudgetError("term enumeration exceeded budget");
        }
        if (static_cast<int>(chosen.size()) == max_width)
            return;
        for (size_t i = first; i < prefixes.size(); ++i) {
            chosen.push_back(prefixes[i]);
            self(self, i);
            chosen.pop_back();
        }
    };
    combine(combine, 0);

    std::sort(result.begin(), result.end(), [](TermRef a, TermRef b) {
        if (a->modal_depth() != b->modal_depth())
            return a->modal_depth() < b->modal_depth();
        if (a->size() != b->size())
            return a->size() < b->size();
        return print_term(a) < print_term(b);
    });
    return result;
}

} // namespace mtskit
