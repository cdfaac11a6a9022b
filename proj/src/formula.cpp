#include "mtskit/formula.hpp"

#include "mtskit/errors.hpp"

#include <algorithm>
#include <set>

namespace mtskit {

FormulaArena::FormulaArena() = default;

FormulaRef FormulaArena::intern(Formula node) {
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
    FormulaRef ref = &nodes_.back();
    index_.emplace(std::move(key), ref);
    return ref;
}

FormulaRef FormulaArena::tt() {
    Formula node;
    node.kind_ = FormulaKind::tt;
    return intern(node);
}

FormulaRef FormulaArena::negation(FormulaRef f) {
    Formula node;
    node.kind_ = FormulaKind::negation;
    node.left_ = f;
    node.modal_depth_ = f->modal_depth();
    return intern(node);
}

FormulaRef FormulaArena::diamond(const std::string &event, FormulaRef f) {
    Formula node;
    node.kind_ = FormulaKind::diamond;
    node.event_ = event;
    node.left_ = f;
    node.modal_depth_ = f->modal_depth() + 1;
    return intern(node);
}

FormulaRef FormulaArena::conjunction(FormulaRef left, FormulaRef right) {
    Formula node;
    node.kind_ = FormulaKind::conjunction;
    node.left_ = left;
    node.right_ = right;
    node.modal_depth_ = std::max(left->modal_depth(), right->modal_depth());
    return intern(node);
}

FormulaRef FormulaArena::conjoin(std::span<const FormulaRef> parts) {
    if (parts.empty())
        return tt();
    FormulaRef acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
        acc = conjunction(acc, parts[i]);
    return acc;
}

FormulaRef FormulaArena::disjoin(std::span<const FormulaRef> parts) {
    if (parts.empty())
        return ff();
    FormulaRef acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
        acc = disjunction(acc, parts[i]);
    return acc;
}

std::vector<std::string> unknown_events(FormulaRef formula, const EventAlphabet &alphabet) {
    std::set<std::string> missing;
    std::vector<FormulaRef> stack{formula};
    std::set<FormulaRef> seen;
    while (!stack.empty()) {
        FormulaRef f = stack.back();
        stack.pop_back();
        if (!seen.insert(f).second)
            continue;
        if (f->kind() == FormulaKind::diamond && !alphabet.contains(f->event()))
            missing.insert(f->event());
        if (f->left())
            stack.push_back(f->left());
        if (f->right())
            stack.push_back(f->right());
    }
    return {missing.begin(), missing.end()};
}

namespace {

class Checker {
public:
    explicit Checker(const MixedSystem &sys) : sys_(sys) {}

    bool run(int state, FormulaRef f, Mode mode) {
        const uint64_t key = (static_cast<uint64_t>(f->id()) << 21) |
                             (static_cast<uint64_t>(state) << 1) |
                             (mode == Mode::a ? 0u : 1u);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        bool value = evaluate(state, f, mode);
        memo_.emplace(key, value);
        return value;
    }

private:
    bool evaluate(int state, FormulaRef f, Mode mode) {
        switch (f->kind()) {
        case FormulaKind::tt:
            return true;
        case FormulaKind::negation:
            return !run(state, f->left(), dual(mode));
        case FormulaKind::diamond: {
            int event = sys_.alphabet().index_of(f->event());
            if (event < 0)
                throw ValidationError("unknown event '" + f->event() + "' in formula");
            auto succ = mode == Mode::a ? sys_.succ_a(state, event) : sys_.succ_c(state, event);
            for (int next : succ)
                if (run(next, f->left(), mode))
                    return true;
            return false;
        }
        case FormulaKind::conjunction:
            return run(state, f->left(), mode) && run(state, f->right(), mode);
        }
        throw InternalError("unreachable formula kind");
    }

    const MixedSystem &sys_;
    std::unordered_map<uint64_t, bool> memo_;
};

} // namespace

bool check(const PointedSystem &p, FormulaRef formula, Mode mode) {
    auto missing = unknown_events(formula, p.system.alphabet());
    if (!missing.empty()) {
        std::vector<std::string> problems;
        for (const auto &event : missing)
            problems.push_back("unknown event '" + event + "' in formula");
        throw ValidationError(problems);
    }
    Checker checker(p.system);
    return checker.run(p.init, formula, mode);
}

Verdict3 check3(const PointedSystem &p, FormulaRef formula) {
    if (check(p, formula, Mode::a))
        return Verdict3::yes;
    if (!check(p, formula, Mode::c))
        return Verdict3::no;
    return Verdict3::unknown;
}

} // namespace mtskit
