#include "mtskit/nu.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/refinement.hpp"

#include <algorithm>
#include <map>

namespace mtskit {

namespace {

NuRef make(NuFormula node) { return std::make_shared<const NuFormula>(std::move(node)); }

} // namespace

NuRef nu_tt() { return make({NuKind::tt, 0, "", {}}); }
NuRef nu_ff() { return make({NuKind::ff, 0, "", {}}); }
NuRef nu_var(int var) { return make({NuKind::variable, var, "", {}}); }

NuRef nu_and(std::vector<NuRef> children) {
    if (children.empty())
        return nu_tt();
    if (children.size() == 1)
        return children[0];
    return make({NuKind::conjunction, 0, "", std::move(children)});
}

NuRef nu_or(std::vector<NuRef> children) {
    if (children.empty())
        return nu_ff();
    if (children.size() == 1)
        return children[0];
    return make({NuKind::disjunction, 0, "", std::move(children)});
}

NuRef nu_diamond(const std::string &event, NuRef body) {
    return make({NuKind::diamond, 0, event, {std::move(body)}});
}

NuRef nu_box(const std::string &event, NuRef body) {
    return make({NuKind::box, 0, event, {std::move(body)}});
}

NuRef nu_bind(int var, NuRef body) { return make({NuKind::nu, var, "", {std::move(body)}}); }

bool nu_equal(const NuRef &a, const NuRef &b) {
    if (a.get() == b.get())
        return true;
    if (a->kind != b->kind || a->var != b->var || a->event != b->event ||
        a->children.size() != b->children.size())
        return false;
    for (size_t i = 0; i < a->children.size(); ++i)
        if (!nu_equal(a->children[i], b->children[i]))
            return false;
    return true;
}

namespace {

NuRef characteristic_state(const MixedSystem &sys, int state, std::map<int, int> &bound,
                           int &next_var) {
    auto it = bound.find(state);
    if (it != bound.end())
        return nu_var(it->second);

    const int var = next_var++;
    bound.emplace(state, var);
    std::vector<NuRef> parts;
    for (const Transition &t : sys.r_a())
        if (t.src == state)
            parts.push_back(nu_diamond(sys.alphabet().name(t.event),
                                       characteristic_state(sys, t.dst, bound, next_var)));
    for (int e = 0; e < sys.alphabet().size(); ++e) {
        std::vector<NuRef> branches;
        for (int dst : sys.succ_c(state, e))
            branches.push_back(characteristic_state(sys, dst, bound, next_var));
        parts.push_back(nu_box(sys.alphabet().name(e), nu_or(std::move(branches))));
    }
    bound.erase(state);
    return nu_bind(var, nu_and(std::move(parts)));
}

} // namespace

NuRef characteristic_nu(const PointedSystem &p) {
    require_modal(p.system, "characteristic_nu");
    std::map<int, int> bound;
    int next_var = 1;
    return characteristic_state(p.system, p.init, bound, next_var);
}

namespace {

using StateSet = std::vector<char>;

class NuEvaluator {
public:
    explicit NuEvaluator(const MixedSystem &sys) : sys_(sys) {}

    StateSet eval(const NuRef &f) {
        const size_t n = static_cast<size_t>(sys_.state_count());
        switch (f->kind) {
        case NuKind::tt:
            return StateSet(n, 1);
        case NuKind::ff:
            return StateSet(n, 0);
        case NuKind::variable: {
            auto it = env_.find(f->var);
            if (it == env_.end())
                throw ValidationError("unbound variable X" + std::to_string(f->var));
            return it->second;
        }
        case NuKind::conjunction: {
            StateSet acc(n, 1);
            for (const auto &child : f->children) {
                StateSet value = eval(child);
                for (size_t i = 0; i < n; ++i)
                    acc[i] = acc[i] && value[i];
            }
            return acc;
        }
        case NuKind::disjunction: {
            StateSet acc(n, 0);
            for (const auto &child : f->children) {
                StateSet value = eval(child);
                for (size_t i = 0; i < n; ++i)
                    acc[i] = acc[i] || value[i];
            }
            return acc;
        }
        case NuKind::diamond: {
            StateSet body = eval(f->children[0]);
            StateSet acc(n, 0);
            int event = event_index(f->event);
            for (size_t s = 0; s < n; ++s)
                for (int dst : sys_.succ_a(static_cast<int>(s), event))
                    if (body[static_cast<size_t>(dst)]) {
                        acc[s] = 1;
                        break;
                    }
            return acc;
        }
        case NuKind::box: {
            StateSet body = eval(f->children[0]);
            StateSet acc(n, 1);
            int event = event_index(f->event);
            for (size_t s = 0; s < n; ++s)
                for (int dst : sys_.succ_c(static_cast<int>(s), event))
                    if (!body[static_cast<size_t>(dst)]) {
                        acc[s] = 0;
                        break;
                    }
            return acc;
        }
        case NuKind::nu: {
            if (env_.count(f->var))
                throw ValidationError("variable X" + std::to_string(f->var) + " bound twice");
            StateSet current(n, 1);
            for (;;) {
                env_[f->var] = current;
                StateSet next = eval(f->children[0]);
                if (next == current)
                    break;
                current = std::move(next);
            }
            env_.erase(f->var);
            return current;
        }
        }
        throw InternalError("unreachable nu-formula kind");
    }

private:
    int event_index(const std::string &event) const {
        int index = sys_.alphabet().index_of(event);
        if (index < 0)
            throw ValidationError("unknown event '" + event + "' in formula");
        return index;
    }

    const MixedSystem &sys_;
    std::map<int, StateSet> env_;
};

} // namespace

bool check_nu(const PointedSystem &implementation, const NuRef &formula) {
    if (!is_implementation(implementation))
        throw ValidationError("check_nu requires an implementation (no reachable may-transitions)");
    NuEvaluator evaluator(implementation.system);
    StateSet result = evaluator.eval(formula);
    return result[static_cast<size_t>(implementation.init)] != 0;
}

} // namespace mtskit
