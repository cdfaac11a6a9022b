#include "mtskit/system.hpp"

#include "mtskit/errors.hpp"

#include <algorithm>
#include <set>

namespace mtskit {

namespace {

std::string triple_text(const MixedSystem &sys, const Transition &t) {
    return "(" + sys.state_name(t.src) + ", " + sys.alphabet().name(t.event) + ", " +
           sys.state_name(t.dst) + ")";
}

void sort_unique(std::vector<Transition> &transitions) {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

} // namespace

MixedSystem::MixedSystem(EventAlphabet alphabet, std::vector<std::string> states,
                         std::vector<Transition> asserted, std::vector<Transition> consistent,
                         SystemKind kind)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), r_a_(std::move(asserted)),
      r_c_(std::move(consistent)), kind_(kind) {
    std::vector<std::string> problems;
    if (states_.empty())
        problems.push_back("system must declare at least one state");
    for (size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].empty())
            problems.push_back("empty state name");
        else if (state_index_.count(states_[i]))
            problems.push_back("duplicate state '" + states_[i] + "'");
        else
            state_index_.emplace(states_[i], static_cast<int>(i));
    }
    sort_unique(r_a_);
    sort_unique(r_c_);
    for (const auto *rel : {&r_a_, &r_c_})
        for (const Transition &t : *rel) {
            if (t.src < 0 || t.src >= state_count() || t.dst < 0 || t.dst >= state_count())
                problems.push_back("transition endpoint out of range");
            if (t.event < 0 || t.event >= alphabet_.size())
                problems.push_back("transition event out of range");
        }
    if (!problems.empty())
        throw ValidationError(problems);
    build_indices();
}

void MixedSystem::build_indices() {
    modal_ = std::includes(r_c_.begin(), r_c_.end(), r_a_.begin(), r_a_.end());
    const size_t slots = static_cast<size_t>(state_count()) * static_cast<size_t>(alphabet_.size());
    succ_a_.assign(slots, {});
    succ_c_.assign(slots, {});
    for (const Transition &t : r_a_)
        succ_a_[static_cast<size_t>(t.src) * alphabet_.size() + t.event].push_back(t.dst);
    for (const Transition &t : r_c_)
        succ_c_[static_cast<size_t>(t.src) * alphabet_.size() + t.event].push_back(t.dst);
}

int MixedSystem::state_index(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    return it == state_index_.end() ? -1 : it->second;
}

bool MixedSystem::has_a(int src, int event, int dst) const {
    return std::binary_search(r_a_.begin(), r_a_.end(), Transition{src, event, dst});
}

bool MixedSystem::has_c(int src, int event, int dst) const {
    return std::binary_search(r_c_.begin(), r_c_.end(), Transition{src, event, dst});
}

std::span<const int> MixedSystem::succ_a(int state, int event) const {
    return succ_a_[static_cast<size_t>(state) * alphabet_.size() + event];
}

std::span<const int> MixedSystem::succ_c(int state, int event) const {
    return succ_c_[static_cast<size_t>(state) * alphabet_.size() + event];
}

MixedSystem MixedSystem::with_alphabet(EventAlphabet wider) const {
    for (const auto &event : alphabet_.names())
        if (wider.index_of(event) < 0)
            throw ValidationError("widened alphabet drops event '" + event + "'");
    auto remap = [&](const std::vector<Transition> &rel) {
        std::vector<Transition> out;
        out.reserve(rel.size());
        for (const Transition &t : rel)
            out.push_back({t.src, wider.index_of(alphabet_.name(t.event)), t.dst});
        return out;
    };
    return MixedSystem(std::move(wider), states_, remap(r_a_), remap(r_c_), kind_);
}

MixedSystem MixedSystem::from_data(const SystemData &data) {
    auto problems = validate(data, false);
    if (!problems.empty())
        throw ValidationError(problems);

    EventAlphabet alphabet(data.alphabet);
    std::vector<std::string> states;
    std::unordered_map<std::string, int> index;
    auto declare = [&](const std::string &name) {
        if (!index.count(name)) {
            index.emplace(name, static_cast<int>(states.size()));
            states.push_back(name);
        }
        return index[name];
    };
    declare(data.init);
    std::vector<Transition> r_a, r_c;
    for (const auto &line : data.transitions) {
        Transition t{declare(line.src), alphabet.index_of(line.event), declare(line.dst)};
        if (data.kind == SystemKind::modal) {
            if (line.mode == "must") {
                r_a.push_back(t);
                r_c.push_back(t);
            } else {
                r_c.push_back(t);
            }
        } else {
            if (line.mode == "a")
                r_a.push_back(t);
            else
                r_c.push_back(t);
        }
    }
    return MixedSystem(std::move(alphabet), std::move(states), std::move(r_a), std::move(r_c),
                       data.kind);
}

PointedSystem pointed(MixedSystem system, std::string_view init_state) {
    int init = system.state_index(init_state);
    if (init < 0)
        throw ValidationError("unknown state '" + std::string(init_state) + "'");
    return PointedSystem{std::move(system), init};
}

PointedSystem repointed(const PointedSystem &p, std::string_view init_state) {
    return pointed(p.system, init_state);
}

std::vector<std::string> validate(const SystemData &data, bool expect_modal) {
    std::vector<std::string> problems;
    if (data.alphabet.empty())
        problems.push_back("alphabet must be nonempty");
    std::set<std::string> events;
    for (const auto &event : data.alphabet) {
        if (!EventAlphabet::valid_event_name(event))
            problems.push_back("invalid event name '" + event + "'");
        if (!events.insert(event).second)
            problems.push_back("duplicate event '" + event + "'");
    }
    if (data.init.empty())
        problems.push_back("missing initial state");
    const bool modal_modes = data.kind == SystemKind::modal;
    std::set<std::tuple<std::string, std::string, std::string>> a_triples, c_triples;
    for (const auto &line : data.transitions) {
        if (modal_modes ? (line.mode != "must" && line.mode != "may")
                        : (line.mode != "a" && line.mode != "c"))
            problems.push_back("unknown transition mode '" + line.mode + "'");
        if (!events.count(line.event))
            problems.push_back("unknown event '" + line.event + "'");
        auto triple = std::make_tuple(line.src, line.event, line.dst);
        if (line.mode == "must" || line.mode == "a")
            a_triples.insert(triple);
        if (line.mode != "a")
            c_triples.insert(triple); // must, may and c all land in r_c
    }
    if (expect_modal)
        for (const auto &[src, event, dst] : a_triples)
            if (!c_triples.count({src, event, dst}))
                problems.push_back("modal condition violated: (" + src + ", " + event + ", " + dst +
                                   ") is asserted but not consistent");
    return problems;
}

std::vector<std::string> validate(const MixedSystem &system, bool expect_modal) {
    std::vector<std::string> problems;
    // Construction already guarantees range and set invariants; re-check so a
    // corrupted or hand-rolled value cannot slip through.
    for (const auto *rel : {&system.r_a(), &system.r_c()})
        for (const Transition &t : *rel) {
            if (t.src < 0 || t.src >= system.state_count() || t.dst < 0 ||
                t.dst >= system.state_count())
                problems.push_back("transition endpoint out of range");
            if (t.event < 0 || t.event >= system.alphabet().size())
                problems.push_back("transition event out of range");
        }
    if (expect_modal)
        for (const Transition &t : system.r_a())
            if (!system.has_c(t.src, t.event, t.dst))
                problems.push_back("modal condition violated: " + triple_text(system, t) +
                                   " is asserted but not consistent");
    return problems;
}

std::vector<int> reachable(const PointedSystem &p) {
    const MixedSystem &sys = p.system;
    std::vector<char> seen(static_cast<size_t>(sys.state_count()), 0);
    std::vector<int> stack{p.init};
    seen[static_cast<size_t>(p.init)] = 1;
    while (!stack.empty()) {
        int state = stack.back();
        stack.pop_back();
        auto visit = [&](const std::vector<Transition> &rel) {
            for (const Transition &t : rel)
                if (t.src == state && !seen[static_cast<size_t>(t.dst)]) {
                    seen[static_cast<size_t>(t.dst)] = 1;
                    stack.push_back(t.dst);
                }
        };
        visit(sys.r_a()); // r_a may exceed r_c on mixed systems
        visit(sys.r_c());
    }
    std::vector<int> result;
    for (int s = 0; s < sys.state_count(); ++s)
        if (seen[static_cast<size_t>(s)])
            result.push_back(s);
    return result;
}

PointedSystem must_projection(const PointedSystem &p) {
    require_modal(p.system, "must_projection");
    MixedSystem projected(p.system.alphabet(), p.system.state_names(), p.system.r_a(),
                          p.system.r_a(), SystemKind::modal);
    return PointedSystem{std::move(projected), p.init};
}

DisjointUnion disjoint_union(const MixedSystem &left, const MixedSystem &right) {
    require_same_alphabet(left, right);
    std::vector<std::string> states;
    std::vector<int> left_map, right_map;
    for (int s = 0; s < left.state_count(); ++s) {
        left_map.push_back(static_cast<int>(states.size()));
        states.push_back("0:" + left.state_name(s));
    }
    for (int s = 0; s < right.state_count(); ++s) {
        right_map.push_back(static_cast<int>(states.size()));
        states.push_back("1:" + right.state_name(s));
    }
    auto relabel = [](const std::vector<Transition> &rel, const std::vector<int> &map,
                      std::vector<Transition> &out) {
        for (const Transition &t : rel)
            out.push_back({map[static_cast<size_t>(t.src)], t.event, map[static_cast<size_t>(t.dst)]});
    };
    std::vector<Transition> r_a, r_c;
    relabel(left.r_a(), left_map, r_a);
    relabel(right.r_a(), right_map, r_a);
    relabel(left.r_c(), left_map, r_c);
    relabel(right.r_c(), right_map, r_c);
    SystemKind kind = (left.declared_kind() == SystemKind::modal &&
                       right.declared_kind() == SystemKind::modal)
                          ? SystemKind::modal
                          : SystemKind::mixed;
    MixedSystem merged(left.alphabet(), std::move(states), std::move(r_a), std::move(r_c), kind);
    return DisjointUnion{std::move(merged), std::move(left_map), std::move(right_map)};
}

void require_same_alphabet(const MixedSystem &left, const MixedSystem &right) {
    if (left.alphabet() != right.alphabet())
        throw ValidationError(left.alphabet().describe_mismatch(right.alphabet()));
}

void require_modal(const MixedSystem &system, std::string_view operation) {
    if (!system.is_modal())
        throw ValidationError(std::string(operation) + " requires a modal system (r_a subset-of r_c)");
}

} // namespace mtskit
