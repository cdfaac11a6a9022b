#include "mtskit/testkit.hpp"

#include "mtskit/errors.hpp"
#include "mtskit/formula.hpp"
#include "mtskit/term.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace mtskit {

PointedSystem random_modal_system(const GenParams &params, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
    };
    const int state_count = pick(params.min_states, params.max_states);
    const int event_count = pick(params.min_events, params.max_events);

    static const char *pool[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    std::vector<std::string> events(pool, pool + event_count);
    std::vector<std::string> states;
    for (int s = 0; s < state_count; ++s)
        states.push_back("q" + std::to_string(s));

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Transition> r_a, r_c;
    for (int s = 0; s < state_count; ++s)
        for (int e = 0; e < event_count; ++e)
            for (int t = 0; t < state_count; ++t) {
                double roll = coin(rng);
                if (roll < params.must_density) {
                    r_a.push_back({s, e, t});
                    r_c.push_back({s, e, t});
                } else if (roll < params.must_density + params.may_density) {
                    r_c.push_back({s, e, t});
                }
            }
    PointedSystem full{MixedSystem(EventAlphabet(events), std::move(states), std::move(r_a),
                                   std::move(r_c), SystemKind::modal),
                       0};

    // reachable trim
    std::vector<int> keep = reachable(full);
    std::vector<int> position(static_cast<size_t>(full.system.state_count()), -1);
    std::vector<std::string> kept_names;
    for (size_t i = 0; i < keep.size(); ++i) {
        position[static_cast<size_t>(keep[i])] = static_cast<int>(i);
        kept_names.push_back(full.system.state_name(keep[i]));
    }
    auto restrict_to = [&](const std::vector<Transition> &rel) {
        std::vector<Transition> out;
        for (const Transition &t : rel)
            if (position[static_cast<size_t>(t.src)] >= 0 &&
                position[static_cast<size_t>(t.dst)] >= 0)
                out.push_back({position[static_cast<size_t>(t.src)], t.event,
                               position[static_cast<size_t>(t.dst)]});
        return out;
    };
    MixedSystem trimmed(full.system.alphabet(), std::move(kept_names),
                        restrict_to(full.system.r_a()), restrict_to(full.system.r_c()),
                        SystemKind::modal);
    return PointedSystem{std::move(trimmed), 0};
}

TermRef random_term(const EventAlphabet &alphabet, int max_depth, int max_width, uint64_t seed,
                    TermArena &arena) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto build = [&](auto &&self, int depth) -> TermRef {
        if (depth == 0)
            return coin(rng) < 0.5 ? arena.nil() : arena.bot();
        double shape = coin(rng);
        if (shape < 0.15)
            return arena.nil();
        if (shape < 0.3)
            return arena.bot();
        int width = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, max_width)));
        std::vector<TermRef> parts;
        for (int i = 0; i < width; ++i) {
            const std::string &event = alphabet.name(static_cast<int>(
                rng() % static_cast<uint64_t>(alphabet.size())));
            TermRef body = self(self, depth - 1);
            parts.push_back(coin(rng) < 0.5 ? arena.must_prefix(event, body)
                                            : arena.may_prefix(event, body));
        }
        return arena.sum_all(parts);
    };
    return build(build, max_depth);
}

namespace {

enum class GameVerdict : char { unknown, win, lose };

// win(s, t, k): every obligation of Def.-style refinement at (s, t) is
// dischargeable within k rounds.
class RefinementGame {
public:
    RefinementGame(const MixedSystem &m, const MixedSystem &n) : m_(m), n_(n) {}

    bool win(int s, int t, int k) {
        if (k <= 0)
            return true; // no obligations left at depth 0
        const uint64_t key =
            (static_cast<uint64_t>(k) * m_.state_count() + s) * n_.state_count() + t;
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second == GameVerdict::win;
        bool ok = true;
        for (int e = 0; e < m_.alphabet().size() && ok; ++e) {
            for (int s2 : m_.succ_a(s, e)) {
                bool matched = false;
                for (int t2 : n_.succ_a(t, e))
                    if (win(s2, t2, k - 1)) {
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
            for (int t2 : n_.succ_c(t, e)) {
                bool matched = false;
                for (int s2 : m_.succ_c(s, e))
                    if (win(s2, t2, k - 1)) {
                        matched = true;
                        break;
                    }
                if (!matched) {
                    ok = false;
                    break;
                }
            }
        }
        memo_.emplace(key, ok ? GameVerdict::win : GameVerdict::lose);
        return ok;
    }

private:
    const MixedSystem &m_;
    const MixedSystem &n_;
    std::map<uint64_t, GameVerdict> memo_;
};

} // namespace

bool brute_force_refines(const PointedSystem &abstract_side, const PointedSystem &concrete_side,
                         int depth_cap) {
    require_same_alphabet(abstract_side.system, concrete_side.system);
    const int stable = abstract_side.system.state_count() * concrete_side.system.state_count();
    if (depth_cap < stable)
        throw BudgetError("depth cap " + std::to_string(depth_cap) +
                          " is below the stabilization bound " + std::to_string(stable));
    RefinementGame game(abstract_side.system, concrete_side.system);
    return game.win(abstract_side.init, concrete_side.init, stable);
}

DyadicDistance oracle_distance(const PointedSystem &p, const PointedSystem &q, int depth_cap,
                               size_t budget) {
    require_same_alphabet(p.system, q.system);
    require_modal(p.system, "oracle_distance");
    require_modal(q.system, "oracle_distance");

    const int cap = p.system.state_count() * q.system.state_count();
    const bool equivalent = brute_force_refines(p, q, cap) && brute_force_refines(q, p, cap);

    // Probe terms per depth: the depth-d unfoldings of both sides are a
    // complete distinguishing family at depth d, small enumerated terms come
    // along as a cross-check of the unfolding route.
    TermArena terms;
    FormulaArena formulas;
    std::vector<TermRef> enumerated;
    if (p.system.alphabet().size() <= 2 && depth_cap >= 1)
        enumerated = enumerate_terms(p.system.alphabet(), std::min(depth_cap, 2), 2, terms, budget);

    auto disagrees = [&](TermRef probe) {
        FormulaRef phi = char_formula(probe, p.system.alphabet(), formulas);
        return check(p, phi, Mode::a) != check(q, phi, Mode::a);
    };
    for (int d = 0; d <= depth_cap; ++d) {
        if (formulas.size() > budget || terms.size() > budget)
            throw BudgetError("oracle probe budget exceeded");
        std::vector<TermRef> probes;
        for (TermRef t : enumerated)
            if (t->modal_depth() == d)
                probes.push_back(t);
        for (const PointedSystem *side : {&p, &q}) {
            TermRef u = unfold(*side, d, terms);
            if (u->modal_depth() == d)
                probes.push_back(u);
        }
        for (TermRef probe : probes)
            if (disagrees(probe))
                return DyadicDistance::two_pow_neg(d);
    }
    if (!equivalent)
        throw BudgetError("no disagreeing probe up to the depth cap, but the systems are "
                          "not equivalent; raise the cap");
    return DyadicDistance::zero();
}

PointedSystem shrink_system(const PointedSystem &p,
                            const std::function<bool(const PointedSystem &)> &still_fails) {
    PointedSystem current = p;
    bool progress = true;
    while (progress) {
        progress = false;
        // state deletion first (never the initial state)
        for (int victim = current.system.state_count() - 1; victim >= 0; --victim) {
            if (victim == current.init)
                continue;
            std::vector<std::string> names;
            std::vector<int> position(static_cast<size_t>(current.system.state_count()), -1);
            for (int s = 0; s < current.system.state_count(); ++s)
                if (s != victim) {
                    position[static_cast<size_t>(s)] = static_cast<int>(names.size());
                    names.push_back(current.system.state_name(s));
                }
            auto restrict_to = [&](const std::vector<Transition> &rel) {
                std::vector<Transition> out;
                for (const Transition &t : rel)
                    if (t.src != victim && t.dst != victim)
                        out.push_back({position[static_cast<size_t>(t.src)], t.event,
                                       position[static_cast<size_t>(t.dst)]});
                return out;
            };
            PointedSystem candidate{MixedSystem(current.system.alphabet(), names,
                                                restrict_to(current.system.r_a()),
                                                restrict_to(current.system.r_c()),
                                                current.system.declared_kind()),
                                    position[static_cast<size_t>(current.init)]};
            if (still_fails(candidate)) {
                current = std::move(candidate);
                progress = true;
                break;
            }
        }
        if (progress)
            continue;
        // then transition deletion (a must leaves r_c, a may leaves r_a alone)
        for (size_t drop = 0; drop < current.system.r_c().size(); ++drop) {
            std::vector<Transition> r_c = current.system.r_c();
            Transition gone = r_c[drop];
            r_c.erase(r_c.begin() + static_cast<long>(drop));
            std::vector<Transition> r_a;
            for (const Transition &t : current.system.r_a())
                if (!(t == gone))
                    r_a.push_back(t);
            PointedSystem candidate{MixedSystem(current.system.alphabet(),
                                                current.system.state_names(), r_a, r_c,
                                                current.system.declared_kind()),
                                    current.init};
            if (still_fails(candidate)) {
                current = std::move(candidate);
                progress = true;
                break;
            }
        }
    }
    return current;
}

} // namespace mtskit
