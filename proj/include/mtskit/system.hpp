#pragma once

#include "mtskit/alphabet.hpp"

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtskit {

/// One labelled transition, all components as indices into the owning system.
struct Transition {
    int src;
    int event;
    int dst;

    auto operator<=>(const Transition &) const = default;
};

enum class SystemKind { modal, mixed };

/// Raw, unchecked description of a system, as read from a file or assembled
/// by hand. `validate` reports its problems; `MixedSystem::from_data` builds
/// a checked system from it.
struct SystemData {
    struct Line {
        std::string mode; // modal files: must | may; mixed files: a | c
        std::string src;
        std::string event;
        std::string dst;
    };

    SystemKind kind = SystemKind::modal;
    std::vector<std::string> alphabet;
    std::string init;
    std::vector<Line> transitions;
};

/// A finite transition system with two transition relations r_a (asserted,
/// the must-transitions) and r_c (consistent). Modal systems additionally
/// satisfy r_a subset-of r_c. Immutable after construction.
class MixedSystem {
public:
    MixedSystem(EventAlphabet alphabet, std::vector<std::string> states,
                std::vector<Transition> asserted, std::vector<Transition> consistent,
                SystemKind kind);

    /// Builds from raw data; throws ValidationError listing every violation.
    static MixedSystem from_data(const SystemData &data);

    const EventAlphabet &alphabet() const { return alphabet_; }
    int state_count() const { return static_cast<int>(states_.size()); }
    const std::string &state_name(int index) const { return states_.at(static_cast<size_t>(index)); }
    const std::vector<std::string> &state_names() const { return states_; }
    /// Index of a state, -1 if unknown.
    int state_index(std::string_view name) const;

    SystemKind declared_kind() const { return kind_; }
    /// Structural modal condition r_a subset-of r_c (independent of the
    /// declared kind: a mixed-declared system may happen to be modal).
    bool is_modal() const { return modal_; }

    const std::vector<Transition> &r_a() const { return r_a_; }
    const std::vector<Transition> &r_c() const { return r_c_; }
    bool has_a(int src, int event, int dst) const;
    bool has_c(int src, int event, int dst) const;

    /// Successor targets under r_a / r_c, sorted ascending.
    std::span<const int> succ_a(int state, int event) const;
    std::span<const int> succ_c(int state, int event) const;

    /// Same transitions over a wider alphabet (must contain the current one).
    MixedSystem with_alphabet(EventAlphabet wider) const;

private:
    EventAlphabet alphabet_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, int> state_index_;
    std::vector<Transition> r_a_;
    std::vector<Transition> r_c_;
    SystemKind kind_;
    bool modal_ = false;
    // per (state, event): contiguous target lists
    std::vector<std::vector<int>> succ_a_, succ_c_;

    void build_indices();
};

/// A system with a designated initial state.
struct PointedSystem {
    MixedSystem system;
    int init = 0;
};

PointedSystem pointed(MixedSystem system, std::string_view init_state);
PointedSystem repointed(const PointedSystem &p, std::string_view init_state);

/// Diagnostics for raw data: unknown events, bad identifiers, bad init, and,
/// when expect_modal, any must/may confusion a mixed encoding smuggles in.
std::vector<std::string> validate(const SystemData &data, bool expect_modal);

/// Invariant re-check on a built system. Always empty for systems built by
/// this module; with expect_modal it reports each triple in r_a \ r_c.
std::vector<std::string> validate(const MixedSystem &system, bool expect_modal);

/// States reachable from the initial state under r_a union r_c, as sorted indices.
std::vector<int> reachable(const PointedSystem &p);

/// Keeps only must-transitions: (alphabet, r_a, r_a) pointed at the same
/// state. The result is an implementation and always refines the input.
/// Requires a modal system.
PointedSystem must_projection(const PointedSystem &p);

struct DisjointUnion {
    MixedSystem system;
    std::vector<int> left_states;  // index in left -> index in union
    std::vector<int> right_states; // index in right -> index in union
};

/// Tagged sum of two systems over identical alphabets; no cross transitions.
DisjointUnion disjoint_union(const MixedSystem &left, const MixedSystem &right);

/// Throws ValidationError naming the differing events unless the alphabets
/// are identical (same events, same order).
void require_same_alphabet(const MixedSystem &left, const MixedSystem &right);

/// Throws ValidationError unless the system is structurally modal.
void require_modal(const MixedSystem &system, std::string_view operation);

} // namespace mtskit
