#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtskit {

/// A finite, nonempty, ordered set of event identifiers. Declaration order is
/// canonical: printing and formula generation iterate events in this order.
class EventAlphabet {
public:
    explicit EventAlphabet(std::vector<std::string> events);

    int size() const { return static_cast<int>(events_.size()); }
    const std::string &name(int index) const { return events_.at(static_cast<size_t>(index)); }
    const std::vector<std::string> &names() const { return events_; }

    /// Index of an event, -1 if it is not declared.
    int index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name) >= 0; }

    bool operator==(const EventAlphabet &other) const { return events_ == other.events_; }
    bool operator!=(const EventAlphabet &other) const { return !(*this == other); }

    /// Human-readable account of how two alphabets differ (for error messages).
    std::string describe_mismatch(const EventAlphabet &other) const;

    /// This alphabet extended by any of `extra` not already declared, in order.
    EventAlphabet widened(const std::vector<std::string> &extra) const;

    /// Identifier syntax for events; also rejects grammar keywords.
    static bool valid_event_name(std::string_view name);

private:
    std::vector<std::string> events_;
    std::unordered_map<std::string, int> index_;
};

} // namespace mtskit
