#include "mtskit/alphabet.hpp"

#include "mtskit/errors.hpp"

#include <algorithm>
#include <cctype>

namespace mtskit {

EventAlphabet::EventAlphabet(std::vector<std::string> events) : events_(std::move(events)) {
    std::vector<std::string> problems;
    if (events_.empty())
        problems.push_back("alphabet must be nonempty");
    for (size_t i = 0; i < events_.size(); ++i) {
        const std::string &event = events_[i];
        if (!valid_event_name(event))
            problems.push_back("invalid event name '" + event + "'");
        else if (index_.count(event))
            problems.push_back("duplicate event '" + event + "'");
        else
            index_.emplace(event, static_cast<int>(i));
    }
    if (!problems.empty())
        throw ValidationError(problems);
}

int EventAlphabet::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
}

std::string EventAlphabet::describe_mismatch(const EventAlphabet &other) const {
    std::string text = "alphabet mismatch:";
    for (const auto &event : events_)
        if (!other.contains(event))
            text += " '" + event + "' only on the left;";
    for (const auto &event : other.events_)
        if (!contains(event))
            text += " '" + event + "' only on the right;";
    if (text.back() == ':')
        text += " same events, different order";
    else
        text.pop_back();
    return text;
}

EventAlphabet EventAlphabet::widened(const std::vector<std::string> &extra) const {
    std::vector<std::string> events = events_;
    for (const auto &event : extra)
        if (std::find(events.begin(), events.end(), event) == events.end())
            events.push_back(event);
    return EventAlphabet(std::move(events));
}

bool EventAlphabet::valid_event_name(std::string_view name) {
    if (name.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
        return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    // Keywords of the formula and term grammars cannot label transitions.
    return name != "tt" && name != "ff" && name != "nu" && name != "bot";
}

} // namespace mtskit
