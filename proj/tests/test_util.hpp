#pragma once

#include "mtskit/io.hpp"
#include "mtskit/system.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace mtskit::test {

inline std::string fixture_path(const std::string &name) {
    return std::string(MTSKIT_FIXTURES) + "/" + name;
}

inline std::string read_file(const std::string &path) {
    std::ifstream file(path);
    REQUIRE(file.good());
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

inline PointedSystem load_fixture(const std::string &name) {
    return parse_system(read_file(fixture_path(name)));
}

/// System of a term given as text, over the alphabet given as text.
inline PointedSystem term_system(const std::string &term_text, const std::string &alphabet_text,
                                 TermArena &terms) {
    std::istringstream words(alphabet_text);
    std::vector<std::string> events;
    std::string word;
    while (words >> word)
        events.push_back(word);
    return operational_semantics(parse_term(term_text, terms), EventAlphabet(events));
}

} // namespace mtskit::test
