#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mtskit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition or invariant failure on otherwise well-formed input
// (alphabet mismatch, non-modal input, mix condition violated, ...).
struct ValidationError : Error {
    std::vector<std::string> violations;

    explicit ValidationError(std::vector<std::string> entries)
        : Error(join(entries)), violations(std::move(entries)) {}
    explicit ValidationError(const std::string &message)
        : Error(message), violations{message} {}

private:
    static std::string join(const std::vector<std::string> &entries) {
        std::string text;
        for (const auto &entry : entries) {
            if (!text.empty())
                text += "; ";
            text += entry;
        }
        return text;
    }
};

// Syntax or semantic error in one of the three text grammars.
struct ParseError : Error {
    int line;
    int column;

    ParseError(int line, int column, const std::string &message)
        : Error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line(line), column(column) {}
};

// An enumeration or search exceeded its configured budget. Never silently
// truncated: callers must catch or fail.
struct BudgetError : Error {
    using Error::Error;
};

// A self-check that must hold by construction failed; indicates a bug.
struct InternalError : Error {
    using Error::Error;
};

} // namespace mtskit
