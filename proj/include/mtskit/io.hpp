#pragma once

#include "mtskit/formula.hpp"
#include "mtskit/nu.hpp"
#include "mtskit/system.hpp"
#include "mtskit/term.hpp"

#include <string>
#include <string_view>

namespace mtskit {

/// System text format, line-based:
///   mts modal|mixed
///   alphabet: e1 e2 ...
///   init: s0
///   modal:  must src event dst | may src event dst
///   mixed:  a src event dst | c src event dst
/// `#` starts a comment; tokens are whitespace-separated.
SystemData parse_system_data(std::string_view text);
PointedSystem parse_system(std::string_view text);

/// Canonical printing: parse(print(p)) is the identity on the data model and
/// print(parse(t)) is the canonical form of t.
std::string print_system(const PointedSystem &p);

/// Formula grammar: tt, ff, !F, <e>F, [e]F, F & F, F | F, parentheses.
/// Precedence ! > & > |; modalities bind to the following atom.
FormulaRef parse_formula(std::string_view text, FormulaArena &arena);
std::string print_formula(FormulaRef formula);

/// Term grammar: 0, bot, e!.P, e?.P, P + P, parentheses. Prefix binds
/// tighter than +, + is left-associative, and no summand may be 0 or bot.
TermRef parse_term(std::string_view text, TermArena &arena);
std::string print_term(TermRef term);

/// Same grammar as formulas plus variables X1, X2, ... and binders
/// `nu X1 . F`; & and | chains collapse into n-ary junctions.
NuRef parse_nu_formula(std::string_view text);
std::string print_nu_formula(const NuRef &formula);

} // namespace mtskit
