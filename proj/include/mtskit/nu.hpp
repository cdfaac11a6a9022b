#pragma once

#include "mtskit/system.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mtskit {

enum class NuKind : unsigned char { tt, ff, variable, conjunction, disjunction, diamond, box, nu };

/// Formula of the greatest-fixed-point-only fragment of the modal mu-calculus.
/// Conjunction and disjunction are n-ary; every variable is bound exactly
/// once; bodies are monotone by construction (no negation).
struct NuFormula;
using NuRef = std::shared_ptr<const NuFormula>;

struct NuFormula {
    NuKind kind = NuKind::tt;
    int var = 0;                 // variable / nu binder, 1-based (prints X1, X2, ...)
    std::string event;           // diamond / box
    std::vector<NuRef> children; // junctions: all; diamond/box/nu: exactly one
};

NuRef nu_tt();
NuRef nu_ff();
NuRef nu_var(int var);
/// Collapses singletons; empty conjunction is tt, empty disjunction is ff.
NuRef nu_and(std::vector<NuRef> children);
NuRef nu_or(std::vector<NuRef> children);
NuRef nu_diamond(const std::string &event, NuRef body);
NuRef nu_box(const std::string &event, NuRef body);
NuRef nu_bind(int var, NuRef body);

bool nu_equal(const NuRef &a, const NuRef &b);

/// The characteristic equations X_(M,s) rendered as one closed formula with a
/// fresh binder per state occurrence: states already bound in the calling
/// context become variables, every other successor is expanded in place.
/// An implementation satisfies the result exactly when it refines p.
/// Requires a modal system.
NuRef characteristic_nu(const PointedSystem &p);

/// Greatest-fixed-point evaluation over an implementation: each nu variable
/// starts at the full state set and its body is iterated to stability,
/// innermost first. Throws on non-implementations and unbound variables.
bool check_nu(const PointedSystem &implementation, const NuRef &formula);

} // namespace mtskit
