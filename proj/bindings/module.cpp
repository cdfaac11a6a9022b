#include "mtskit/errors.hpp"
#include "mtskit/formula.hpp"
#include "mtskit/io.hpp"
#include "mtskit/metrics.hpp"
#include "mtskit/nu.hpp"
#include "mtskit/refinement.hpp"
#include "mtskit/term.hpp"
#include "mtskit/testkit.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

namespace py = pybind11;
using namespace mtskit;

namespace {

// Formulas and terms cross the boundary as text; each call parses into a
// local arena. Systems are first-class objects.
std::string distance_text(const DyadicDistance &d) { return d.str(); }

py::dict estimate_dict(const IntervalEstimate &e) {
    py::dict result;
    result["lower"] = e.lower.str();
    result["upper"] = e.upper.str();
    result["exact"] = e.exact;
    return result;
}

} // namespace

PYBIND11_MODULE(_mtskit, m) {
    m.doc() = "refinement, model checking and distances for modal transition systems";

    py::register_exception<ParseError>(m, "MtsParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "MtsValidationError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "MtsBudgetError", PyExc_RuntimeError);

    py::class_<PointedSystem>(m, "PointedSystem")
        .def("__str__", [](const PointedSystem &p) { return print_system(p); })
        .def_property_readonly("init",
                               [](const PointedSystem &p) { return p.system.state_name(p.init); })
        .def_property_readonly("states",
                               [](const PointedSystem &p) { return p.system.state_names(); })
        .def_property_readonly("alphabet",
                               [](const PointedSystem &p) { return p.system.alphabet().names(); })
        .def_property_readonly("is_modal", [](const PointedSystem &p) { return p.system.is_modal(); })
        .def("repointed", [](const PointedSystem &p, const std::string &state) {
            return repointed(p, state);
        });

    m.def("parse_system", [](const std::string &text) { return parse_system(text); });
    m.def("print_system", [](const PointedSystem &p) { return print_system(p); });

    m.def("refines", [](const PointedSystem &abstract_side, const PointedSystem &concrete_side) {
        return refines(abstract_side, concrete_side);
    });
    m.def("refinement_equivalent", [](const PointedSystem &p, const PointedSystem &q) {
        return refinement_equivalent(p, q);
    });
    m.def("equivalence_depth",
          [](const PointedSystem &p, const PointedSystem &q) -> std::optional<int> {
              return equivalence_depth(p, q);
          });
    m.def("distance",
          [](const PointedSystem &p, const PointedSystem &q) { return distance(p, q).str(); });
    m.def("c1", [](const PointedSystem &p, const PointedSystem &q) { return c1(p, q).str(); });
    m.def("c2_bounded", [](const PointedSystem &p, const PointedSystem &q, int depth) {
        return estimate_dict(c2_bounded(p, q, depth));
    });
    m.def("hausdorff_bounded", [](const PointedSystem &p, const PointedSystem &q, int depth) {
        return estimate_dict(hausdorff_bounded(p, q, depth));
    });

    m.def("check", [](const PointedSystem &p, const std::string &formula, const std::string &mode) {
        FormulaArena arena;
        FormulaRef f = parse_formula(formula, arena);
        if (mode == "3") {
            switch (check3(p, f)) {
            case Verdict3::yes:
                return std::string("true");
            case Verdict3::no:
                return std::string("false");
            default:
                return std::string("unknown");
            }
        }
        if (mode != "a" && mode != "c")
            throw ValidationError("mode must be a, c or 3");
        return std::string(check(p, f, mode == "a" ? Mode::a : Mode::c) ? "true" : "false");
    });

    m.def("satisfies_mix_condition",
          [](const PointedSystem &p) { return satisfies_mix_condition(p.system); });
    m.def("normalize_mixed", [](const PointedSystem &p) { return normalize_mixed(p); });
    m.def("is_implementation", [](const PointedSystem &p) { return is_implementation(p); });
    m.def("is_implementation_equivalent",
          [](const PointedSystem &p) { return is_implementation_equivalent(p); });
    m.def("must_projection", [](const PointedSystem &p) { return must_projection(p); });
    m.def("consistent", [](const PointedSystem &p, const PointedSystem &q) {
        return consistency_relation(p.system, q.system).contains(p.init, q.init);
    });
    m.def("common_refinement",
          [](const PointedSystem &p, const PointedSystem &q) -> std::optional<PointedSystem> {
              return common_refinement(p, q);
          });
    m.def("distinguishing_formula", [](const PointedSystem &p, const PointedSystem &q) {
        FormulaArena arena;
        return print_formula(distinguishing_formula(p, q, arena));
    });

    m.def("operational_semantics",
          [](const std::string &term, const std::vector<std::string> &alphabet) {
              TermArena arena;
              return operational_semantics(parse_term(term, arena), EventAlphabet(alphabet));
          });
    m.def("char_formula", [](const std::string &term, const std::vector<std::string> &alphabet) {
        TermArena terms;
        FormulaArena formulas;
        return print_formula(char_formula(parse_term(term, terms), EventAlphabet(alphabet),
                                          formulas));
    });
    m.def("phi_probe", [](const std::vector<std::string> &trace, const std::string &event,
                          const std::string &term, const std::vector<std::string> &alphabet) {
        TermArena terms;
        FormulaArena formulas;
        return print_formula(
            phi_probe(trace, event, parse_term(term, terms), EventAlphabet(alphabet), formulas));
    });
    m.def("unfold", [](const PointedSystem &p, int depth) {
        TermArena arena;
        return print_term(unfold(p, depth, arena));
    });
    m.def("characteristic_nu",
          [](const PointedSystem &p) { return print_nu_formula(characteristic_nu(p)); });
    m.def("check_nu", [](const PointedSystem &implementation, const std::string &formula) {
        return check_nu(implementation, parse_nu_formula(formula));
    });
    m.def("enumerate_bounded_implementations",
          [](const PointedSystem &p, int depth, size_t budget) {
              TermArena arena;
              std::vector<std::string> out;
              for (TermRef t : enumerate_bounded_implementations(p, depth, arena, budget))
                  out.push_back(print_term(t));
              return out;
          },
          py::arg("system"), py::arg("depth"), py::arg("budget") = 10000);

    m.def("random_modal_system", [](int max_states, int max_events, uint64_t seed) {
        GenParams params;
        params.max_states = max_states;
        params.max_events = max_events;
        return random_modal_system(params, seed);
    });
}
