"""Refinement, dual-judgment model checking and dyadic distances for modal
transition systems. Thin wrapper over the C++ core."""

try:
    from mtskit._mtskit import *  # installed layout
    from mtskit._mtskit import __doc__ as _core_doc
except ImportError:  # build-tree layout: extension next to the package on sys.path
    from _mtskit import *
    from _mtskit import __doc__ as _core_doc

__all__ = [
    "PointedSystem",
    "parse_system",
    "print_system",
    "refines",
    "refinement_equivalent",
    "equivalence_depth",
    "distance",
    "c1",
    "c2_bounded",
    "hausdorff_bounded",
    "check",
    "satisfies_mix_condition",
    "normalize_mixed",
    "is_implementation",
    "is_implementation_equivalent",
    "must_projection",
    "consistent",
    "common_refinement",
    "distinguishing_formula",
    "operational_semantics",
    "char_formula",
    "phi_probe",
    "unfold",
    "characteristic_nu",
    "check_nu",
    "enumerate_bounded_implementations",
    "random_modal_system",
]
