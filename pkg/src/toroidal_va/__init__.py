"""Exact algebra for vertex algebras of toroidal type.

Modules: ``ring`` (monomial Laurent/polynomial rings and homs), ``kaehler``
(one-forms modulo exact forms), ``lie`` (structure constants), ``toroidal``
(the central extension and its cocycle model), ``vacuum`` (the vacuum module
and its fields), ``functor`` (change of fiber algebra, level, Sugawara) and
``cli``.
"""

from .errors import (
    CriticalLevelError,
    InvalidHomError,
    MissingLoopVariableError,
    ParseError,
    SpecMismatchError,
    UnsupportedConfigurationError,
)
from .functor import (
    InducedHom,
    LevelSpecialization,
    embedding_check,
    functoriality_check,
    hom_intertwines_check,
    induce_hom,
    specialize_level,
    sugawara_check,
)
from .kaehler import (
    CentralClass,
    KaehlerElement,
    graded_dimension,
    is_exact,
    lie_derivative_t,
    normal_form,
    pushforward,
    residue,
    split_nf,
    universal_d,
)
from .lie import LieAlgebra, LieElement, killing_form, lie_bracket, preset, sl_n, validate_lie
from .parse import parse_element, parse_field, parse_hom, parse_modes
from .report import Report
from .ring import RingElement, RingHom, RingSpec, apply_hom, validate_hom
from .toroidal import ToroidalElement, bracket_hat, cocycle_check, h0_iso_check, jacobi_suite
from .vacuum import (
    FieldSpec,
    VacuumState,
    act_mode,
    apply_T,
    character,
    commutator_check,
    field_mode,
    locality_check,
    module_axiom_check,
    translation_axiom_check,
    vacuum_axiom_check,
    vacuum_module,
)

__version__ = "0.1.0"

__all__ = [
    "CentralClass",
    "CriticalLevelError",
    "FieldSpec",
    "InducedHom",
    "InvalidHomError",
    "KaehlerElement",
    "LevelSpecialization",
    "LieAlgebra",
    "LieElement",
    "MissingLoopVariableError",
    "ParseError",
    "Report",
    "RingElement",
    "RingHom",
    "RingSpec",
    "SpecMismatchError",
    "ToroidalElement",
    "UnsupportedConfigurationError",
    "VacuumState",
    "act_mode",
    "apply_T",
    "apply_hom",
    "bracket_hat",
    "character",
    "cocycle_check",
    "commutator_check",
    "embedding_check",
    "field_mode",
    "functoriality_check",
    "graded_dimension",
    "h0_iso_check",
    "hom_intertwines_check",
    "induce_hom",
    "is_exact",
    "jacobi_suite",
    "killing_form",
    "lie_bracket",
    "lie_derivative_t",
    "locality_check",
    "module_axiom_check",
    "normal_form",
    "parse_element",
    "parse_field",
    "parse_hom",
    "parse_modes",
    "preset",
    "pushforward",
    "residue",
    "sl_n",
    "specialize_level",
    "split_nf",
    "sugawara_check",
    "translation_axiom_check",
    "universal_d",
    "vacuum_axiom_check",
    "vacuum_module",
    "validate_hom",
    "validate_lie",
]
