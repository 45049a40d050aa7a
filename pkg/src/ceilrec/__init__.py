"""Nested recursions whose solutions are sums of ceiling functions.

The package computes the canonical staircase solutions, generates
recursions from initial conditions, decides formal satisfaction by a
finite defect scan, classifies parameter tuples up to shift relations,
and round-trips between periodic-difference sequences and closed forms.
"""

from .ceiling import (
    CeilingSumForm,
    CeilingTerm,
    DifferenceProfile,
    ceil_div,
    difference_profile,
    eval_form,
    form_from_dict,
    form_to_dict,
    format_form,
    forms_agree,
    non_nested_equivalent,
    parse_form,
    staircase,
    staircase_form,
    synthesize_form,
)
from .classify import (
    Box,
    CanonicalForm,
    ConditionReport,
    Relation,
    SweepResult,
    TheoremViolation,
    Verdict,
    apply_relation,
    classify,
    conditions_hold,
    equivalent,
    iter_verdicts,
    normalize,
    swap_normal,
    sweep,
)
from .engine import (
    DeadSequence,
    NoValidIcs,
    NotSatisfied,
    RecursionSpec,
    SatisfactionReport,
    defect,
    format_spec,
    formally_satisfies,
    generate,
    is_slow,
    parse_spec,
    staircase_ics,
)
from .windows import (
    SequenceWindow,
    format_bfile,
    format_csv,
    parse_bfile,
    parse_csv,
    parse_window,
    render_window,
)

__version__ = "0.1.0"

__all__ = [
    "CeilingSumForm",
    "CeilingTerm",
    "DifferenceProfile",
    "ceil_div",
    "difference_profile",
    "eval_form",
    "form_from_dict",
    "form_to_dict",
    "format_form",
    "forms_agree",
    "non_nested_equivalent",
    "parse_form",
    "staircase",
    "staircase_form",
    "synthesize_form",
    "Box",
    "CanonicalForm",
    "ConditionReport",
    "Relation",
    "SweepResult",
    "TheoremViolation",
    "Verdict",
    "apply_relation",
    "classify",
    "conditions_hold",
    "equivalent",
    "iter_verdicts",
    "normalize",
    "swap_normal",
    "sweep",
    "DeadSequence",
    "NoValidIcs",
    "NotSatisfied",
    "RecursionSpec",
    "SatisfactionReport",
    "defect",
    "format_spec",
    "formally_satisfies",
    "generate",
    "is_slow",
    "parse_spec",
    "staircase_ics",
    "SequenceWindow",
    "format_bfile",
    "format_csv",
    "parse_bfile",
    "parse_csv",
    "parse_window",
    "render_window",
    "__version__",
]
