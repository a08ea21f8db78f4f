"""Expected classification tables for both catalogs.

Each row is (group name, outcome name, equivalence tag or None).  The demo
must reproduce these exactly; tags are compared numerically.
"""

from __future__ import annotations

from .fibration import TAG_E3, TAG_H3_INF, TAG_H3_Z, tags_match
from .verify import CaseVerdict

EXPECTED_E3: list[tuple[str, str, tuple | None]] = [
    ("{1}", "TooSmall", None),
    ("T(1)", "TooSmall", None),
    ("SO(2)", "TooSmall", None),
    ("SO(2)_t-bar", "TooSmall", None),
    ("SO(2)×T(1)", "FixesFiber", None),
    ("T(2)", "ProducesFibration", (TAG_E3, 0.0)),
    ("E(2)_t-bar", "ProducesFibration", (TAG_E3, 1.0)),
    ("T(3)", "ProducesFibration", (TAG_E3, 0.0)),
    ("E(2)", "ProducesFibration", (TAG_E3, 0.0)),
    ("SO(3)", "TransversalImage", None),
    ("E(2)×T(1)", "ProducesFibration", (TAG_E3, 0.0)),
    ("E(3)", "TransversalImage", None),
]

EXPECTED_H3: list[tuple[str, str, tuple | None]] = [
    ("{1}", "TooSmall", None),
    ("Hyp", "TooSmall", None),
    ("Par", "TooSmall", None),
    ("Ell", "TooSmall", None),
    ("Lox", "TooSmall", None),
    ("T(2)", "ProducesFibration", (TAG_H3_INF,)),
    ("⟨Hyp,Par⟩", "ProducesFibration", (TAG_H3_Z, 1j)),
    ("⟨Ell,Hyp⟩", "FixesFiber", None),
    ("Hom", "ProducesFibration", (TAG_H3_INF,)),
    ("ScrewHom", "ProducesFibration", (TAG_H3_INF,)),
    ("E(2)", "ProducesFibration", (TAG_H3_INF,)),
    ("H(2)", "ProducesFibration", (TAG_H3_Z, 1j)),
    ("SO(3)", "TransversalImage", None),
    ("Sim", "ProducesFibration", (TAG_H3_INF,)),
    ("H(3)", "TransversalImage", None),
]


def expected_table(space: str) -> list[tuple[str, str, tuple | None]]:
    space = space.upper()
    if space == "E3":
        return EXPECTED_E3
    if space == "H3":
        return EXPECTED_H3
    raise ValueError("space must be 'E3' or 'H3'")


def compare_with_expected(
    verdicts: list[CaseVerdict], space: str, tag_tol: float = 1e-6
) -> list[str]:
    """Mismatch descriptions between a demo run and the stored table."""
    expected = expected_table(space)
    problems: list[str] = []
    if len(verdicts) != len(expected):
        problems.append(f"expected {len(expected)} rows, got {len(verdicts)}")
    by_name = {v.group_name: v for v in verdicts}
    for name, outcome, tag in expected:
        v = by_name.get(name)
        if v is None:
            problems.append(f"missing verdict for {name}")
            continue
        if v.outcome.value != outcome:
            problems.append(f"{name}: outcome {v.outcome.value}, expected {outcome}")
            continue
        if tag is None:
            if v.tag is not None:
                problems.append(f"{name}: unexpected tag {v.tag}")
        elif v.tag is None or not tags_match(v.tag, tag, tag_tol):
            problems.append(f"{name}: tag {v.tag}, expected {tag}")
    return problems
