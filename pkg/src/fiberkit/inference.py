"""Three-valued inference for finite generation of a normal subgroup.

Premise and conclusion flags about ``N``, a normal subgroup of ``G`` split
as an amalgam ``A *_C B`` or HNN extension ``A *_C``, take values yes /
no / unknown (True / False / None).  The engine closes a premise set under
a fixed list of implications; it never speculates beyond them.  Adding
premises never removes conclusions, and running the closure twice changes
nothing.

When a rule's conclusion is refuted but more than one of its antecedents
is still open, the contrapositive cannot pick a culprit; the engine then
records a disjunction clause ("at least one of these literals holds")
instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ContradictionError, HypothesisError
from .splittings import AMALGAM, HNN

__all__ = [
    "FgPremises",
    "FgConclusions",
    "fg_inference",
    "FLAG_NAMES",
]

# flag index -> (attribute, display name)
_FLAGS: tuple[tuple[str, str], ...] = (
    ("n_fg", "N fg"),
    ("n_in_c", "N in C"),
    ("nc_finite_index", "NC finite index"),
    ("n_and_a_fg", "N^A fg"),
    ("n_and_b_fg", "N^B fg"),
    ("n_and_c_fg", "N^C fg"),
    ("c_over_n_finite", "C/N^C finite"),
    ("n_and_c_trivial", "N^C trivial"),
    ("n_and_a_free", "N^A free"),
    ("n_and_b_free", "N^B free"),
    ("factors_have_no_fg_normal", "factors have no fg nontrivial normal subgroup of infinite index"),
    ("c_free_abelian", "C free abelian of finite rank"),
    ("n_nontrivial", "N nontrivial"),
    ("g_over_n_finite", "G/N finite"),
    ("n_free", "N free"),
)

FLAG_NAMES = tuple(attr for attr, _ in _FLAGS)
_INDEX = {attr: i for i, (attr, _) in enumerate(_FLAGS)}
DISPLAY = {attr: name for attr, name in _FLAGS}

_N_FLAGS = len(_FLAGS)

TriBool = Optional[bool]


@dataclass(frozen=True)
class FgPremises:
    """Caller-asserted flags; None means unknown.

    The structural flags ``factors_have_no_fg_normal``, ``c_free_abelian``
    and ``n_nontrivial`` gate the deeper rules; the conclusion-vocabulary
    flags ``g_over_n_finite`` / ``n_free`` may also be asserted when known,
    so a conclusion set can be fed back in unchanged.
    """

    n_fg: TriBool = None
    n_in_c: TriBool = None
    nc_finite_index: TriBool = None
    n_and_a_fg: TriBool = None
    n_and_b_fg: TriBool = None
    n_and_c_fg: TriBool = None
    c_over_n_finite: TriBool = None
    n_and_c_trivial: TriBool = None
    n_and_a_free: TriBool = None
    n_and_b_free: TriBool = None
    factors_have_no_fg_normal: TriBool = None
    c_free_abelian: TriBool = None
    n_nontrivial: TriBool = None
    g_over_n_finite: TriBool = None
    n_free: TriBool = None


@dataclass(frozen=True)
class FgConclusions:
    """Closure of a premise set: definite flags plus disjunction clauses.

    Each clause is a frozenset of ``(attribute, bool)`` literals, meaning at
    least one of them holds; clauses appear only where the rules force a
    disjunction they cannot resolve.
    """

    flags: tuple[TriBool, ...]
    disjunctions: frozenset[frozenset[tuple[str, bool]]]

    def __getitem__(self, attr: str) -> TriBool:
        return self.flags[_INDEX[attr]]

    def known(self) -> dict[str, bool]:
        return {
            attr: value
            for (attr, _), value in zip(_FLAGS, self.flags)
            if value is not None
        }

    def as_premises(self) -> FgPremises:
        return FgPremises(**self.known())

    def implies(self, other: "FgConclusions") -> bool:
        """Every definite flag here is also definite (and equal) there."""
        return all(
            v is None or v == w for v, w in zip(self.flags, other.flags)
        )


def _idx(attr: str) -> int:
    return _INDEX[attr]


def _lit(attr: str, value: bool) -> tuple[int, bool]:
    return _INDEX[attr], value


# Implication rules: (name, antecedent literals, consequent literal).
# The B-side variants exist only for amalgams.  Rule names are stable and
# appear in contradiction errors.
def _rules(kind: str):
    both_sides = kind == AMALGAM
    rules: list[tuple[str, tuple[tuple[int, bool], ...], tuple[int, bool]]] = []

    def rule(name, ants, cons):
        rules.append((name, tuple(ants), cons))

    rule(
        "fg-off-edge-forces-finite-index",
        [_lit("n_fg", True), _lit("n_in_c", False)],
        _lit("nc_finite_index", True),
    )
    rule(
        "fg-off-edge-with-fg-edge-kernel-forces-A-part-fg",
        [_lit("n_fg", True), _lit("n_in_c", False), _lit("n_and_c_fg", True)],
        _lit("n_and_a_fg", True),
    )
    if both_sides:
        rule(
            "fg-off-edge-with-fg-edge-kernel-forces-B-part-fg",
            [_lit("n_fg", True), _lit("n_in_c", False), _lit("n_and_c_fg", True)],
            _lit("n_and_b_fg", True),
        )
    rule(
        "finite-index-forces-off-edge",
        [_lit("nc_finite_index", True)],
        _lit("n_in_c", False),
    )
    converse_ants = [_lit("nc_finite_index", True), _lit("n_and_a_fg", True)]
    if both_sides:
        converse_ants.append(_lit("n_and_b_fg", True))
    rule("finite-index-with-fg-parts-forces-fg", converse_ants, _lit("n_fg", True))

    # finite quotient transfer: with NC of finite index, G/N finite <=> C/N^C finite
    rule(
        "finite-quotient-transfer-up",
        [_lit("nc_finite_index", True), _lit("c_over_n_finite", True)],
        _lit("g_over_n_finite", True),
    )
    rule(
        "finite-quotient-transfer-down",
        [_lit("nc_finite_index", True), _lit("g_over_n_finite", True)],
        _lit("c_over_n_finite", True),
    )
    rule(
        "infinite-quotient-transfer-up",
        [_lit("nc_finite_index", True), _lit("c_over_n_finite", False)],
        _lit("g_over_n_finite", False),
    )
    rule(
        "infinite-quotient-transfer-down",
        [_lit("nc_finite_index", True), _lit("g_over_n_finite", False)],
        _lit("c_over_n_finite", False),
    )

    # trivial edge intersection: freeness and finite generation pass between
    # N and its factor parts
    base = [_lit("n_nontrivial", True), _lit("n_and_c_trivial", True)]
    free_parts = base + [_lit("n_and_a_free", True)]
    if both_sides:
        free_parts.append(_lit("n_and_b_free", True))
    rule("trivial-edge-free-parts-force-free", free_parts, _lit("n_free", True))
    rule(
        "trivial-edge-free-forces-A-part-free",
        base + [_lit("n_free", True)],
        _lit("n_and_a_free", True),
    )
    if both_sides:
        rule(
            "trivial-edge-free-forces-B-part-free",
            base + [_lit("n_free", True)],
            _lit("n_and_b_free", True),
        )
    fg_parts = base + [_lit("nc_finite_index", True), _lit("n_and_a_fg", True)]
    if both_sides:
        fg_parts.append(_lit("n_and_b_fg", True))
    rule("trivial-edge-fg-parts-force-fg", fg_parts, _lit("n_fg", True))
    rule(
        "trivial-edge-fg-forces-finite-index",
        base + [_lit("n_fg", True)],
        _lit("nc_finite_index", True),
    )
    rule(
        "trivial-edge-fg-forces-A-part-fg",
        base + [_lit("n_fg", True)],
        _lit("n_and_a_fg", True),
    )
    if both_sides:
        rule(
            "trivial-edge-fg-forces-B-part-fg",
            base + [_lit("n_fg", True)],
            _lit("n_and_b_fg", True),
        )
    return tuple(rules)


_RULES = {AMALGAM: _rules(AMALGAM), HNN: _rules(HNN)}

# free abelian edge group + tame factors + fg off-edge N forces the
# unresolved alternative: finite quotient or free kernel
_DISJUNCTION_RULE = (
    "abelian-edge-tame-factors-dichotomy",
    (
        _lit("c_free_abelian", True),
        _lit("factors_have_no_fg_normal", True),
        _lit("n_fg", True),
        _lit("n_in_c", False),
    ),
    (_lit("g_over_n_finite", True), _lit("n_free", True)),
)


def _closure(state: list, kind: str):
    """Fixed-point of the rule set over a mutable flag list.

    Returns the set of unresolved disjunction clauses.  Raises
    ContradictionError when a derivation clashes with a known flag.
    """
    rules = _RULES[kind]
    clauses: set[frozenset[tuple[int, bool]]] = set()

    def assign(idx: int, value: bool, rule_name: str) -> bool:
        cur = state[idx]
        if cur is None:
            state[idx] = value
            return True
        if cur != value:
            raise ContradictionError(
                f"rule {rule_name!r} derives "
                f"{DISPLAY[_FLAGS[idx][0]]} = {'yes' if value else 'no'} "
                f"against the established opposite",
                rule=rule_name,
            )
        return False

    changed = True
    while changed:
        changed = False
        for name, ants, (ci, cv) in rules:
            refuted = None
            unknown = []
            satisfied = True
            for ai, av in ants:
                cur = state[ai]
                if cur is None:
                    unknown.append((ai, av))
                    satisfied = False
                elif cur != av:
                    refuted = (ai, av)
                    satisfied = False
                    break
            if refuted is not None:
                continue
            if satisfied:
                if assign(ci, cv, name):
                    changed = True
                continue
            if state[ci] == (not cv):
                # contrapositive: some open antecedent must fail
                if len(unknown) == 1:
                    ai, av = unknown[0]
                    if assign(ai, not av, name + " (contrapositive)"):
                        changed = True
                else:
                    clause = frozenset((ai, not av) for ai, av in unknown)
                    if clause not in clauses:
                        clauses.add(clause)
                        changed = True

        name, ants, alts = _DISJUNCTION_RULE
        if all(state[ai] == av for ai, av in ants):
            open_alts = []
            settled = False
            for di, dv in alts:
                cur = state[di]
                if cur == dv:
                    settled = True
                    break
                if cur is None:
                    open_alts.append((di, dv))
            if not settled:
                if not open_alts:
                    raise ContradictionError(
                        f"rule {name!r} has both alternatives refuted",
                        rule=name,
                    )
                if len(open_alts) == 1:
                    if assign(*open_alts[0], name):
                        changed = True
                else:
                    clause = frozenset(open_alts)
                    if clause not in clauses:
                        clauses.add(clause)
                        changed = True

        # unit-propagate recorded clauses
        for clause in list(clauses):
            undecided = []
            satisfied = False
            for li, lv in clause:
                cur = state[li]
                if cur == lv:
                    satisfied = True
                    break
                if cur is None:
                    undecided.append((li, lv))
            if satisfied:
                clauses.discard(clause)
                changed = True
            elif not undecided:
                raise ContradictionError(
                    "a recorded disjunction lost all of its alternatives",
                    rule="clause-propagation",
                )
            elif len(undecided) == 1:
                clauses.discard(clause)
                if assign(*undecided[0], "clause-propagation"):
                    changed = True

    # drop clauses subsumed by smaller ones
    minimal = {
        c
        for c in clauses
        if not any(o is not c and o <= c for o in clauses)
    }
    return minimal


def fg_inference(
    kind: str,
    premises,
    *,
    nontrivial_decomposition: bool = True,
) -> FgConclusions:
    """Close a premise set under the finite-generation rules.

    ``kind`` is ``"amalgam"`` or ``"hnn"``.  The amalgam rules are only
    sound for a nontrivial decomposition (A != C != B), which the caller
    must assert; passing ``nontrivial_decomposition=False`` for an amalgam
    is an error rather than a silently weaker closure.
    """
    if kind not in (AMALGAM, HNN):
        raise ValueError(f"unknown splitting kind {kind!r}")
    if kind == AMALGAM and not nontrivial_decomposition:
        raise HypothesisError(
            "amalgam inference requires the nontriviality assertion A != C != B"
        )
    state = [getattr(premises, attr) for attr, _ in _FLAGS]
    clauses = _closure(state, kind)
    named = frozenset(
        frozenset((_FLAGS[i][0], v) for i, v in clause) for clause in clauses
    )
    return FgConclusions(flags=tuple(state), disjunctions=named)
