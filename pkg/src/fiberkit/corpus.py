"""Built-in example groups: unknot, torus knots, and the two-generator
one-relator showcase group, with their standard classes and peripheral
words.

These are the inputs the test suite and the ``corpus`` command verb lean
on; everything is constructed, never read from disk.
"""

from __future__ import annotations

from math import gcd

from .errors import HypothesisError
from .links import KnotGroupData
from .presentations import Presentation, ZMap, canonical_zmap
from .snf import xgcd
from .splittings import AMALGAM, Splitting
from .words import Word, concat

__all__ = [
    "unknot_data",
    "torus_knot_data",
    "trefoil_data",
    "showcase_presentation",
    "showcase_descended",
    "showcase_hint",
    "torus_knot_splitting",
    "corpus_presentations",
]


def unknot_data() -> KnotGroupData:
    """Infinite cyclic group; the meridian generates and the longitude
    bounds a disk, so it is the empty word."""
    pres = Presentation(("u",))
    return KnotGroupData(
        presentation=pres,
        meridian=Word.gen("u"),
        longitude=Word(),
        phi=ZMap({"u": 1}),
        irreducible=True,
        boundary_incompressible=False,
        name="unknot",
    )


def torus_knot_data(p: int, q: int) -> KnotGroupData:
    """Group ``<x, y | x^p = y^q>`` with class x -> q, y -> p.

    The meridian is ``x^s y^r`` for a Bezout pair ``s*q + r*p = 1``; the
    longitude is the central element ``x^p`` undone by ``meridian^(p*q)``.
    """
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise HypothesisError("torus knot needs coprime p, q >= 2")
    relator = Word.of(("x", p), ("y", -q))
    pres = Presentation(("x", "y"), (relator,))
    phi = ZMap({"x": q, "y": p})
    _, s, r = xgcd(q, p)
    meridian = concat(Word.gen("x", s), Word.gen("y", r))
    longitude = concat(Word.gen("x", p), meridian ** (-p * q))
    return KnotGroupData(
        presentation=pres,
        meridian=meridian,
        longitude=longitude,
        phi=phi,
        irreducible=True,
        boundary_incompressible=True,
        name=f"T({p},{q})",
    )


def trefoil_data() -> KnotGroupData:
    data = torus_knot_data(2, 3)
    return KnotGroupData(
        presentation=data.presentation,
        meridian=data.meridian,
        longitude=data.longitude,
        phi=data.phi,
        irreducible=True,
        boundary_incompressible=True,
        name="trefoil",
    )


def showcase_presentation() -> Presentation:
    """``<x, y | x^2 y^2 x^2 y^-1>``, the running two-generator example."""
    return Presentation(
        ("x", "y"), (Word.of(("x", 2), ("y", 2), ("x", 2), ("y", -1)),)
    )


def showcase_descended() -> Presentation:
    """``<u, y | u y^2 u y^-1>``, the same group one descent down."""
    return Presentation(
        ("u", "y"), (Word.of(("u", 1), ("y", 2), ("u", 1), ("y", -1)),)
    )


def showcase_hint() -> dict[str, Word]:
    """The basis change u -> u y that straightens the descended relator."""
    return {"u": Word.of(("u", 1), ("y", 1))}


def torus_knot_splitting(p: int, q: int) -> tuple[Splitting, ZMap]:
    """``<x> *_{x^p = y^q} <y>`` with the standard class."""
    split = Splitting(
        AMALGAM,
        Presentation(("x",)),
        Presentation(("y",)),
        (Word.gen("x", p),),
        (Word.gen("y", q),),
    )
    return split, ZMap({"x": q, "y": p})


def corpus_presentations() -> list[tuple[str, Presentation, ZMap]]:
    """Named presentations with valid classes, for corpus-wide property
    sweeps."""
    out: list[tuple[str, Presentation, ZMap]] = []
    unknot = unknot_data()
    out.append(("unknot", unknot.presentation, unknot.phi))
    for p, q in ((2, 3), (2, 5), (3, 4), (3, 5), (5, 7)):
        data = torus_knot_data(p, q)
        out.append((data.name, data.presentation, data.phi))
    showcase = showcase_presentation()
    out.append(("showcase", showcase, canonical_zmap(showcase)))
    descended = showcase_descended()
    out.append(("showcase-H", descended, canonical_zmap(descended)))
    straightened = Presentation(("u", "y"), (Word.of(("u", 2), ("y", 3)),))
    out.append(("u2y3", straightened, canonical_zmap(straightened)))
    cyclic = Presentation(("v", "y"), (Word.of(("v", 1), ("y", 3)),))
    out.append(("vy3", cyclic, canonical_zmap(cyclic)))
    torsion = Presentation(("x", "y"), (Word.of(("x", 2), ("y", -4)),))
    out.append(("torsion-2", torsion, canonical_zmap(torsion)))
    commutator = Presentation(
        ("x", "y"), (Word.of(("x", 1), ("y", 1), ("x", -1), ("y", -1)),)
    )
    out.append(("free-abelian", commutator, ZMap({"x": 1, "y": 0})))
    return out
