"""Line-oriented plain-text formats for groups and splittings.

Group file::

    group trefoil
    gen x y
    rel x^2 y^-3
    phi x=3 y=2
    peripheral meridian=x y^-1 longitude=x^2 x y^-1 ...

Words are whitespace-separated ``<id>^<int>`` tokens with ``^1`` omitted
and ``1`` for the empty word.  Splitting files name their factor files::

    amalgam A=a.grp B=b.grp
    edge inA=x^2 inB=y^3
    phi x=3 y=2

    hnn A=a.grp stable=t
    edge inC=x^2 inD=x^2
    phi x=1 t=0

Blank lines and ``#`` comments are ignored; unknown keywords are parse
errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .presentations import Presentation, ZMap
from .splittings import AMALGAM, HNN, Splitting
from .words import Word, reduce_word

__all__ = [
    "GroupFile",
    "parse_word",
    "format_word",
    "parse_group_text",
    "parse_group_file",
    "format_group",
    "parse_splitting_file",
]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?:\^(-?\d+))?$")


def parse_word(text: str, generators=None) -> Word:
    """Parse a word; exponents must be nonzero, and when a generator list
    is given every name must be declared on it."""
    text = text.strip()
    if not text or text == "1":
        return Word()
    declared = None if generators is None else set(generators)
    syllables = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise ParseError(f"bad word token {token!r}")
        gen, exp_text = match.groups()
        exp = int(exp_text) if exp_text is not None else 1
        if exp == 0:
            raise ParseError(f"zero exponent in token {token!r}")
        if declared is not None and gen not in declared:
            raise ParseError(f"undeclared generator {gen!r}")
        syllables.append((gen, exp))
    return reduce_word(syllables)


def format_word(word: Word) -> str:
    return str(word)


@dataclass(frozen=True)
class GroupFile:
    """Parsed contents of a group file."""

    name: str
    presentation: Presentation
    phi: ZMap | None = None
    meridian: Word | None = None
    longitude: Word | None = None


def _split_phi(args: str) -> dict[str, int]:
    values = {}
    for item in args.split():
        if "=" not in item:
            raise ParseError(f"bad phi assignment {item!r}")
        gen, _, value = item.partition("=")
        try:
            values[gen] = int(value)
        except ValueError:
            raise ParseError(f"bad phi value in {item!r}") from None
    if not values:
        raise ParseError("empty phi line")
    return values


def _split_keyed_words(args: str, keys: tuple[str, str]) -> tuple[str, str]:
    """Split e.g. ``meridian=x y^-1 longitude=x^2`` into the two word
    strings; word tokens may contain spaces, so we cut at the second key."""
    first_key, second_key = keys
    prefix = first_key + "="
    marker = second_key + "="
    if not args.startswith(prefix):
        raise ParseError(f"expected {prefix!r} first")
    rest = args[len(prefix):]
    pieces = rest.split(marker)
    if len(pieces) != 2:
        raise ParseError(f"expected exactly one {marker!r}")
    return pieces[0].strip(), pieces[1].strip()


def parse_group_text(text: str, source: str = "<string>") -> GroupFile:
    name = None
    generators: list[str] = []
    relator_lines: list[tuple[int, str]] = []
    phi_values = None
    meridian_text = None
    longitude_text = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, args = line.partition(" ")
        args = args.strip()
        where = f"{source}:{lineno}"
        if keyword == "group":
            if name is not None:
                raise ParseError(f"{where}: repeated group line")
            if not args:
                raise ParseError(f"{where}: group needs a name")
            name = args
        elif keyword == "gen":
            if not args:
                raise ParseError(f"{where}: gen needs at least one name")
            for g in args.split():
                if not _TOKEN.match(g) or "^" in g:
                    raise ParseError(f"{where}: bad generator name {g!r}")
                if g in generators:
                    raise ParseError(f"{where}: duplicate generator {g!r}")
                generators.append(g)
        elif keyword == "rel":
            relator_lines.append((lineno, args))
        elif keyword == "phi":
            if phi_values is not None:
                raise ParseError(f"{where}: repeated phi line")
            phi_values = _split_phi(args)
        elif keyword == "peripheral":
            if meridian_text is not None:
                raise ParseError(f"{where}: repeated peripheral line")
            meridian_text, longitude_text = _split_keyed_words(
                args, ("meridian", "longitude")
            )
        else:
            raise ParseError(f"{where}: unknown keyword {keyword!r}")

    if not generators:
        raise ParseError(f"{source}: no generators declared")
    relators = []
    for lineno, args in relator_lines:
        try:
            relators.append(parse_word(args, generators))
        except ParseError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from None
    pres = Presentation(tuple(generators), tuple(relators))

    phi = None
    if phi_values is not None:
        for g in phi_values:
            if g not in generators:
                raise ParseError(f"{source}: phi names undeclared generator {g!r}")
        for g in generators:
            if g not in phi_values:
                raise ParseError(f"{source}: phi misses generator {g!r}")
        phi = ZMap(phi_values)

    meridian = longitude = None
    if meridian_text is not None:
        meridian = parse_word(meridian_text, generators)
        longitude = parse_word(longitude_text, generators)

    return GroupFile(
        name=name or "G",
        presentation=pres,
        phi=phi,
        meridian=meridian,
        longitude=longitude,
    )


def parse_group_file(path: str | Path) -> GroupFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_group_text(text, source=str(path))


def format_group(group: GroupFile) -> str:
    lines = [f"group {group.name}", "gen " + " ".join(group.presentation.generators)]
    for r in group.presentation.relators:
        lines.append(f"rel {r}")
    if group.phi is not None:
        assignments = " ".join(
            f"{g}={group.phi.values[g]}" for g in group.presentation.generators
        )
        lines.append(f"phi {assignments}")
    if group.meridian is not None and group.longitude is not None:
        lines.append(
            f"peripheral meridian={group.meridian} longitude={group.longitude}"
        )
    return "\n".join(lines) + "\n"


def _split_assignments(args: str, keys: tuple[str, ...], where: str) -> dict[str, str]:
    values = {}
    for item in args.split():
        key, eq, value = item.partition("=")
        if not eq or key not in keys:
            raise ParseError(f"{where}: expected {'/'.join(keys)} assignments")
        values[key] = value
    missing = [k for k in keys if k not in values]
    if missing:
        raise ParseError(f"{where}: missing {missing[0]}=...")
    return values


def parse_splitting_file(path: str | Path) -> tuple[Splitting, ZMap | None]:
    """Parse a splitting file; factor file paths resolve relative to it."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None

    kind = None
    factor_a = factor_b = None
    stable = None
    edges_a: list[str] = []
    edges_b: list[str] = []
    edge_lines: list[int] = []
    phi_values = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, args = line.partition(" ")
        args = args.strip()
        where = f"{path}:{lineno}"
        if keyword in (AMALGAM, HNN):
            if kind is not None:
                raise ParseError(f"{where}: repeated splitting line")
            kind = keyword
            if keyword == AMALGAM:
                parts = _split_assignments(args, ("A", "B"), where)
                factor_a = parse_group_file(path.parent / parts["A"])
                factor_b = parse_group_file(path.parent / parts["B"])
            else:
                parts = _split_assignments(args, ("A", "stable"), where)
                factor_a = parse_group_file(path.parent / parts["A"])
                stable = parts["stable"]
        elif keyword == "edge":
            keys = ("inA", "inB") if kind == AMALGAM else ("inC", "inD")
            if kind is None:
                raise ParseError(f"{where}: edge before the splitting line")
            wa, wb = _split_keyed_words(args, keys)
            edges_a.append(wa)
            edges_b.append(wb)
            edge_lines.append(lineno)
        elif keyword == "phi":
            if phi_values is not None:
                raise ParseError(f"{where}: repeated phi line")
            phi_values = _split_phi(args)
        else:
            raise ParseError(f"{where}: unknown keyword {keyword!r}")

    if kind is None:
        raise ParseError(f"{path}: no amalgam or hnn line")

    gens_a = factor_a.presentation.generators
    if kind == AMALGAM:
        gens_b = factor_b.presentation.generators
        try:
            words_a = tuple(parse_word(w, gens_a) for w in edges_a)
            words_b = tuple(parse_word(w, gens_b) for w in edges_b)
            split = Splitting(
                AMALGAM,
                factor_a.presentation,
                factor_b.presentation,
                words_a,
                words_b,
            )
        except (ParseError, ValueError) as exc:
            raise ParseError(f"{path}: {exc}") from None
        all_gens = gens_a + gens_b
    else:
        try:
            words_a = tuple(parse_word(w, gens_a) for w in edges_a)
            words_b = tuple(parse_word(w, gens_a) for w in edges_b)
            split = Splitting(
                HNN,
                factor_a.presentation,
                None,
                words_a,
                words_b,
                stable_letter=stable,
            )
        except (ParseError, ValueError) as exc:
            raise ParseError(f"{path}: {exc}") from None
        all_gens = gens_a + (stable,)

    phi = None
    if phi_values is not None:
        for g in phi_values:
            if g not in all_gens:
                raise ParseError(f"{path}: phi names unknown generator {g!r}")
        for g in all_gens:
            if g not in phi_values:
                raise ParseError(f"{path}: phi misses generator {g!r}")
        phi = ZMap(phi_values)
    return split, phi
