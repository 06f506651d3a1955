"""Command line front end.

Every verb reads the plain-text formats, prints deterministic key=value
style reports, and exits 0 on success, 1 on parse errors, 2 on hypothesis
violations, 3 on inference contradictions.
"""

from __future__ import annotations

import argparse
import sys
from math import gcd
from pathlib import Path

from . import corpus as corpus_mod
from .errors import ContradictionError, FiberkitError, HypothesisError, ParseError
from .fox import alexander_poly
from .inference import FLAG_NAMES, FgPremises, fg_inference
from .links import (
    KnotGroupData,
    NOT_APPLICABLE,
    cable_group,
    fibered_splice,
    splice,
    stallings_report,
)
from .one_relator import analyze, fiber_rank
from .presentations import Presentation, ZMap, abelianize, canonical_zmap, torsion_number
from .splittings import coset_graph, free_kernel_rank, kernel_indices
from .textfmt import (
    GroupFile,
    format_group,
    parse_group_file,
    parse_splitting_file,
    parse_word,
)
from .words import Word, cyclic_reduce

__all__ = ["main", "entry"]


def _parse_nielsen(text: str) -> dict[str, Word]:
    if "->" not in text:
        raise ParseError(f"bad hint {text!r}, expected 'gen->word'")
    gen, _, image = text.partition("->")
    gen = gen.strip()
    if not gen or any(ch.isspace() for ch in gen):
        raise ParseError(f"bad hint generator in {text!r}")
    word = parse_word(image.strip(), None)
    return {gen: word}


def _require_phi(group: GroupFile) -> ZMap:
    if group.phi is not None:
        return group.phi
    return canonical_zmap(group.presentation)


def _knot_data(group: GroupFile) -> KnotGroupData:
    return KnotGroupData(
        presentation=group.presentation,
        meridian=group.meridian,
        longitude=group.longitude,
        phi=_require_phi(group),
        name=group.name,
    )


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verb handlers

def _cmd_abelianize(args) -> int:
    group = parse_group_file(args.file)
    print(abelianize(group.presentation))
    return 0


def _cmd_phi(args) -> int:
    group = parse_group_file(args.file)
    phi = canonical_zmap(group.presentation)
    print(f"phi {phi}")
    print(f"m = {torsion_number(group.presentation)}")
    return 0


def _cmd_analyze(args) -> int:
    group = parse_group_file(args.file)
    pres = group.presentation
    if len(pres.generators) != 2 or len(pres.relators) != 1:
        raise HypothesisError("analyze needs two generators and one relator")
    x, y = pres.generators
    relator = cyclic_reduce(pres.relators[0], order=(x, y))
    data = analyze(relator, x, y)
    print(f"relator = {relator}")
    for name in ("p", "q", "m", "a", "b", "e"):
        print(f"{name} = {getattr(data, name)}")
    return 0


def _cmd_fiber_rank(args) -> int:
    group = parse_group_file(args.file)
    hints = [_parse_nielsen(h) for h in args.nielsen]
    rank = fiber_rank(group.presentation, hints)
    print(f"rank = {rank if rank is not None else 'unknown'}")
    return 0


def _cmd_alexander(args) -> int:
    group = parse_group_file(args.file)
    print(alexander_poly(group.presentation, _require_phi(group)))
    return 0


def _cmd_graph(args) -> int:
    split, phi = parse_splitting_file(args.file)
    if phi is None:
        raise HypothesisError("splitting file has no phi line")
    graph = coset_graph(split, phi)
    print(f"kind = {graph.kind}")
    print(f"a_idx = {graph.a_idx}")
    if graph.b_idx is not None:
        print(f"b_idx = {graph.b_idx}")
    print(f"c_idx = {graph.c_idx}")
    print(f"vertices = {graph.vertex_count}")
    print(f"edges = {graph.edge_count}")
    print(f"chi = {graph.euler_characteristic}")
    for k, (side_u, i), (side_v, j) in graph.edges:
        print(f"edge {k}: {side_u}{i} - {side_v}{j}")
    return 0


def _cmd_rank(args) -> int:
    split, phi = parse_splitting_file(args.file)
    if phi is None:
        raise HypothesisError("splitting file has no phi line")
    a_idx, b_idx, c_idx = kernel_indices(split, phi)
    graph = coset_graph(split, phi)
    rank = free_kernel_rank(
        split.kind,
        a_idx,
        b_idx,
        c_idx,
        args.rank_a,
        args.rank_b if split.kind == "amalgam" else None,
        graph=graph,
    )
    print(f"chi = {graph.euler_characteristic}")
    print(f"rank = {rank}")
    return 0


def _cmd_infer(args) -> int:
    kind = None
    nontrivial = True
    assignments = {}
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        where = f"{path}:{lineno}"
        if parts[0] == "kind" and len(parts) == 2:
            kind = parts[1]
        elif parts[0] == "nontrivial" and len(parts) == 2:
            nontrivial = parts[1] == "yes"
        elif parts[0] == "premise" and len(parts) == 3:
            flag, value = parts[1], parts[2]
            if flag not in FLAG_NAMES:
                raise ParseError(f"{where}: unknown flag {flag!r}")
            if value not in ("yes", "no"):
                raise ParseError(f"{where}: flag value must be yes or no")
            assignments[flag] = value == "yes"
        else:
            raise ParseError(f"{where}: unknown line {line!r}")
    if kind not in ("amalgam", "hnn"):
        raise ParseError(f"{path}: needs a line 'kind amalgam' or 'kind hnn'")
    conclusions = fg_inference(
        kind, FgPremises(**assignments), nontrivial_decomposition=nontrivial
    )
    for flag in FLAG_NAMES:
        value = conclusions[flag]
        if value is not None:
            print(f"{flag} = {'yes' if value else 'no'}")
    for clause in sorted(
        conclusions.disjunctions,
        key=lambda c: sorted((f, v) for f, v in c),
    ):
        rendered = " | ".join(
            f"{f}={'yes' if v else 'no'}" for f, v in sorted(clause)
        )
        print(f"disjunction: {rendered}")
    return 0


def _cmd_splice(args) -> int:
    first = _knot_data(parse_group_file(args.file_a))
    second = _knot_data(parse_group_file(args.file_b))
    pres, phi = splice(first, second)
    out = GroupFile(
        name=f"{first.name}+{second.name}", presentation=pres, phi=phi
    )
    _emit(format_group(out), args.output)
    return 0


def _cmd_cable(args) -> int:
    knot = _knot_data(parse_group_file(args.file))
    result = cable_group(knot, args.p, args.q)
    out = GroupFile(
        name=result.name,
        presentation=result.presentation,
        phi=result.phi,
        meridian=result.meridian,
        longitude=result.longitude,
    )
    _emit(format_group(out), args.output)
    return 0


def _cmd_report(args) -> int:
    group = parse_group_file(args.file)
    hints = [_parse_nielsen(h) for h in args.nielsen]
    report = stallings_report(group.presentation, _require_phi(group), hints)
    print(report.render())
    return 0


def _corpus_files() -> list[tuple[str, str]]:
    """Deterministic corpus: (filename, content) pairs."""
    files: list[tuple[str, str]] = []

    def add_group(filename: str, data: KnotGroupData):
        gf = GroupFile(
            name=data.name,
            presentation=data.presentation,
            phi=data.phi,
            meridian=data.meridian,
            longitude=data.longitude,
        )
        files.append((filename, format_group(gf)))

    add_group("unknot.grp", corpus_mod.unknot_data())
    add_group("trefoil.grp", corpus_mod.trefoil_data())
    for p in range(2, 7):
        for q in range(p + 1, 8):
            if gcd(p, q) == 1:
                add_group(f"torus_{p}_{q}.grp", corpus_mod.torus_knot_data(p, q))

    showcase = corpus_mod.showcase_presentation()
    files.append(
        (
            "showcase.grp",
            format_group(
                GroupFile("showcase", showcase, canonical_zmap(showcase))
            ),
        )
    )
    descended = corpus_mod.showcase_descended()
    files.append(
        (
            "showcase_descended.grp",
            format_group(
                GroupFile("showcase-H", descended, canonical_zmap(descended))
            ),
        )
    )

    rank = fiber_rank(showcase, [corpus_mod.showcase_hint()])
    files.append(("showcase.rank.txt", f"rank = {rank}\n"))
    trefoil = corpus_mod.trefoil_data()
    files.append(
        (
            "trefoil.alexander.txt",
            f"{alexander_poly(trefoil.presentation, trefoil.phi)}\n",
        )
    )
    files.append(
        (
            "trefoil.report.txt",
            stallings_report(trefoil.presentation, trefoil.phi).render() + "\n",
        )
    )
    files.append(
        (
            "showcase.report.txt",
            stallings_report(
                showcase, canonical_zmap(showcase), [corpus_mod.showcase_hint()]
            ).render()
            + "\n",
        )
    )

    def zero_class(data: KnotGroupData) -> KnotGroupData:
        return KnotGroupData(
            presentation=data.presentation,
            meridian=data.meridian,
            longitude=data.longitude,
            phi=ZMap({g: 0 for g in data.presentation.generators}),
            name=data.name,
        )

    spliced, spliced_phi = splice(
        zero_class(corpus_mod.trefoil_data()),
        zero_class(corpus_mod.trefoil_data()),
    )
    files.append(
        (
            "splice_trefoil_trefoil.grp",
            format_group(
                GroupFile("trefoil+trefoil", spliced, spliced_phi)
            ),
        )
    )
    files.append(
        (
            "splice_trefoil_trefoil.homology.txt",
            f"abelianization = {abelianize(spliced)}\n",
        )
    )

    verdict = fibered_splice(True, True, False, True)
    files.append(
        (
            "splice_without_incompressibility.txt",
            "scenario: fibered exterior spliced with an unknot inside a ball\n"
            "first_fibered = yes\nsecond_fibered = yes\n"
            "first_incompressible = not asserted\nsecond_incompressible = asserted\n"
            f"fibered_splice = {verdict}\n",
        )
    )
    return files


def _cmd_corpus(args) -> int:
    target = Path(args.dir)
    target.mkdir(parents=True, exist_ok=True)
    for filename, content in _corpus_files():
        (target / filename).write_text(content, encoding="utf-8")
        print(f"wrote {target / filename}")
    return 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiberkit",
        description="Exact computations with kernels of maps to Z for "
        "amalgams, HNN extensions, and knot-flavored groups.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("abelianize", help="abelianization of a group file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_abelianize)

    p = sub.add_parser("phi", help="canonical class to Z of a two-generator one-relator group")
    p.add_argument("file")
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("analyze", help="exponent analysis of the relator")
    p.add_argument("file")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("fiber-rank", help="rank of the free kernel, if derivable")
    p.add_argument("file")
    p.add_argument("--nielsen", action="append", default=[], metavar="GEN->WORD")
    p.set_defaults(func=_cmd_fiber_rank)

    p = sub.add_parser("alexander", help="order polynomial of the twisted kernel")
    p.add_argument("file")
    p.set_defaults(func=_cmd_alexander)

    p = sub.add_parser("graph", help="coset graph of the kernel over a splitting")
    p.add_argument("file")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("infer", help="close finite-generation premises under the rules")
    p.add_argument("file")
    p.set_defaults(func=_cmd_infer)

    p = sub.add_parser("rank", help="free kernel rank over a splitting")
    p.add_argument("file")
    p.add_argument("--rank-a", type=int, default=0)
    p.add_argument("--rank-b", type=int, default=0)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("splice", help="splice two knot group files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_splice)

    p = sub.add_parser("cable", help="cable a knot group file")
    p.add_argument("file")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_cable)

    p = sub.add_parser("report", help="fibering consistency report")
    p.add_argument("file")
    p.add_argument("--nielsen", action="append", default=[], metavar="GEN->WORD")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("corpus", help="write the bundled example corpus")
    p.add_argument("--dir", default="corpus")
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ContradictionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FiberkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
