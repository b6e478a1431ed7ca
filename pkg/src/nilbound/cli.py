"""Command-line entry point: ``nilbound <subcommand> ...``.

Every subcommand prints canonical JSON (sorted keys, exact integers; integers
beyond 2^53 - 1 are written as strings).  Exit status is 0 on success, 1 on a
domain error (a JSON error object goes to stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diameter import diameter_run
from .errors import NilboundError
from .hall import QuotientSpec, build_hall_basis, witt_number
from .nilpotent import collect, power_shift_witness
from .rewriter import BoundedRewriter, GeneratingSet, StandardSection, SurfaceSection, surface_generating_set
from .surface import SurfaceSpec, christoffel, scc_section
from .symplectic import decompose
from .words import FreeWord

_MAX_SAFE = 2**53 - 1


def _exact(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _MAX_SAFE else obj
    if isinstance(obj, dict):
        return {str(k): _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exact(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_exact(obj), sort_keys=True)


def _arg_text(value: str) -> str:
    """Inline argument, or the contents of a file when written ``@path``."""
    if value.startswith("@"):
        return Path(value[1:]).read_text().strip()
    return value


def _int_vector(value: str) -> list[int]:
    data = json.loads(_arg_text(value))
    if not isinstance(data, list) or not all(isinstance(x, (int, str)) for x in data):
        raise ValueError("expected a JSON array of integers")
    return [int(x) for x in data]


def _cmd_collect(args):
    spec = QuotientSpec(args.rank, args.nclass)
    nf = collect(FreeWord.parse(_arg_text(args.word), args.rank), spec)
    out = nf.to_json()
    if args.basis:
        out["basis"] = [str(c) for c in build_hall_basis(spec)]
    return out


def _cmd_witt(args):
    QuotientSpec(args.rank, args.nclass)
    return [witt_number(args.rank, w) for w in range(1, args.nclass + 1)]


def _cmd_powershift(args):
    words = [FreeWord.parse(_arg_text(w), args.rank) for w in args.words]
    if len(words) < 2:
        raise ValueError("powershift needs at least two commutator entries")
    res = power_shift_witness(words, args.k)
    return {
        "entries": [str(w) for w in words],
        "k": args.k,
        "holds": res["holds"],
        "class_m": res["class_m"].to_json(),
        "class_m_plus_1": res["class_m_plus_1"].to_json(),
    }


def _cmd_sympdec(args):
    return decompose(_int_vector(args.vector)).to_json()


def _cmd_christoffel(args):
    return {"slope": [args.p, args.q], "word": str(christoffel(args.p, args.q))}


def _cmd_section(args):
    spec = SurfaceSpec(args.genus, args.punctures)
    h = _int_vector(args.vector)
    return {"h": h, "curves": [c.to_json() for c in scc_section(h, spec)]}


def _cmd_rewrite(args):
    if args.section == "surface":
        surface = SurfaceSpec(args.genus, args.punctures)
        gens = surface_generating_set(surface)
        section = SurfaceSection(surface)
        rank = surface.rank
    else:
        if args.rank is None or args.n0 is None:
            raise ValueError("--section standard needs --rank and --n0")
        rank = args.rank
        gens = GeneratingSet(rank, [FreeWord.generator(i, rank) for i in range(rank)])
        section = StandardSection(args.n0)
    rewriter = BoundedRewriter(gens, section)
    cert = rewriter.rewrite(FreeWord.parse(_arg_text(args.word), rank), args.nclass)
    return cert.to_json(verified=rewriter.verify(cert))


def _cmd_diameter(args):
    surface = SurfaceSpec(args.genus, args.punctures)
    spec = QuotientSpec(surface.rank, args.nclass)
    report = diameter_run(spec, surface, args.height, args.box, args.max_radius,
                          workers=args.workers, max_states=args.max_states)
    if args.output == "csv":
        return report.to_csv()
    return report.to_json(include_timing=args.timing)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilbound", description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, help="write the result here instead of stdout")
    parser.add_argument("--seed", type=int, default=None, help="reserved; every subcommand is deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("collect", help="Mal'cev normal form of a word")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--class", dest="nclass", type=int, required=True)
    p.add_argument("--basis", action="store_true", help="also list the Hall basis")
    p.add_argument("word")
    p.set_defaults(func=_cmd_collect)

    p = sub.add_parser("witt", help="Hall basis sizes per weight")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--class", dest="nclass", type=int, required=True)
    p.set_defaults(func=_cmd_witt)

    p = sub.add_parser("powershift", help="check [a1..am]^k against [a1^k, a2..am]")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("words", nargs="+")
    p.set_defaults(func=_cmd_powershift)

    p = sub.add_parser("sympdec", help="write a vector as a sum of <= 2 symplectic images of e_hat")
    p.add_argument("vector", help="JSON array, e.g. [4,7,0,5]")
    p.set_defaults(func=_cmd_sympdec)

    p = sub.add_parser("christoffel", help="Christoffel word of slope (p, q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_christoffel)

    p = sub.add_parser("section", help="handle curves realising a homology vector")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, default=1)
    p.add_argument("vector", help="JSON array of length 2g")
    p.set_defaults(func=_cmd_section)

    p = sub.add_parser("rewrite", help="bounded rewrite certificate for a word")
    p.add_argument("--class", dest="nclass", type=int, required=True)
    p.add_argument("--section", choices=["surface", "standard"], default="surface")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--punctures", type=int, default=1)
    p.add_argument("--rank", type=int, help="free rank for --section standard")
    p.add_argument("--n0", type=int, help="l1 bound served by --section standard")
    p.add_argument("word")
    p.set_defaults(func=_cmd_rewrite)

    p = sub.add_parser("diameter", help="BFS coverage of a box in a nilpotent quotient")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--punctures", type=int, default=1)
    p.add_argument("--class", dest="nclass", type=int, required=True)
    p.add_argument("--height", type=int, required=True, help="max(|p|,|q|) of the curves used")
    p.add_argument("--box", type=int, required=True, help="box radius M on Mal'cev coordinates")
    p.add_argument("--max-radius", type=int, default=6)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-states", type=int, default=5_000_000)
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-determinism)")
    p.set_defaults(func=_cmd_diameter)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except (NilboundError, ValueError, ArithmeticError, OSError) as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    text = result if isinstance(result, str) else dumps(result) + "\n"
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
