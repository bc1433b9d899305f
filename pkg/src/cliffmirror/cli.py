"""Command-line driver: ``cmirror <subcommand> INPUT [flags]``.

INPUT is a JSON file (``-`` for stdin) holding ``{"rays": [...]}`` for a
cone or ``{"vertices": [...]}`` for a lattice polytope, or one of the
built-in names ``square``, ``exe`` (square plus square) and ``orthant:N``.

Exit codes: 0 success, 1 input error, 2 non-reflexive input, 3 identity
failure or invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any

from .cones import GorensteinPair, check_reflexive_pair, cone_from_json, cone_over_polytope, orthant
from .decomp import Decomposition, enumerate_decompositions, validate
from .fans import Triangulation, build_central_triangulation, check_centrality, quotient_maximal_cones
from .laurent import substitute
from .mirror import (
    InvariantBreach,
    bpf_witnesses,
    build_potential,
    character_data,
    flatness_check,
    verify_semiinvariance,
)
from .quadric import corank_at, degeneration_divisor, even_clifford, gram_matrix
from .square import exe_pair, reproduce_exe, square_pair

EXIT_OK, EXIT_INPUT, EXIT_NOT_REFLEXIVE, EXIT_BREACH = 0, 1, 2, 3
SYMBOLIC_CLIFFORD_MAX = 4  # fiber rank up to which the table is kept over the base ring
CORANK_SAMPLES = 4


class InputError(Exception):
    pass


class NotReflexive(Exception):
    pass


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def load_pair(source: str) -> tuple[GorensteinPair, dict]:
    """Resolve INPUT to a reflexive pair plus an echo of the input."""
    if source == "square":
        return square_pair(), {"builtin": "square"}
    if source == "exe":
        return exe_pair(), {"builtin": "exe"}
    if source.startswith("orthant:"):
        try:
            n = int(source.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad orthant rank in {source!r}") from None
        if n < 1:
            raise InputError("orthant rank must be positive")
        cone, echo = orthant(n), {"builtin": source}
    else:
        try:
            text = sys.stdin.read() if source == "-" else open(source).read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
        if not isinstance(data, dict):
            raise InputError("input must be a JSON object")
        try:
            if "rays" in data:
                cone = cone_from_json(data)
            elif "vertices" in data:
                cone = cone_over_polytope(data["vertices"])
            else:
                raise InputError('input needs "rays" or "vertices"')
        except (ValueError, TypeError, KeyError, IndexError) as exc:
            raise InputError(f"invalid cone data: {exc}") from None
        echo = data
    pair = check_reflexive_pair(cone)
    if pair is None:
        raise NotReflexive("cone is not reflexive Gorenstein")
    return pair, echo


def resolve_seed(value: int | None) -> int:
    if value is None:
        env = os.environ.get("CMIRROR_SEED")
        if env is None:
            return 0
        try:
            value = int(env)
        except ValueError:
            raise InputError(f"CMIRROR_SEED is not an integer: {env!r}") from None
    if not 0 <= value < 2**64:
        raise InputError("seed must be an unsigned 64-bit integer")
    return value


# -- per-decomposition pipeline ---------------------------------------------


def _quadric_summary(P, T: Triangulation | None, chart: int, seed: int) -> dict:
    if T is not None and 0 <= chart < len(T.simplices):
        QF = gram_matrix(P, chart=chart, triangulation=T)
        chart_used: Any = chart
    else:
        QF = gram_matrix(P)
        chart_used = None
    D = degeneration_divisor(QF)
    rng = random.Random(seed)
    coranks = []
    for _ in range(CORANK_SAMPLES):
        point = {v: Fraction(rng.randint(1, 97), rng.randint(1, 97)) for v in QF.base_vars}
        coranks.append(corank_at(QF, point))
    return {
        "chart": chart_used,
        "chart_substitution": dict(QF.chart),
        "base_vars": list(QF.base_vars),
        "gram": QF.to_json()["gram"],
        "degeneration_divisor": str(D),
        "divisor_degree": max(D.total_degree(QF.base_vars) or {0}),
        "sampled_coranks": coranks,
    }, QF


def analyze_decomposition(pair: GorensteinPair, d: Decomposition, seed: int, chart: int) -> dict:
    out: dict[str, Any] = {"decomposition": d.to_json(), "validation": validate(pair, d).to_json()}
    T = build_central_triangulation(pair, d, seed=seed)
    if T is None:
        out["triangulation"] = None
        out["centrality"] = "not found"
    else:
        out["triangulation"] = T.to_json()
        out["centrality"] = check_centrality(T, d)
        out["regular"] = T.weights is not None
        out["quotient_cones"] = [[list(n) for n in c] for c in quotient_maximal_cones(T, d)]
    P = build_potential(pair, d, seed=seed)
    out["potential"] = {"C": str(P.C), "C1": str(P.C1), "C2": str(P.C2), "f": [str(f) for f in P.f]}
    cd = character_data(pair, d)
    out["characters"] = cd.to_json()
    sem = verify_semiinvariance(P, cd)
    out["semiinvariance"] = sem.to_json()
    if not sem.ok:
        raise InvariantBreach(f"semiinvariance fails for {d}: {sem.failures()[:3]}")
    if T is not None:
        out["bpf_witnesses"] = len(bpf_witnesses(pair, d, T))
    if d.r >= 1:
        if T is not None:
            out["flatness"] = flatness_check(pair, d, T, seed=seed).to_json()
        q, _ = _quadric_summary(P, T, chart, seed)
        out["quadric"] = q
        out["clifford_dimension"] = 2 ** (2 * d.r - 1)
    return out


def analyze(pair: GorensteinPair, echo: dict, seed: int, r_min: int, r_max: int | None, chart: int) -> dict:
    ds = enumerate_decompositions(pair, r_min, r_max)
    return {
        "input": echo,
        "seed": seed,
        "pair": pair.summary(),
        "decompositions": [d.to_json() for d in ds],
        "results": [analyze_decomposition(pair, d, seed, chart) for d in ds],
    }


def summarize(report: dict) -> str:
    p = report["pair"]
    lines = [
        f"pair: rank {p['rank']}, index {p['index']}, "
        f"|K(1)| = {p['slice_K1_size']}, |K^vee(1)| = {p['slice_Kdual1_size']}",
        f"decompositions: {len(report['decompositions'])}",
    ]
    for res in report["results"]:
        d = Decomposition.from_json(res["decomposition"])
        lines.append(f"  r={d.r}: {d}")
        tri = res["triangulation"]
        if tri is None:
            lines.append("    central regular triangulation: not found")
        else:
            lines.append(
                f"    triangulation: {len(tri['simplices'])} simplices, regular={res['regular']}, "
                f"central={res['centrality']}"
            )
        lines.append(f"    semiinvariance: {'ok' if res['semiinvariance']['ok'] else 'FAILED'}")
        if "bpf_witnesses" in res:
            lines.append(f"    base-point-freeness witnesses: {res['bpf_witnesses']}")
        if "flatness" in res:
            lines.append(f"    flatness: {res['flatness']['verdict']}")
        if "quadric" in res:
            q = res["quadric"]
            lines.append(
                f"    quadric: divisor degree {q['divisor_degree']}, sampled coranks {q['sampled_coranks']}, "
                f"even Clifford dimension {res['clifford_dimension']}"
            )
    return "\n".join(lines)


# -- subcommands -----------------------------------------------------------


def _pick(ds: list[Decomposition], index: int | None) -> list[Decomposition]:
    if index is None:
        return ds
    if not 0 <= index < len(ds):
        raise InputError(f"decomposition index {index} out of range 0..{len(ds) - 1}")
    return [ds[index]]


def cmd_analyze(args) -> tuple[dict, str]:
    pair, echo = load_pair(args.input)
    rep = analyze(pair, echo, args.seed, args.r_min, args.r_max, args.chart)
    return rep, summarize(rep)


def cmd_decompose(args) -> tuple[dict, str]:
    pair, echo = load_pair(args.input)
    ds = enumerate_decompositions(pair, args.r_min, args.r_max)
    rep = {"input": echo, "pair": pair.summary(), "decompositions": [d.to_json() for d in ds]}
    text = "\n".join([f"{len(ds)} decompositions"] + [f"  [{i}] r={d.r}: {d}" for i, d in enumerate(ds)])
    return rep, text


def cmd_triangulate(args) -> tuple[dict, str]:
    pair, echo = load_pair(args.input)
    ds = _pick(enumerate_decompositions(pair, args.r_min, args.r_max), args.decomposition)
    items, lines = [], []
    for d in ds:
        T = build_central_triangulation(pair, d, seed=args.seed)
        items.append({"decomposition": d.to_json(), "triangulation": None if T is None else T.to_json()})
        lines.append(f"{d}: " + ("not found" if T is None else f"{len(T.simplices)} simplices"))
    return {"input": echo, "triangulations": items}, "\n".join(lines)


def cmd_potential(args) -> tuple[dict, str]:
    pair, echo = load_pair(args.input)
    ds = _pick(enumerate_decompositions(pair, args.r_min, args.r_max), args.decomposition)
    items, lines = [], []
    for d in ds:
        P = build_potential(pair, d, seed=args.seed)
        items.append(
            {"decomposition": d.to_json(), "C": str(P.C), "C1": str(P.C1), "C2": str(P.C2), "f": [str(f) for f in P.f]}
        )
        lines.append(f"{d}:\n  C  = {P.C}\n  C2 = {P.C2}")
        lines.extend(f"  f{i + 1} = {f}" for i, f in enumerate(P.f))
    return {"input": echo, "seed": args.seed, "potentials": items}, "\n".join(lines)


def _r_positive(pair, args) -> list[Decomposition]:
    r_min = max(args.r_min, 1)
    if args.r_max is not None and args.r_max < r_min:
        raise InputError("need r >= 1 for a quadric")
    if r_min > pair.index:
        raise InputError("no decomposition with r >= 1")
    return _pick(enumerate_decompositions(pair, r_min, args.r_max), args.decomposition)


def cmd_quadric(args) -> tuple[dict, str]:
    pair, echo = load_pair(args.input)
    items, lines = [], []
    for d in _r_positive(pair, args):
        P = build_potential(pair, d, seed=args.seed)
        T = build_central_triangulation(pair, d, seed=args.seed)
        q, _ = _quadric_summary(P, T, args.chart, args.seed)
        items.append({"decomposition": d.to_json(), **q})
        lines.append(f"{d}: det = {q['degeneration_divisor']}")
    if not items:
        lines.append("no decomposition with r >= 1")
    return {"input": echo, "seed": args.seed, "quadrics": items}, "\n".join(lines)


def cmd_clifford(args) -> tuple[dict, str]:
    pair, echo = load_pair(args.input)
    items, lines = [], []
    for d in _r_positive(pair, args):
        P = build_potential(pair, d, seed=args.seed)
        T = build_central_triangulation(pair, d, seed=args.seed)
        _, QF = _quadric_summary(P, T, args.chart, args.seed)
        gram: Any = QF.gram
        point = None
        if QF.fiber_rank > SYMBOLIC_CLIFFORD_MAX:
            rng = random.Random(args.seed)
            point = {v: Fraction(rng.randint(1, 97), rng.randint(1, 97)) for v in QF.base_vars}
            gram = [[substitute(e, point).constant_value() for e in row] for row in QF.gram]
        A = even_clifford(gram)
        items.append({"decomposition": d.to_json(), "specialized_at": point, **A.to_json()})
        lines.append(f"{d}: even Clifford algebra of dimension {A.dimension}")
    return {"input": echo, "seed": args.seed, "algebras": items}, "\n".join(lines)


def cmd_reproduce_exe(args) -> tuple[dict, str]:
    mutate = {(1, 1): Fraction(args.mutate)} if args.mutate is not None else None
    rep = reproduce_exe(args.seed, mutate)
    js = rep.to_json()
    idn = rep.identity
    lines = [
        f"direct sum index: {rep.index}",
        f"decompositions found: {len(rep.decompositions)}",
        f"three displayed decompositions present: {all(rep.reference_found)}",
        f"ramification identity: {idn.verdict}" + (f" (mu = {idn.mu}, e = {idn.exponent})" if idn.mu is not None else ""),
        f"other projection: {rep.identity_other.verdict}",
    ]
    if idn.verdict != "PASS":
        lines += [f"D1 = {idn.D1}", f"D2 = {idn.D2}"]
    return js, "\n".join(lines)


EXPORTS = ("cone", "pair", "decompositions", "triangulation", "potential", "gram", "clifford")


def cmd_export(args) -> tuple[dict, str]:
    entity = args.entity
    if entity not in EXPORTS:
        raise InputError(f"unknown entity {entity!r}; choose from {', '.join(EXPORTS)}")
    pair, echo = load_pair(args.input)
    if entity == "cone":
        data: Any = {"K": pair.K.to_json(), "K_dual": pair.K_dual.to_json()}
        text = json.dumps(data, sort_keys=True)
    elif entity == "pair":
        data = pair.summary()
        text = json.dumps(data, sort_keys=True)
    elif entity == "decompositions":
        data = [d.to_json() for d in enumerate_decompositions(pair, args.r_min, args.r_max)]
        text = "\n".join(str(Decomposition.from_json(d)) for d in data)
    elif entity in ("triangulation", "potential"):
        ds = _pick(enumerate_decompositions(pair, args.r_min, args.r_max), args.decomposition or 0)
        d = ds[0]
        if entity == "triangulation":
            T = build_central_triangulation(pair, d, seed=args.seed)
            data = None if T is None else T.to_json()
            text = json.dumps(data, sort_keys=True)
        else:
            P = build_potential(pair, d, seed=args.seed)
            data = {"C": str(P.C), "C1": str(P.C1), "C2": str(P.C2), "f": [str(f) for f in P.f]}
            text = "\n".join([str(P.C)] if d.r else [str(f) for f in P.f])
    else:
        sub = cmd_quadric(args) if entity == "gram" else cmd_clifford(args)
        data, text = sub
    report = {"entity": entity, "input": echo, "data": data}
    if args.output:
        payload = dumps(report) if args.format == "json" else text + "\n"
        with open(args.output, "w") as fh:
            fh.write(payload)
    return report, text


# -- entry point -----------------------------------------------------------


INPUT_HELP = "square, exe, orthant:N, a JSON file with \"rays\" or \"vertices\", or - for stdin"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="u64 seed (falls back to CMIRROR_SEED, then 0)")
    common.add_argument("--r-min", type=int, default=0, help="smallest r to consider")
    common.add_argument("--r-max", type=int, default=None, help="largest r (defaults to the index)")
    common.add_argument("--chart", type=int, default=0, help="maximal simplex index used as affine chart")
    common.add_argument("--json", metavar="PATH", default=None, help="write the JSON report here ('-' for stdout)")
    common.add_argument("--decomposition", type=int, default=None, help="restrict to one decomposition index")

    parser = argparse.ArgumentParser(prog="cmirror", description="Clifford double mirror toolkit")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("analyze", cmd_analyze, "run every construction and check"),
        ("decompose", cmd_decompose, "enumerate degree decompositions"),
        ("triangulate", cmd_triangulate, "central regular triangulations"),
        ("potential", cmd_potential, "potential and its split"),
        ("quadric", cmd_quadric, "Gram matrices and degeneration divisors"),
        ("clifford", cmd_clifford, "even Clifford multiplication tables"),
    ):
        p = subs.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input", help=INPUT_HELP)
        p.set_defaults(func=fn)
    p = subs.add_parser("reproduce-exe", parents=[common], help="the square example and its direct sum")
    p.add_argument("--mutate", default=None, help="replace a11 in the curve only (negative control)")
    p.set_defaults(func=cmd_reproduce_exe)
    p = subs.add_parser("export", parents=[common], help="write one entity to a file")
    p.add_argument("entity", help=", ".join(EXPORTS))
    p.add_argument("input", help=INPUT_HELP)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.seed = resolve_seed(args.seed)
        if args.r_min < 0 or (args.r_max is not None and args.r_max < args.r_min):
            raise InputError("need 0 <= r-min <= r-max")
        report, text = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotReflexive as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_REFLEXIVE
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json == "-":
        sys.stdout.write(dumps(report))
    else:
        if not getattr(args, "output", None):
            print(text)
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(dumps(report))
    if args.command == "reproduce-exe" and report.get("verdict") != "PASS":
        return EXIT_BREACH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
