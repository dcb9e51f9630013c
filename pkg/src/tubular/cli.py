"""Command line: ``tubular <group> <command> ...``.

Exit status 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures as fx
from .constructions import (
    build_ASnm,
    one_point_coextension,
    one_point_extension,
    repetitive_window,
    socle_quotient,
    trivial_extension,
)
from .covering import (
    check_covering,
    galois_covering,
    lift_morphism,
    projective_module,
    push_down,
    reassemble,
    window_objects,
)
from .exact_linear import format_scalar
from .quiver_algebra import Quiver, Relation, build_algebra, ext_quiver
from .registry import REGISTRY, _algebra_dot
from .representation import (
    Representation,
    ar_translate,
    hom_space,
    indecomposability,
)
from .tube import TubeVertex, build_gamma, maximal_corays, maximal_rays, to_dot, validate
from .ziegler import (
    SymbolicSubset,
    ZgPoint,
    ZgSpace,
    cover_Ei,
    cover_galois,
    cover_trivial_extension,
)


class BadInput(Exception):
    pass


class VerificationFailed(Exception):
    pass


def _algebra_by_name(name: str):
    builders = {
        "kronecker": fx.kronecker,
        "kronecker-S22": lambda: fx.kronecker_S22().algebra,
        "canonical-333": fx.canonical_333,
        "e6": fx.e6_hereditary,
        "e6-extension": lambda: fx.e6_extension().algebra,
        "a-x11": lambda: fx.a_x11().algebra,
    }
    if name not in builders:
        raise BadInput(f"unknown algebra {name!r}; known: {', '.join(sorted(builders))}")
    return builders[name]()


def _load_json(text: str):
    """Inline JSON, or @path / a path to a JSON file."""
    if text.startswith("@"):
        text = text[1:]
    p = Path(text)
    try:
        if p.exists():
            return json.loads(p.read_text())
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInput(f"cannot parse JSON: {exc}") from exc


def _load_algebra(args):
    if getattr(args, "example", None):
        return _algebra_by_name(args.example)
    if getattr(args, "quiver", None):
        q = Quiver.from_json(_load_json(args.quiver))
        rels = [Relation.from_json(q, r) for r in _load_json(args.relations)] if args.relations else []
        return build_algebra(q, rels)
    raise BadInput("give --example NAME or --quiver FILE")


def _levels(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as exc:
        raise BadInput(f"levels must look like lo..hi, got {text!r}") from exc


def _emit(args, payload, dot: str | None = None) -> None:
    if getattr(args, "emit", "json") == "dot":
        if dot is None:
            raise BadInput("this command has no DOT output")
        text = dot
    else:
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_algebra(args) -> int:
    A = _load_algebra(args)
    if args.action == "ext-quiver":
        eq = ext_quiver(A)
        _emit(args, eq.quiver.to_json(), _algebra_dot(eq.quiver, A.name or "algebra"))
    else:
        _emit(args, A.to_json(), _algebra_dot(A.quiver, A.name or "algebra"))
    return 0


def _load_module(A, text):
    return Representation.from_json(A, _load_json(text))


def cmd_rep(args) -> int:
    A = _load_algebra(args)
    M = _load_module(A, args.module)
    if args.action == "hom":
        if not args.target:
            raise BadInput("rep hom needs --target")
        N = _load_module(A, args.target)
        H = hom_space(M, N)
        _emit(args, {"dim": H.dim})
    elif args.action == "tau":
        _emit(args, ar_translate(M).to_json())
    else:
        _emit(args, {"verdict": indecomposability(M).name})
    return 0


def cmd_construct(args) -> int:
    if args.action == "trivext":
        T = trivial_extension(_load_algebra(args))
        _emit(args, {"dim": T.dim, "vertices": [str(v) for v in T.vertices],
                     "ext_quiver": ext_quiver(T).quiver.to_json()})
        return 0
    if args.action == "repwindow":
        lo, hi = _levels(args.levels)
        W = repetitive_window(_load_algebra(args), lo, hi)
        _emit(args, {"dim": W.algebra.dim, "objects": [list(map(str, x)) for x in W.algebra.vertices]})
        return 0
    if args.action == "socle":
        Q = socle_quotient(trivial_extension(_load_algebra(args)))
        _emit(args, {"dim": Q.dim})
        return 0
    if args.action == "asnm":
        if args.example != "kronecker-S22":
            A = _load_algebra(args)
            if not args.module:
                raise BadInput("asnm needs --module for algebras other than kronecker-S22")
            res = build_ASnm(A, _load_module(A, args.module), args.n, args.m)
        else:
            res = fx.kronecker_S22()
        B = res.algebra
        _emit(args, B.to_json(), _algebra_dot(B.quiver, "A[S,n,m]"))
        return 0
    A = _load_algebra(args)
    if not args.module:
        raise BadInput(f"{args.action} needs --module")
    X = _load_module(A, args.module)
    res = one_point_extension(A, X) if args.action == "ope" else one_point_coextension(A, X)
    _emit(args, res.algebra.to_json(), _algebra_dot(res.algebra.quiver, res.algebra.name or "extension"))
    return 0


def cmd_cover(args) -> int:
    R = _load_algebra(args)
    F = galois_covering(R, args.period)
    lo, hi = _levels(args.levels)
    W = window_objects(R, lo, hi)
    if args.action == "check":
        rep = check_covering(F, W)
        _emit(args, {"status": "pass" if rep.ok else "fail", "checked": rep.checked,
                     "failure": None if rep.failure is None else {k: str(v) for k, v in rep.failure.items()}})
        if not rep.ok:
            raise VerificationFailed("covering bijection fails")
        return 0
    if args.action == "lift":
        out = []
        for a1 in W:
            for b2 in F.target.vertices:
                for beta in F.target.hom(F.obj(a1), b2):
                    L = lift_morphism(F, {beta: 1}, a1, b2)
                    ok = reassemble(F, L) == {beta: 1}
                    out.append({"beta": F.target.labels[beta], "anchor": list(map(str, a1)), "ok": ok,
                                "components": {f"{a[0]}@{a[1]}": {str(k): format_scalar(c) for k, c in comp.items()}
                                               for a, comp in sorted(L.components.items(), key=repr)}})
        _emit(args, out)
        if not all(x["ok"] for x in out):
            raise VerificationFailed("a lift does not reassemble")
        return 0
    out = []
    for a in W:
        P = projective_module(F.source, a, window_objects(R, lo - 1, hi + 1))
        X = push_down(F, P)
        out.append({"projective": list(map(str, a)), "dims": {str(k): v for k, v in X.dims.items()},
                    "total": X.total_dim()})
    _emit(args, out)
    return 0


def cmd_tube(args) -> int:
    try:
        T = build_gamma(args.p, args.n, args.m, args.depth)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    if args.action == "rays":
        _emit(args, {"rays": [[str(v) for v in r.vertices] for r in maximal_rays(T)],
                     "corays": [[str(v) for v in c.vertices] for c in maximal_corays(T)]})
    elif args.action == "validate":
        rep = validate(T)
        _emit(args, {"status": "pass" if rep.ok else "fail", "problems": rep.problems})
        if not rep.ok:
            raise VerificationFailed("tube fails validation")
    else:
        if args.action == "dot":
            args.emit = "dot"
        _emit(args, T.to_json(), to_dot(T, f"Gamma({args.p},{args.n},{args.m})"))
    return 0


def _nbar(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise BadInput(f"bad tubular type {text!r}") from exc


def _cover_json(C) -> dict:
    def piece(pc):
        d = {"name": pc.name, "kind": pc.kind}
        if pc.params:
            d["params"] = list(pc.params)
        if pc.subpieces:
            d["subpieces"] = [piece(s) for s in pc.subpieces]
        return d
    return {"name": C.name, "pieces": [piece(pc) for pc in C.pieces],
            "identifications": [list(x) for x in C.identifications], "notes": C.notes}


def cmd_zg(args) -> int:
    if args.action == "cover":
        try:
            if args.family:
                C = cover_Ei(args.family, _nbar(args.type))
            elif args.period:
                C = cover_galois(_nbar(args.type), args.period)
            else:
                C = cover_trivial_extension(_nbar(args.type))
        except ValueError as exc:
            raise BadInput(str(exc)) from exc
        _emit(args, _cover_json(C))
        return 0
    Z = ZgSpace(args.p, args.n, args.m)
    if args.action == "cbrank":
        if args.point:
            pt = TubeVertex.parse(args.point) if "[" in args.point else ZgPoint.parse(args.point)
            _emit(args, {"point": str(pt), "rank": Z.cb_rank(pt)})
        else:
            _emit(args, {"space_rank": Z.space_rank()})
        return 0
    try:
        S = SymbolicSubset.from_json(_load_json(args.subset or "{}"), Z)
    except (KeyError, ValueError, TypeError) as exc:
        raise BadInput(f"bad subset: {exc}") from exc
    if args.action == "closure":
        _emit(args, Z.closure(S).to_json())
    else:
        _emit(args, {"closed": Z.is_closed(S)})
    return 0


def cmd_example(args) -> int:
    if args.name not in REGISTRY:
        raise BadInput(f"unknown example {args.name!r}; known: {', '.join(REGISTRY)}")
    entry = REGISTRY[args.name]
    obj = entry.build()
    if args.verify:
        checks = entry.checks(obj)
        ok = all(c.ok for c in checks)
        if args.json:
            sys.stdout.write(json.dumps({"status": "pass" if ok else "fail",
                                         "checks": [c.to_json() for c in checks]}, indent=2,
                                        ensure_ascii=False) + "\n")
        else:
            for c in checks:
                line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}  [{c.provenance}]"
                if not c.ok:
                    line += f"\n      expected: {c.to_json()['expected']}\n      got:      {c.to_json()['got']}"
                print(line)
        return 0 if ok else 1
    dot = entry.emit_dot(obj) if entry.emit_dot else None
    _emit(args, entry.emit_json(obj), dot)
    return 0


def cmd_list(args) -> int:
    for name, e in REGISTRY.items():
        print(f"{name:15s} {e.summary}")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tubular", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    def common(sp, emit=True):
        sp.add_argument("--example", help="named algebra")
        sp.add_argument("--quiver", help="quiver JSON (inline or file)")
        sp.add_argument("--relations", help="relation list JSON (inline or file)")
        if emit:
            sp.add_argument("--emit", choices=["json", "dot"], default="json")
        sp.add_argument("--out", help="write output to this file")

    sp = sub.add_parser("algebra", help="build a bound quiver algebra")
    sp.add_argument("action", choices=["build", "ext-quiver"])
    common(sp)
    sp.set_defaults(func=cmd_algebra)

    sp = sub.add_parser("rep", help="representations: hom, tau, indecomposability")
    sp.add_argument("action", choices=["hom", "tau", "indec"])
    common(sp, emit=False)
    sp.add_argument("--module", required=True)
    sp.add_argument("--target")
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("construct", help="extensions, trivial extension, repetitive windows")
    sp.add_argument("action", choices=["ope", "opc", "asnm", "trivext", "repwindow", "socle"])
    common(sp)
    sp.add_argument("--module")
    sp.add_argument("-n", type=int, default=1)
    sp.add_argument("-m", type=int, default=0)
    sp.add_argument("--levels", default="0..1")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("cover", help="Galois covering of the trivial extension and its powers")
    sp.add_argument("action", choices=["check", "lift", "pushdown"])
    common(sp, emit=False)
    sp.add_argument("--period", type=int, default=1)
    sp.add_argument("--levels", default="0..2")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("tube", help="the translation quivers Γ(p,n,m)")
    sp.add_argument("action", choices=["build", "rays", "dot", "validate"])
    sp.add_argument("-p", type=int, default=0)
    sp.add_argument("-n", type=int, default=0)
    sp.add_argument("-m", type=int, default=0)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--emit", choices=["json", "dot"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tube)

    sp = sub.add_parser("zg", help="symbolic closure of a tube and spectrum covers")
    sp.add_argument("action", choices=["closure", "isclosed", "cbrank", "cover"])
    sp.add_argument("-p", type=int, default=0)
    sp.add_argument("-n", type=int, default=0)
    sp.add_argument("-m", type=int, default=0)
    sp.add_argument("--subset", help='JSON like {"vertices": [["X",0,1]], "ray_tails": [{"ray": "X0", "from": 2}], '
                                     '"points": ["prufer:X0", "generic"]}')
    sp.add_argument("--point", help="X0[3], prufer:X0, adic:Y1[1] or generic")
    sp.add_argument("--family", choices=["E0", "E1", "E2"])
    sp.add_argument("--type", default="3,3,3")
    sp.add_argument("--period", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_zg)

    sp = sub.add_parser("example", help="named worked examples")
    sp.add_argument("name")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--json", action="store_true", help="machine-readable verification report")
    sp.add_argument("--emit", choices=["json", "dot"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("list", help="list named examples")
    sp.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (BadInput, KeyError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
