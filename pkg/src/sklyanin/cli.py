"""Command-line front end emitting deterministic JSON documents."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import SklyaninError
from .exactfield import DEFAULT_CONDUCTOR, parse_cycnum
from .freealg import scalar_str
from .params import SklyaninParams

DEFAULT_ORDER_CAP = 12


@dataclass
class RunConfig:
    params: SklyaninParams | None
    conductor: int = DEFAULT_CONDUCTOR
    degree_cap: int | None = None
    order_cap: int = DEFAULT_ORDER_CAP
    direction: tuple = (0, 0, 1)
    out: str | None = None
    threads: int = 1


def _scalars(text: str, m: int) -> list:
    vals = []
    for part in text.split(","):
        v = parse_cycnum(part, m)
        vals.append(v.to_fraction() if v.is_rational() else v)
    return vals


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


_CENTERS: dict = {}


def _center_for(params):
    from .center import compute_center
    if params not in _CENTERS:
        _CENTERS[params] = compute_center(params)
    return _CENTERS[params]


def _center(cfg: RunConfig):
    return _center_for(cfg.params)


def cmd_sigma_order(cfg, args):
    from .curve import sigma_order
    n = sigma_order(cfg.params, cap=cfg.order_cap)
    return {"order": n, "order_cap": cfg.order_cap}, n is not None


def cmd_hilbert(cfg, args):
    from .freealg import hilbert_dims
    d = cfg.degree_cap if cfg.degree_cap is not None else 10
    dims = hilbert_dims(cfg.params, d)
    expected = [(k + 1) * (k + 2) // 2 for k in range(d + 1)]
    return {"degree_cap": d, "dims": dims, "matches_polynomial_ring": dims == expected}, dims == expected


def cmd_center(cfg, args):
    return _center(cfg).to_json(), True


def cmd_bracket(cfg, args):
    from .poisson import bracket_from_F
    return bracket_from_F(_center(cfg).F).to_json(), True


def cmd_jacobi(cfg, args):
    from .poisson import bracket_from_F, casimir_check, jacobi_residues
    ps = bracket_from_F(_center(cfg).F)
    res = jacobi_residues(ps)
    ok = all(not r for r in res)
    cas = casimir_check(ps)
    return {"jacobi_residues": [r.to_json() for r in res], "jacobi_ok": ok, "g_casimir": cas}, ok and cas


def cmd_specialize(cfg, args):
    from .specialize import DEFAULT_MAX_ROUNDS, specialize
    res, _, _ = specialize(cfg.params, cfg.direction, max_rounds=args.max_rounds or DEFAULT_MAX_ROUNDS)
    doc = res.to_json()
    doc["direction"] = [scalar_str(x) for x in cfg.direction]
    return doc, res.eta is not None and res.eta != 0


def _point(args, m):
    if not args.point:
        raise ValueError("--point z1,z2,z3,g is required")
    return _scalars(args.point, m)


def cmd_classify(cfg, args):
    from .strata import azumaya_test, classify_stratum, expected_irrep_profile
    cp = _center(cfg)
    p = _point(args, cfg.conductor)
    st = classify_stratum(cp, p)
    return {**st.to_json(), "azumaya": azumaya_test(cp, p), "expected_dims": expected_irrep_profile(cp, p)}, True


def cmd_slice_singulars(cfg, args):
    from .strata import slice_singulars
    cp = _center(cfg)
    gamma = _scalars(args.gamma, cfg.conductor)[0]
    pts = sorted((list(map(scalar_str, p.coords)) for p in slice_singulars(cp, gamma)))
    return {"gamma": scalar_str(gamma), "points": pts, "count": len(pts)}, True


def cmd_verify_rep(cfg, args):
    from .reps import bundled_rep, load_rep, report
    if args.file:
        rep, params = load_rep(args.file, cfg.conductor)
    else:
        rep, params = bundled_rep()
    params = params or cfg.params
    if params is None:
        raise ValueError("the representation file names no parameters; pass --params")
    cp = _center_for(params)
    try:
        rr = report(rep, cp)
        doc = rr.to_json()
        ok = rr.relations_ok and rr.irreducible and rr.consistent
    except SklyaninError as exc:
        doc = {"error": str(exc)}
        ok = False
    doc["dimension"] = rep.dim
    doc["params"] = [scalar_str(x) for x in params.triple]
    return doc, ok


def cmd_discriminant(cfg, args):
    from .strata import discriminant_zero_set
    cp = _center(cfg)
    ks = [args.k] if args.k else [1, 2, cp.n * cp.n]
    return {"n": cp.n, "zero_sets": {str(k): str(discriminant_zero_set(cp, k)) for k in ks}}, True


def cmd_figure1(cfg, args):
    from .strata import figure1_svg
    cp = _center(cfg)
    gammas = [Fraction(x) for x in args.gammas.split(",")] if args.gammas else (-2, -1, 0, 1, 2)
    return figure1_svg(cp, gammas), True


COMMANDS = {
    "sigma-order": cmd_sigma_order,
    "hilbert": cmd_hilbert,
    "center": cmd_center,
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "specialize": cmd_specialize,
    "classify": cmd_classify,
    "slice-singulars": cmd_slice_singulars,
    "verify-rep": cmd_verify_rep,
    "discriminant": cmd_discriminant,
    "figure1": cmd_figure1,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="a,b,c as exact scalars (polynomials in z = zeta_m allowed)")
    common.add_argument("--conductor", type=int, default=DEFAULT_CONDUCTOR)
    common.add_argument("--degree-cap", type=int)
    common.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
    common.add_argument("--direction", default="0,0,1")
    common.add_argument("--out")
    common.add_argument("--json", action="store_true", help="emit JSON (the default; kept for scripts)")
    parser = argparse.ArgumentParser(prog="sklyanin", description="Exact computations for PI Sklyanin algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "specialize":
            p.add_argument("--max-rounds", type=int)
        if name == "classify":
            p.add_argument("--point")
        if name == "slice-singulars":
            p.add_argument("--gamma", required=True)
        if name == "verify-rep":
            p.add_argument("--file")
        if name == "discriminant":
            p.add_argument("--k", type=int)
        if name == "figure1":
            p.add_argument("--gammas")
    return parser


def make_config(args) -> RunConfig:
    m = args.conductor
    params = SklyaninParams.parse(args.params, m) if args.params else None
    direction = tuple(_scalars(args.direction, m))
    if len(direction) != 3:
        raise ValueError("--direction needs three entries")
    threads = int(os.environ.get("SKLYANIN_THREADS", "1") or 1)
    return RunConfig(params, m, args.degree_cap, args.order_cap, direction, args.out, max(threads, 1))


def run(argv=None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        if cfg.params is None and args.command != "verify-rep":
            raise ValueError("--params a,b,c is required")
        doc, ok = COMMANDS[args.command](cfg, args)
    except (SklyaninError, ValueError, ZeroDivisionError) as exc:
        return _dump({"error": type(exc).__name__, "message": str(exc)}), 2
    text = doc if isinstance(doc, str) else _dump(doc)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    return text, 0 if ok else 1


def main(argv=None) -> int:
    text, code = run(argv)
    stream = sys.stderr if code == 2 else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
