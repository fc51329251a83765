"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from . import classifier, genus, lambda_ring, symfun

SCHEMA = 1


@dataclass
class Config:
    n_max: int = symfun.N_MAX
    nm_max: int = symfun.NM_MAX
    p_max: int = genus.DEFAULT_P_MAX
    bound: int = 100
    format: str = "text"
    seed: int = 0
    samples: int = 100
    timing: bool = False

    def __post_init__(self):
        for name in ("n_max", "nm_max", "p_max", "bound", "samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")


class UsageError(Exception):
    pass


def _emit(cfg: Config, payload: dict, text: str, out) -> None:
    if cfg.format == "json":
        payload = {"schema": SCHEMA, **payload}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def cmd_universal(cfg: Config, kind: str, n: int, m: Optional[int], out) -> int:
    if kind == "product":
        if m is not None:
            raise UsageError("'universal product' takes a single degree n")
        if not 1 <= n <= cfg.n_max:
            raise UsageError(f"n = {n} exceeds the degree cap n_max = {cfg.n_max} (--n-max)")
        up = symfun.universal_product(n)
    else:
        if m is None:
            raise UsageError("'universal compose' needs n and m")
        if n < 1 or m < 1 or n * m > cfg.nm_max:
            raise UsageError(f"n*m = {n * m} exceeds the degree cap nm_max = {cfg.nm_max} (--nm-max)")
        up = symfun.universal_compose(n, m)
    label = f"P_{n}" if kind == "product" else f"P_{n},{m}"
    _emit(cfg, up.to_json(), f"{label} = {up.to_text()}", out)
    return 0


def cmd_adams(cfg: Config, k: int, out) -> int:
    if k < 1:
        raise UsageError("Adams index k must be >= 1")
    f = lambda_ring.newton_adams_formula(k)
    _emit(cfg, {"k": k, "text": f.to_text()}, f"psi^{k} = {f.to_text()}", out)
    return 0


def _suite_axioms(cfg: Config):
    reports = [
        lambda_ring.check_axioms(lambda_ring.BinomialZ(), cfg.samples, min(cfg.n_max, 4),
                                 cfg.nm_max, cfg.seed),
        lambda_ring.check_axioms(lambda_ring.LineSumRing(4, 6), cfg.samples, 3,
                                 cfg.nm_max, cfg.seed),
    ]
    return all(r.passed for r in reports), [r.to_json() for r in reports]


def _suite_adams(cfg: Config):
    reports = [
        lambda_ring.check_adams_properties(lambda_ring.BinomialZ(), samples=cfg.samples,
                                           seed=cfg.seed),
        lambda_ring.check_adams_properties(lambda_ring.LineSumRing(3, 6), samples=cfg.samples,
                                           seed=cfg.seed),
    ]
    return all(r.passed for r in reports), [r.to_json() for r in reports]


def _suite_genus(cfg: Config):
    checks = {}
    checks["rector_table"] = all(
        genus.rector_pair(a) == genus.RECTOR_TABLE[min(a, 24 - a)] for a in genus.ALLOWED_RESIDUES)
    rejected = 0
    for a in range(24):
        if a in genus.ALLOWED_RESIDUES:
            continue
        try:
            genus.rector_pair(a)
        except genus.ForbiddenResidue:
            rejected += 1
    checks["forbidden_residues_rejected"] = rejected == 16
    checks["shift_preserves_a_mod_24"] = all(
        genus.representative_shift(genus.KOModel(a), m).a == a + 24 * m
        for a in genus.ALLOWED_RESIDUES for m in range(-5, 6))
    checks["flip_negates_a"] = all(
        genus.orientation_flip(genus.KOModel(a)).a == -a for a in genus.ALLOWED_RESIDUES)
    checks["psi_p_leading_term"] = True
    for p in [q for q in (3, 5, 7, 11, 13) if q <= max(cfg.p_max, 3)]:
        for s in (1, -1):
            M = genus.KModel(p, s)
            got = genus.psi_p_K(M, 1)
            want = genus.MultiPoly({(M.top,): 2 * s * p}, 1, M.modulus)
            checks["psi_p_leading_term"] &= got == want
    ok = all(checks.values())
    return ok, [{"title": "genus", "passed": ok, "checks": checks}]


def _suite_theorem(cfg: Config):
    primes = [p for p in (3, 5, 7) if p <= max(cfg.p_max, 3)]
    rep = classifier.theorem_reproduction(cfg.bound, primes, seed=cfg.seed)
    return rep.passed, [rep.to_json(cfg.timing)]


SUITES = {"axioms": _suite_axioms, "adams": _suite_adams, "genus": _suite_genus,
          "theorem": _suite_theorem}


def cmd_verify(cfg: Config, suite: str, out) -> int:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    ok, reports = SUITES[suite](cfg)
    lines = [f"verify {suite}: {'PASS' if ok else 'FAIL'}"]
    for rep in reports:
        if "ko_table" in rep:
            eq = sum(v["equivalent"] for v in rep["ko_table"])
            lines.append(f"  KO table: {len(rep['ko_table'])} residue pairs, {eq} intertwinable")
            for v in rep["kp_table"]:
                lines.append(f"  K p={v['p']} (sX,sY)=({v['sX']:+d},{v['sY']:+d}): "
                             f"{'intertwiner' if v['exists'] else 'none'} "
                             f"[{v['mode']}, {v['scanned']} candidates]")
            lines.append(f"  genus pairs checked: {rep['genus_pairs_checked']}, "
                         f"mismatches: {len(rep['mismatches'])}")
        elif "instance" in rep:
            for c in rep["checks"]:
                lines.append(f"  {rep['instance']} {c['name']}: {c['status']} ({c['checked']})")
        else:
            for name, passed in rep["checks"].items():
                lines.append(f"  {name}: {'pass' if passed else 'fail'}")
    payload = {"suite": suite, "passed": ok, "seed": cfg.seed, "config": asdict(cfg),
               "reports": reports}
    _emit(cfg, payload, "\n".join(lines), out)
    return 0 if ok else 1


def _load_point(path: str) -> genus.GenusPoint:
    try:
        with open(path, encoding="utf-8") as fh:
            return genus.GenusPoint.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_compare(cfg: Config, file_x: str, file_y: str, out) -> int:
    P, Q = _load_point(file_x), _load_point(file_y)
    if P.p_max != Q.p_max:
        raise UsageError(f"p_max mismatch: {P.p_max} vs {Q.p_max}")
    res = classifier.compare(P, Q, cfg.bound)
    if res["equivalent"]:
        w = res["witness"]
        text = f"equivalent (KO witness eps={w['eps']:+d}, sigma2'={w['sigma2_prime']})"
    else:
        d = res["distinguished_by"]
        text = f"inequivalent: (X/{d['prime']}) = {d['X']:+d} vs (Y/{d['prime']}) = {d['Y']:+d}"
    _emit(cfg, res, text, out)
    return 0


def cmd_genus(cfg: Config, a: int, flips: List[int], out) -> int:
    base = genus.bs3(cfg.p_max)
    try:
        pt = genus.canonicalize(a, base.sign_map, cfg.p_max)
        for p in flips:
            pt = pt.with_sign(p, -pt.sign_map[p])
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    out.write(pt.dumps() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=symfun.N_MAX)
    common.add_argument("--nm-max", type=int, default=symfun.NM_MAX)
    common.add_argument("--p-max", type=int, default=genus.DEFAULT_P_MAX)
    common.add_argument("--bound", type=int, default=100, help="KO search bound on |sigma2'|")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--timing", action="store_true", help="include runtimes in reports")

    parser = argparse.ArgumentParser(prog="lambdagenus",
                                     description="λ-rings, Adams operations and the genus of BS^3")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("universal", parents=[common], help="print P_n or P_{n,m}")
    p.add_argument("kind", choices=("product", "compose"))
    p.add_argument("n", type=int)
    p.add_argument("m", type=int, nargs="?")

    p = sub.add_parser("adams", parents=[common], help="print psi^k in lambda symbols")
    p.add_argument("k", type=int)

    p = sub.add_parser("verify", parents=[common], help="run a check suite")
    p.add_argument("suite")

    p = sub.add_parser("compare", parents=[common], help="compare two genus points")
    p.add_argument("file_x")
    p.add_argument("file_y")

    p = sub.add_parser("genus", parents=[common], help="write a genus point as JSON")
    p.add_argument("--a", type=int, default=1, help="a(X), any allowed residue")
    p.add_argument("--flip", type=int, action="append", default=[],
                   help="negate (X/p) for this prime >= 5 (repeatable)")
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    if out is None:
        out = sys.stdout
        if hasattr(out, "reconfigure"):
            out.reconfigure(encoding="utf-8", line_buffering=True)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(args.n_max, args.nm_max, args.p_max, args.bound, args.format, args.seed,
                     args.samples, args.timing)
        if args.command == "universal":
            return cmd_universal(cfg, args.kind, args.n, args.m, out)
        if args.command == "adams":
            return cmd_adams(cfg, args.k, out)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, out)
        if args.command == "compare":
            return cmd_compare(cfg, args.file_x, args.file_y, out)
        return cmd_genus(cfg, args.a, args.flip, out)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"lambdagenus: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
