"""Decide equivalence of genus models by searching for Adams-compatible isomorphisms.

KO side: a candidate filtered ring isomorphism is fixed below filtration 9
by ``σ(x) = ε y + σ₂' ξ y²``; it intertwines ψ² iff the b_R y² coefficients
of ``σψ²(ξx)`` and ``ψ²σ(ξx)`` agree.

K side (odd p): a normalized candidate ``α(t) = t + c₂t² + ...`` over
``Z/p²`` intertwines ψ^p iff ``αψ^p_X(t) = ψ^p_Y α(t)`` in the truncated
model.  Both searches are finite and exhaustive within their bounds.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .genus import (ALLOWED_RESIDUES, BR, BR_P, X, XI, XI_P, X_P, GenusPoint, KModel, KOModel,
                    canonicalize, check_odd_prime, check_residue, odd_primes)
from .poly import MultiPoly


@dataclass(frozen=True)
class IsoCandidateKO:
    eps: int
    sigma2_prime: int
    eps_prime: Optional[int] = None

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be ±1")
        if self.eps_prime is None:
            object.__setattr__(self, "eps_prime", self.eps)
        elif self.eps_prime != self.eps:
            # ξσ(x) = σ(ξx) compares the ξy coefficients
            raise ValueError("eps_prime must equal eps")

    @property
    def sigma2(self) -> int:
        return 4 * self.sigma2_prime

    def image_of_x(self) -> MultiPoly:
        """σ(x) = ε'y + σ₂'ξy² (y reuses the x slot)."""
        return X_P.scale(self.eps_prime) + (XI_P * X_P ** 2).scale(self.sigma2_prime)

    def to_json(self):
        return {"eps": self.eps, "sigma2_prime": self.sigma2_prime, "sigma2": self.sigma2}


def _apply_sigma(M: KOModel, cand: IsoCandidateKO, v: MultiPoly) -> MultiPoly:
    # σ is a KO*-algebra map, so it fixes ξ and b_R
    return M.normalize(v.substitute({XI: XI_P, BR: BR_P, X: cand.image_of_x()}))


def ko_sides(aX: int, aY: int, cand: IsoCandidateKO, bR_x2_eigenvalue: int = 16):
    """Both sides ``σψ²(ξx)`` and ``ψ²σ(ξx)`` as coordinates on ``1, ξy, b_R y²``."""
    MX, MY = KOModel(aX), KOModel(aY)
    xi_x = XI_P * X_P
    lhs = _apply_sigma(MY, cand, MX.psi2(xi_x, bR_x2_eigenvalue))
    rhs = MY.psi2(_apply_sigma(MY, cand, xi_x), bR_x2_eigenvalue)
    return MY.coords(lhs), MY.coords(rhs)


def ko_intertwine_residue(aX: int, aY: int, cand: IsoCandidateKO,
                          bR_x2_eigenvalue: int = 16) -> int:
    """b_R y² coefficient of σψ²(ξx) − ψ²σ(ξx); zero iff σ intertwines ψ²."""
    lhs, rhs = ko_sides(aX, aY, cand, bR_x2_eigenvalue)
    if lhs[:2] != rhs[:2]:
        raise AssertionError(f"sides differ below b_R y²: {lhs} vs {rhs}")
    return lhs[2] - rhs[2]


@dataclass
class KOVerdict:
    aX: int
    aY: int
    equivalent: bool
    witness: Optional[IsoCandidateKO]
    bound: int
    scanned: int

    def to_json(self):
        out = {"aX": self.aX, "aY": self.aY, "equivalent": self.equivalent}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        else:
            out["certificate"] = {"eps": [1, -1], "sigma2_prime": [-self.bound, self.bound],
                                  "candidates_scanned": self.scanned}
        return out


def _scan_order(bound: int):
    # smallest |σ₂'| first, then ε = +1
    for size in range(bound + 1):
        for eps in (1, -1):
            for s in ((0,) if size == 0 else (size, -size)):
                yield IsoCandidateKO(eps, s)


def ko_solve(aX: int, aY: int, eps: int, bR_x2_eigenvalue: int = 16) -> Optional[int]:
    """Solve residue(σ₂') = 0 for fixed ε using linearity in σ₂'."""
    r0 = ko_intertwine_residue(aX, aY, IsoCandidateKO(eps, 0), bR_x2_eigenvalue)
    r1 = ko_intertwine_residue(aX, aY, IsoCandidateKO(eps, 1), bR_x2_eigenvalue)
    r2 = ko_intertwine_residue(aX, aY, IsoCandidateKO(eps, 2), bR_x2_eigenvalue)
    slope = r1 - r0
    if r2 - r1 != slope:
        raise AssertionError("residue is not linear in sigma2_prime")
    if slope == 0:
        return 0 if r0 == 0 else None
    if r0 % slope:
        return None
    return -r0 // slope


EPS_SLOT, S_SLOT = 3, 4


def _param_coords(v: MultiPoly):
    """Split a degree-0 element whose coefficients depend on (ε, σ₂') into
    three coefficient polynomials on 1, ξy, b_R y² (parameters in slots 0, 1)."""
    basis = {(0, 0, 0): 0, (1, 0, 1): 1, (0, 1, 2): 2}
    parts = [{}, {}, {}]
    for mono, c in v.items():
        e = mono + (0,) * (5 - len(mono))
        slot = basis.get(e[:3])
        if slot is None:
            raise ValueError("element is not in the truncated degree-0 module")
        parts[slot][e[3:]] = parts[slot].get(e[3:], 0) + c
    return [MultiPoly(t, 2) for t in parts]


def ko_residue_polynomial(aX: int, aY: int, bR_x2_eigenvalue: int = 16) -> MultiPoly:
    """The residue of :func:`ko_intertwine_residue` for the generic candidate,
    as a polynomial in (ε, σ₂') (slots 0 and 1)."""
    MX, MY = KOModel(aX), KOModel(aY)
    eps = MultiPoly.var(EPS_SLOT, 5)
    s = MultiPoly.var(S_SLOT, 5)
    image = X_P * eps + XI_P * X_P ** 2 * s
    xi_x = XI_P * X_P

    def sigma(v):
        return MY.normalize(v.substitute({XI: XI_P, BR: BR_P, X: image}))

    lhs = _param_coords(sigma(MX.psi2(xi_x, bR_x2_eigenvalue)))
    c0, c1, c2 = _param_coords(sigma(xi_x))
    rhs = [c0, c1.scale(4), c1.scale(2 * aY) + c2.scale(bR_x2_eigenvalue)]
    for i in (0, 1):
        # ε² = 1 for every admissible candidate
        if _eval2(lhs[i] - rhs[i], 1, 0) or _eval2(lhs[i] - rhs[i], -1, 0):
            raise AssertionError("sides differ below b_R y²")
    return lhs[2] - rhs[2]


def _eval2(poly: MultiPoly, eps: int, s: int) -> int:
    total = 0
    for mono, c in poly.items():
        e = mono + (0, 0)
        total += c * eps ** e[0] * s ** e[1]
    return total


def ko_equivalent(aX: int, aY: int, search_bound: int = 100,
                  bR_x2_eigenvalue: int = 16) -> KOVerdict:
    """Scan ε ∈ {±1}, |σ₂'| <= search_bound for a ψ²-intertwining candidate.

    The truncated-algebra computation is done once with ε and σ₂' as
    parameters and then evaluated at each grid point.
    """
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    check_residue(aX)
    check_residue(aY)
    residue = ko_residue_polynomial(aX, aY, bR_x2_eigenvalue)
    scanned = 0
    for cand in _scan_order(search_bound):
        scanned += 1
        if _eval2(residue, cand.eps, cand.sigma2_prime) == 0:
            return KOVerdict(aX, aY, True, cand, search_bound, scanned)
    return KOVerdict(aX, aY, False, None, search_bound, scanned)


def congruent_up_to_sign(aX: int, aY: int) -> bool:
    return (aX - aY) % 24 == 0 or (aX + aY) % 24 == 0


# -- K side ----------------------------------------------------------------

@dataclass(frozen=True)
class IsoCandidateK:
    """α(t) = t + c₂t² + ... + c_K t^K with coefficients mod p²."""

    p: int
    coeffs: Tuple[int, ...] = ()

    def alpha(self) -> MultiPoly:
        m = self.p * self.p
        terms = {(1,): 1}
        for j, c in enumerate(self.coeffs, start=2):
            terms[(j,)] = c
        return MultiPoly(terms, 1, m)

    def to_json(self):
        m = self.p * self.p
        return {"p": self.p, "coeffs": [c % m for c in self.coeffs]}


def kp_sides(MX: KModel, MY: KModel, cand: IsoCandidateK):
    alpha = MY.normalize(cand.alpha())
    lhs = MY.normalize(MX.psi_t().lift().substitute({0: alpha.lift()}))
    rhs = MY.apply_psi(alpha)
    return lhs, rhs


def kp_intertwine_check(p: int, sX: int, sY: int, cand: IsoCandidateK,
                        noise_X: Optional[Tuple[MultiPoly, MultiPoly]] = None,
                        noise_Y: Optional[Tuple[MultiPoly, MultiPoly]] = None) -> bool:
    """True iff αψ^p_X(t) = ψ^p_Y α(t) mod (filtration 2p+3, p²).

    ``noise_X``/``noise_Y`` are optional ``(w, x0)`` terms for the two models.
    """
    check_odd_prime(p)
    if cand.p != p:
        raise ValueError("candidate built for a different prime")
    MX = KModel(p, sX, *(noise_X or ()))
    MY = KModel(p, sY, *(noise_Y or ()))
    lhs, rhs = kp_sides(MX, MY, cand)
    return lhs == rhs


@dataclass
class KPVerdict:
    p: int
    sX: int
    sY: int
    exists: bool
    witness: Optional[IsoCandidateK]
    mode: str
    scanned: int
    box: Optional[int] = None

    def to_json(self):
        out = {"p": self.p, "sX": self.sX, "sY": self.sY, "exists": self.exists,
               "mode": self.mode, "scanned": self.scanned}
        if self.box is not None:
            out["box"] = self.box
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def kp_candidates(p: int, mode: str = "exhaustive", box: int = 1, samples: int = 0,
                  seed: int = 0) -> Iterable[IsoCandidateK]:
    """Normalized candidates: all of (Z/p²)^(K-1), or a box [-box, box]^(K-1)
    plus ``samples`` random full-range candidates."""
    free = (p + 1) // 2 - 1
    m = p * p
    if mode == "exhaustive":
        for cs in product(range(m), repeat=free):
            yield IsoCandidateK(p, cs)
    elif mode == "spot":
        for cs in product(range(-box, box + 1), repeat=free):
            yield IsoCandidateK(p, cs)
        rng = random.Random(seed)
        for _ in range(samples):
            yield IsoCandidateK(p, tuple(rng.randrange(m) for _ in range(free)))
    else:
        raise ValueError(f"unknown scan mode {mode!r}")


def kp_scan(p: int, sX: int, sY: int, mode: str = "exhaustive", box: int = 1,
            samples: int = 0, seed: int = 0, stop_at_first: bool = True,
            noise_X=None, noise_Y=None) -> KPVerdict:
    check_odd_prime(p)
    found = None
    scanned = 0
    for cand in kp_candidates(p, mode, box, samples, seed):
        scanned += 1
        if kp_intertwine_check(p, sX, sY, cand, noise_X, noise_Y):
            if found is None:
                found = cand
            if stop_at_first:
                break
    return KPVerdict(p, sX, sY, found is not None, found, mode, scanned,
                     box if mode == "spot" else None)


# -- homotopy type -----------------------------------------------------------

def homotopy_equivalent(P: GenusPoint, Q: GenusPoint) -> bool:
    """Same Rector invariants, i.e. equal canonical forms."""
    if P.p_max != Q.p_max:
        raise ValueError(f"genus points track different primes (p_max {P.p_max} vs {Q.p_max})")
    return P == Q


def distinguishing_invariant(P: GenusPoint, Q: GenusPoint) -> Optional[dict]:
    """First Rector invariant (X/p) on which P and Q differ, by increasing p."""
    if P.p_max != Q.p_max:
        raise ValueError(f"genus points track different primes (p_max {P.p_max} vs {Q.p_max})")
    for p in [2, 3] + odd_primes(P.p_max):
        if P.rector(p) != Q.rector(p):
            source = "a_class" if p in (2, 3) else "sign"
            return {"prime": p, "X": P.rector(p), "Y": Q.rector(p), "source": source}
    return None


def compare(P: GenusPoint, Q: GenusPoint, search_bound: int = 100) -> dict:
    equivalent = homotopy_equivalent(P, Q)
    out = {"equivalent": equivalent}
    if equivalent:
        out["witness"] = ko_equivalent(P.a_class, Q.a_class, search_bound).witness.to_json()
    else:
        out["distinguished_by"] = distinguishing_invariant(P, Q)
    return out


# -- full reproduction -------------------------------------------------------

@dataclass
class TheoremReport:
    ko_table: List[KOVerdict]
    kp_table: List[KPVerdict]
    pairs_checked: int
    mismatches: List[dict]
    search_bound: int
    primes: Tuple[int, ...]
    runtime: float = field(default=0.0, compare=False)

    @property
    def ko_consistent(self) -> bool:
        return all(v.equivalent == congruent_up_to_sign(v.aX, v.aY) for v in self.ko_table)

    @property
    def kp_consistent(self) -> bool:
        return all(v.exists == (v.sX == v.sY) for v in self.kp_table)

    @property
    def passed(self) -> bool:
        return self.ko_consistent and self.kp_consistent and not self.mismatches

    def to_json(self, timing: bool = False):
        out = {
            "schema": 1,
            "passed": self.passed,
            "search_bound": self.search_bound,
            "primes": list(self.primes),
            "ko_table": [v.to_json() for v in self.ko_table],
            "kp_table": [v.to_json() for v in self.kp_table],
            "genus_pairs_checked": self.pairs_checked,
            "mismatches": self.mismatches,
        }
        if timing:
            out["runtime_seconds"] = round(self.runtime, 3)
        return out

    def dumps(self, timing: bool = False):
        return json.dumps(self.to_json(timing), sort_keys=True)


def theorem_reproduction(search_bound: int = 100, primes: Sequence[int] = (3, 5, 7),
                         exhaustive_primes: Sequence[int] = (3, 5), box: int = 1,
                         samples: int = 50, seed: int = 0) -> TheoremReport:
    """Run the KO and K scans and compare the model verdict with Rector's classification.

    For every pair of genus points over the given primes, "some intertwining
    family exists on every side" must coincide with equality of invariants.
    """
    start = time.perf_counter()
    primes = tuple(sorted(set(primes)))
    for p in primes:
        check_odd_prime(p)
    ko_table = [ko_equivalent(aX, aY, search_bound)
                for aX in ALLOWED_RESIDUES for aY in ALLOWED_RESIDUES]
    kp_table = []
    for p in primes:
        mode = "exhaustive" if p in exhaustive_primes else "spot"
        for sX, sY in product((1, -1), repeat=2):
            # scan everything when no intertwiner should exist
            kp_table.append(kp_scan(p, sX, sY, mode, box, samples, seed,
                                    stop_at_first=(sX == sY)))
    ko = {(v.aX, v.aY): v.equivalent for v in ko_table}
    kp = {(v.p, v.sX, v.sY): v.exists for v in kp_table}

    p_max = max([p for p in primes if p >= 5], default=3)
    tracked = odd_primes(p_max)
    points = [canonicalize(a, dict(zip(tracked, signs)), p_max)
              for a in (1, 5, 7, 11) for signs in product((1, -1), repeat=len(tracked))]
    mismatches = []
    for P in points:
        for Q in points:
            model = ko[(P.a_class, Q.a_class)] and all(
                kp[(p, P.rector(p), Q.rector(p))] for p in primes)
            truth = homotopy_equivalent(P, Q)
            if model != truth:
                mismatches.append({"X": P.to_json(), "Y": Q.to_json(),
                                   "model": model, "invariants_equal": truth})
    return TheoremReport(ko_table, kp_table, len(points) ** 2, mismatches, search_bound, primes,
                         time.perf_counter() - start)

