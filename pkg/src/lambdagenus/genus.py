"""Truncated filtered models of KO*(X) and K*(X) for X in the genus of BS^3.

KO side: ``Z[xi, bR][[x]]`` with ``xi^2 = 4 bR``, degrees ``|xi| = -4``,
``|bR| = -8``, ``|x| = 4`` and filtration ``4 * (x-degree)``, truncated at
filtration 9.  The degree-0 part is spanned by ``1, xi*x, bR*x^2`` and the
degree-4 part by ``x, xi*x^2``.  The 2-torsion of KO is not modelled.

K side, for an odd prime p: ``Z/p^2[t]`` with ``t = b^2 u`` in filtration 4,
truncated at filtration ``2p + 3``, so only ``t^k`` with ``k <= (p+1)/2``
survive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from sympy import isprime, primerange

from .poly import MultiPoly

ALLOWED_RESIDUES = (1, 5, 7, 11, 13, 17, 19, 23)
# a(X) mod 24 up to sign -> ((X/2), (X/3))
RECTOR_TABLE = {1: (1, 1), 5: (1, -1), 7: (-1, 1), 11: (-1, -1)}
DEFAULT_P_MAX = 97

XI, BR, X = 0, 1, 2
KO_DEGREE = (-4, -8, 4)
KO_FILTRATION = (0, 0, 4)


class ForbiddenResidue(ValueError):
    def __init__(self, a: int):
        self.a = a
        super().__init__(
            f"a = {a} is {a % 24} mod 24, which is not an allowed residue; "
            f"a(X) must be congruent to ±1, ±5, ±7 or ±11 mod 24")


def check_residue(a: int) -> int:
    if a % 24 not in ALLOWED_RESIDUES:
        raise ForbiddenResidue(a)
    return a % 24


def _weight(mono, weights):
    return sum(w * e for w, e in zip(weights, mono))


# -- KO model --------------------------------------------------------------

def ko_normalize(p: MultiPoly, truncation: int = 9) -> MultiPoly:
    """Rewrite ``xi^2 -> 4 bR`` and drop terms of filtration >= truncation."""
    out: Dict[Tuple[int, ...], int] = {}
    for mono, c in p.items():
        e = mono + (0,) * (3 - len(mono))
        if e[X] * 4 >= truncation:
            continue
        q, r = divmod(e[XI], 2)
        key = (r, e[BR] + q, e[X]) + e[3:]
        out[key] = out.get(key, 0) + c * 4 ** q
    return MultiPoly(out, max(3, p.nvars), p.modulus)


def ko_degree(p: MultiPoly):
    """Set of KO-degrees occurring in p."""
    return {_weight(m, KO_DEGREE) for m, _ in p.items()}


XI_P = MultiPoly.var(XI, 3)
BR_P = MultiPoly.var(BR, 3)
X_P = MultiPoly.var(X, 3)
ONE = MultiPoly.const(1, 3)
XI_X = XI_P * X_P
BR_X2 = BR_P * X_P ** 2
XI_X2 = XI_P * X_P ** 2
DEGREE0_BASIS = (ONE, XI_X, BR_X2)
DEGREE4_BASIS = (X_P, XI_X2)


@dataclass(frozen=True)
class KOModel:
    """Truncated KO*(X); ``a`` is the integer in ψ²(ξx) = 4ξx + 2a b_R x²."""

    a: int
    truncation: int = 9

    def __post_init__(self):
        check_residue(self.a)

    def normalize(self, p: MultiPoly) -> MultiPoly:
        return ko_normalize(p, self.truncation)

    def mul(self, u: MultiPoly, v: MultiPoly) -> MultiPoly:
        return self.normalize(u * v)

    def element(self, c0: int = 0, c1: int = 0, c2: int = 0) -> MultiPoly:
        """``c0 + c1 ξx + c2 b_R x²``."""
        return self.normalize(ONE.scale(c0) + XI_X.scale(c1) + BR_X2.scale(c2))

    def coords(self, v: MultiPoly) -> Tuple[int, int, int]:
        """Coordinates of a degree-0 element on the basis ``1, ξx, b_R x²``."""
        v = self.normalize(v)
        c = (v.coeff(()), v.coeff((1, 0, 1)), v.coeff((0, 1, 2)))
        rest = v - self.element(*c)
        if not rest.is_zero():
            raise ValueError(f"{ko_text(v)} is not in the truncated degree-0 module")
        return c

    def coords4(self, v: MultiPoly) -> Tuple[int, int]:
        """Coordinates of a degree-4 element on the basis ``x, ξx²``."""
        v = self.normalize(v)
        c = (v.coeff((0, 0, 1)), v.coeff((1, 0, 2)))
        rest = v - (X_P.scale(c[0]) + XI_X2.scale(c[1]))
        if not rest.is_zero():
            raise ValueError(f"{ko_text(v)} is not in the truncated degree-4 module")
        return c

    def psi2(self, v: MultiPoly, bR_x2_eigenvalue: int = 16) -> MultiPoly:
        c0, c1, c2 = self.coords(v)
        return self.element(c0, 4 * c1, 2 * self.a * c1 + bR_x2_eigenvalue * c2)


def psi2_KO(M: KOModel, v: MultiPoly) -> MultiPoly:
    """ψ² on the degree-0 module: 1 ↦ 1, ξx ↦ 4ξx + 2a b_R x², b_R x² ↦ 16 b_R x²."""
    return M.psi2(v)


def ko_text(p: MultiPoly) -> str:
    names = ("xi", "bR", "x")
    return p.to_text(lambda i: names[i] if i < 3 else f"z{i}")


def _generator_inverse(M: KOModel, eps: int, m: int) -> MultiPoly:
    # x in terms of x' where x' = eps*x + m*xi*x^2, by fixed-point iteration
    x_old = X_P.scale(eps)
    for _ in range(M.truncation // 4 + 1):
        x_old = M.normalize((X_P - XI_P * M.mul(x_old, x_old).scale(m)).scale(eps))
    return x_old


def change_generator(M: KOModel, eps: int, m: int) -> KOModel:
    """Model for the new generator ``x' = eps*x + m*ξx²``.

    Expresses ξx' in the old basis, applies ψ², rewrites the result over
    ``1, ξx', b_R x'²`` and reads off the new ``a``.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be ±1")
    x_new = X_P.scale(eps) + XI_X2.scale(m)
    image = M.psi2(M.mul(XI_P, x_new))
    back = M.normalize(image.substitute({XI: XI_P, BR: BR_P, X: _generator_inverse(M, eps, m)}))
    c0, c1, c2 = M.coords(back)
    if c0 != 0 or c1 != 4 or c2 % 2:
        raise AssertionError(f"unexpected ψ²(ξx') = {ko_text(back)}")
    return KOModel(c2 // 2, M.truncation)


def representative_shift(M: KOModel, m: int) -> KOModel:
    """Replace x by x + m ξx²; a changes by 24m."""
    return change_generator(M, 1, m)


def orientation_flip(M: KOModel) -> KOModel:
    """Replace x by -x; a changes sign."""
    return change_generator(M, -1, 0)


def rector_pair(a: int) -> Tuple[int, int]:
    """((X/2), (X/3)) from a(X) mod 24."""
    r = check_residue(a)
    return RECTOR_TABLE[min(r, 24 - r)]


# -- K model ---------------------------------------------------------------

def check_odd_prime(p: int) -> None:
    if p % 2 == 0 or not isprime(p):
        raise ValueError(f"p = {p} must be an odd prime")


@dataclass(frozen=True)
class KModel:
    """Truncated ``K^0(X)`` at an odd prime with ψ^p(t) = t^p + 2(X/p) p t^((p+1)/2) + p w + p² x0.

    ``w`` must lie in filtration >= 2p+3 and ``x0`` in filtration >= 4;
    both are kept so callers can check they are quotiented away.
    """

    p: int
    sign: int
    w: MultiPoly = field(default_factory=lambda: MultiPoly({}, 1))
    x0: MultiPoly = field(default_factory=lambda: MultiPoly({}, 1))

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.sign not in (1, -1):
            raise ValueError("sign must be ±1")
        if any(4 * sum(m) < self.threshold for m, _ in self.w.items()):
            raise ValueError("w must lie in filtration >= 2p+3")
        if any(sum(m) == 0 for m, _ in self.x0.items()):
            raise ValueError("x0 must lie in filtration >= 4")

    @property
    def threshold(self) -> int:
        return 2 * self.p + 3

    @property
    def modulus(self) -> int:
        return self.p * self.p

    @property
    def top(self) -> int:
        """Largest surviving power of t."""
        return (self.p + 1) // 2

    def normalize(self, f: MultiPoly) -> MultiPoly:
        if f.modulus is None:
            f = f.reduce_mod(self.modulus)
        elif f.modulus != self.modulus:
            raise ValueError(f"expected coefficients mod {self.modulus}")
        th = self.threshold
        return f.filter_terms(lambda m: 4 * sum(m) < th)

    def t(self) -> MultiPoly:
        return MultiPoly.var(0, 1, self.modulus)

    def mul(self, f: MultiPoly, g: MultiPoly) -> MultiPoly:
        return self.normalize(f).mul_trunc(self.normalize(g), self.top)

    def psi_t(self) -> MultiPoly:
        p = self.p
        t = MultiPoly.var(0, 1)
        raw = t ** p + (t ** self.top).scale(2 * self.sign * p) + self.w.scale(p) + self.x0.scale(p * p)
        return self.normalize(raw)

    def apply_psi(self, f: MultiPoly) -> MultiPoly:
        """ψ^p as the ring endomorphism t ↦ ψ^p(t)."""
        f = self.normalize(f)
        return self.normalize(f.lift().substitute({0: self.psi_t().lift()}))


def psi_p_K(M: KModel, k: int) -> MultiPoly:
    """ψ^p(t^k) = (ψ^p t)^k in the truncated mod-p² model."""
    if not 0 <= k <= M.top:
        raise ValueError(f"k must satisfy 0 <= k <= {M.top}")
    out = M.normalize(MultiPoly.const(1, 1))
    base = M.psi_t()
    for _ in range(k):
        out = M.mul(out, base)
    return out


def k_text(f: MultiPoly) -> str:
    return f.to_text(lambda i: "t")


# -- genus points ----------------------------------------------------------

def odd_primes(p_max: int):
    """Primes 5 <= p <= p_max (the ones not encoded by a(X))."""
    return list(primerange(5, p_max + 1))


@dataclass(frozen=True)
class GenusPoint:
    a_class: int
    signs: Tuple[Tuple[int, int], ...]
    p_max: int = DEFAULT_P_MAX

    def __post_init__(self):
        if self.a_class not in RECTOR_TABLE:
            raise ValueError(f"a_class must be one of 1, 5, 7, 11; got {self.a_class}")
        have = [p for p, _ in self.signs]
        if have != odd_primes(self.p_max):
            raise ValueError(f"signs must be given exactly for the primes 5..{self.p_max}")
        if any(s not in (1, -1) for _, s in self.signs):
            raise ValueError("signs must be ±1")

    @property
    def sign_map(self) -> Dict[int, int]:
        return dict(self.signs)

    @property
    def x2(self) -> int:
        return RECTOR_TABLE[self.a_class][0]

    @property
    def x3(self) -> int:
        return RECTOR_TABLE[self.a_class][1]

    def rector(self, p: int) -> int:
        """The invariant (X/p) for any prime p <= p_max."""
        if p == 2:
            return self.x2
        if p == 3:
            return self.x3
        return self.sign_map[p]

    def with_sign(self, p: int, s: int) -> "GenusPoint":
        signs = dict(self.signs)
        if p not in signs:
            raise KeyError(f"no sign tracked for p = {p}")
        signs[p] = s
        return GenusPoint(self.a_class, tuple(sorted(signs.items())), self.p_max)

    def to_json(self) -> dict:
        return {"a_class": self.a_class, "p_max": self.p_max,
                "signs": {str(p): s for p, s in self.signs}}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "GenusPoint":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "signs" not in data:
            raise ValueError("GenusPoint JSON needs 'a_class' (or 'a') and 'signs'")
        a = data.get("a_class", data.get("a"))
        if not isinstance(a, int):
            raise ValueError("'a_class' must be an integer")
        try:
            signs = {int(p): int(s) for p, s in data["signs"].items()}
        except (AttributeError, ValueError) as exc:
            raise ValueError(f"malformed 'signs': {exc}") from None
        p_max = data.get("p_max")
        if p_max is None:
            p_max = max(signs, default=3)
        return canonicalize(a, signs, p_max)


def canonicalize(a: int, signs: Mapping[int, int], p_max: Optional[int] = None) -> GenusPoint:
    """Reduce a to its representative in {1, 5, 7, 11}, identifying a with -a."""
    r = check_residue(a)
    a_class = min(r, 24 - r)
    p_max = DEFAULT_P_MAX if p_max is None else p_max
    wanted = odd_primes(p_max)
    missing = [p for p in wanted if p not in signs]
    if missing:
        raise ValueError(f"missing sign for prime {missing[0]}")
    extra = [p for p in signs if p not in wanted]
    if extra:
        raise ValueError(f"unexpected sign for {extra[0]} (tracked primes are 5..{p_max})")
    return GenusPoint(a_class, tuple((p, signs[p]) for p in wanted), p_max)


def bs3(p_max: int = DEFAULT_P_MAX) -> GenusPoint:
    """BS^3 itself: every Rector invariant is +1."""
    return canonicalize(1, {p: 1 for p in odd_primes(p_max)}, p_max)
