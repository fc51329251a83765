"""Elementary symmetric polynomials and the universal λ-ring polynomials.

The product polynomial ``P_n`` and composition polynomial ``P_{n,m}`` are
derived through the splitting principle: write ``r`` and ``s`` as sums of
line elements ``x_i`` and ``y_j``, expand the relevant generating product,
and rewrite the coefficient of ``t^n`` in elementary symmetric polynomials.
``splitting_oracle_check`` verifies a result by substituting back, without
going through :func:`express_in_elementaries`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from .poly import Monomial, MultiPoly, _mono_mul, _strip, parse

# default degree caps; configuration only
N_MAX = 5
NM_MAX = 6


class NotSymmetric(ValueError):
    def __init__(self, transposition: Tuple[int, int]):
        self.transposition = transposition
        i, j = transposition
        super().__init__(f"polynomial is not symmetric: swapping x{i} and x{j} changes it")


class StabilityError(ValueError):
    pass


@dataclass(frozen=True)
class LambdaExpr:
    """Integer polynomial in formal symbols ``Lr1, Lr2, ...`` and ``Ls1, Ls2, ...``.

    Slot ``i < nr`` holds ``λ^{i+1}(r)``; slot ``nr + j`` holds ``λ^{j+1}(s)``.
    """

    poly: MultiPoly
    nr: int

    def name(self, i: int) -> str:
        return f"Lr{i + 1}" if i < self.nr else f"Ls{i - self.nr + 1}"

    def to_text(self) -> str:
        return self.poly.to_text(self.name)

    def __str__(self):
        return self.to_text()

    @classmethod
    def parse(cls, text: str, nr: int) -> "LambdaExpr":
        def index(name):
            kind, num = name[:2], name[2:]
            if kind not in ("Lr", "Ls") or not num.isdigit() or int(num) < 1:
                raise ValueError(f"unknown λ-symbol {name!r}")
            i = int(num) - 1
            if kind == "Lr":
                if i >= nr:
                    raise ValueError(f"{name} exceeds the {nr} r-slots")
                return i
            return nr + i
        return cls(parse(text, index=index), nr)

    def r_degree_used(self) -> int:
        """Largest i with Lr_i occurring."""
        return max((i + 1 for i in self.poly.variables() if i < self.nr), default=0)

    def s_degree_used(self) -> int:
        return max((i - self.nr + 1 for i in self.poly.variables() if i >= self.nr), default=0)

    def split_terms(self):
        """Yield ``(coef, r_exponents, s_exponents)``; exponent lists are padded."""
        for mono, c in self.poly.sorted_terms():
            padded = mono + (0,) * (self.poly.nvars - len(mono))
            yield c, list(padded[:self.nr]), list(padded[self.nr:])


@dataclass(frozen=True)
class UniversalPoly:
    kind: str  # "product" or "composition"
    n: int
    m: Optional[int]
    expr: LambdaExpr
    # sizes used in the derivation; irrelevant to the value
    k: int = field(default=0, compare=False)
    l: int = field(default=0, compare=False)

    def to_text(self) -> str:
        return self.expr.to_text()

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        if self.m is not None:
            out["m"] = self.m
        out["text"] = self.to_text()
        out["terms"] = [{"coef": c, "r": r, "s": s} if self.kind == "product" else {"coef": c, "r": r}
                        for c, r, s in self.expr.split_terms()]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def corrupted(self) -> "UniversalPoly":
        """Copy with the sign of the leading coefficient flipped (for negative controls)."""
        mono, c = self.expr.poly.leading_term()
        bad = self.expr.poly + MultiPoly({mono: -2 * c}, self.expr.poly.nvars)
        return UniversalPoly(self.kind, self.n, self.m, LambdaExpr(bad, self.expr.nr), self.k, self.l)


@lru_cache(maxsize=None)
def elementary(k: int, i: int) -> MultiPoly:
    """The i-th elementary symmetric polynomial in ``x0..x_{k-1}``."""
    if k < 0 or i < 0:
        raise ValueError("k and i must be non-negative")
    if i == 0:
        return MultiPoly.const(1, k)
    terms = {}
    for idx in combinations(range(k), i):
        exps = [0] * k
        for j in idx:
            exps[j] = 1
        terms[tuple(exps)] = 1
    return MultiPoly(terms, k)


@lru_cache(maxsize=None)
def _e_monomial(k: int, d: Monomial) -> MultiPoly:
    # prod_i e_{i+1}(x_0..x_{k-1})^{d_i}
    out = MultiPoly.const(1, k)
    for i, di in enumerate(d):
        if di:
            out = out * elementary(k, i + 1) ** di
    return out


def check_symmetric(p: MultiPoly, k: int) -> None:
    """Raise :class:`NotSymmetric` unless ``p`` is invariant under permutations of x0..x_{k-1}."""
    extra = [i for i in p.variables() if i >= k]
    if extra:
        raise ValueError(f"x{extra[0]} occurs but only {k} variables are declared")
    for i in range(k - 1):
        swap = {j: j for j in range(k)}
        swap[i], swap[i + 1] = i + 1, i
        if p.rename(swap, k) != p:
            raise NotSymmetric((i, i + 1))


def express_in_elementaries(p: MultiPoly, k: int) -> MultiPoly:
    """Rewrite a symmetric polynomial in ``e_1..e_k`` (slot i holds e_{i+1}).

    Repeatedly cancels the graded-lex leading term ``c x^a`` against
    ``c e_1^{a1-a2} ... e_k^{ak}``, whose leading term is exactly ``x^a``.
    """
    check_symmetric(p, k)
    out: Dict[Monomial, int] = {}
    rem = p
    while not rem.is_zero():
        mono, c = rem.leading_term()
        a = mono + (0,) * (k - len(mono))
        d = tuple(a[i] - a[i + 1] for i in range(k - 1)) + ((a[k - 1],) if k else ())
        assert all(x >= 0 for x in d), "leading monomial of a symmetric polynomial is a partition"
        key = _strip(d)
        out[key] = out.get(key, 0) + c
        em = _e_monomial(k, key)
        if rem.modulus is not None:
            em = em.reduce_mod(rem.modulus)
        rem = rem - em.scale(c)
    return MultiPoly(out, k, p.modulus)


def _t_coefficient(monomials: Iterable[Monomial], n: int, nvars: int) -> MultiPoly:
    """Coefficient of ``t^n`` in ``prod (1 + x^mono t)``."""
    layers: List[Dict[Monomial, int]] = [{(): 1}] + [{} for _ in range(n)]
    for mono in monomials:
        for d in range(n, 0, -1):
            src, dst = layers[d - 1], layers[d]
            for key, c in src.items():
                nk = _mono_mul(key, mono)
                dst[nk] = dst.get(nk, 0) + c
    return MultiPoly(layers[n], nvars)


def product_expansion(n: int, k: int, l: int) -> MultiPoly:
    """Coefficient of t^n in prod_{i,j} (1 + x_i y_j t); x in slots 0..k-1, y in k..k+l-1."""
    monos = []
    for i in range(k):
        for j in range(l):
            exps = [0] * (k + l)
            exps[i] = exps[k + j] = 1
            monos.append(tuple(exps))
    return _t_coefficient(monos, n, k + l)


def composition_expansion(n: int, m: int, k: int) -> MultiPoly:
    """Coefficient of t^n in prod over m-subsets S of (1 + prod_{i in S} x_i t)."""
    monos = []
    for idx in combinations(range(k), m):
        exps = [0] * k
        for j in idx:
            exps[j] = 1
        monos.append(_strip(exps))
    return _t_coefficient(monos, n, k)


def _split(p: MultiPoly, k: int):
    # mono -> (first k exponents, remaining exponents), both stripped
    groups: Dict[Monomial, Dict[Monomial, int]] = {}
    for mono, c in p.items():
        head, tail = _strip(mono[:k]), _strip(mono[k:])
        groups.setdefault(tail, {})[head] = c
    return groups


def universal_product(n: int, k: Optional[int] = None, l: Optional[int] = None) -> UniversalPoly:
    """``P_n`` with ``λ^n(rs) = P_n(λ^1 r..λ^n r; λ^1 s..λ^n s)``."""
    k = n if k is None else k
    l = n if l is None else l
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < n or l < n:
        raise StabilityError(f"need k >= n and l >= n for a stable P_{n}; got k={k}, l={l}")
    return _universal_product(n, k, l)


@lru_cache(maxsize=None)
def _universal_product(n, k, l):
    direct = product_expansion(n, k, l)
    # the x-part of each y-slice is symmetric in x, then each e(x)-slice is symmetric in y
    by_ex: Dict[Monomial, Dict[Monomial, int]] = {}
    for ymono, xterms in _split(direct, k).items():
        qx = express_in_elementaries(MultiPoly(xterms, k), k)
        for emono, c in qx.items():
            slot = by_ex.setdefault(emono, {})
            slot[ymono] = slot.get(ymono, 0) + c
    terms: Dict[Monomial, int] = {}
    for emono, yterms in by_ex.items():
        if len(emono) > n:
            raise AssertionError("x-degree exceeds n")
        qy = express_in_elementaries(MultiPoly(yterms, l), l)
        for fmono, c in qy.items():
            if len(fmono) > n:
                raise AssertionError("y-degree exceeds n")
            key = emono + (0,) * (n - len(emono)) + fmono
            terms[key] = terms.get(key, 0) + c
    expr = LambdaExpr(MultiPoly(terms, 2 * n), n)
    return UniversalPoly("product", n, None, expr, k, l)


def universal_compose(n: int, m: int, k: Optional[int] = None) -> UniversalPoly:
    """``P_{n,m}`` with ``λ^n(λ^m r) = P_{n,m}(λ^1 r..λ^{nm} r)``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    k = n * m if k is None else k
    if k < n * m:
        raise StabilityError(f"need k >= n*m = {n * m} for a stable P_{n},{m}; got k={k}")
    return _universal_compose(n, m, k)


@lru_cache(maxsize=None)
def _universal_compose(n, m, k):
    q = express_in_elementaries(composition_expansion(n, m, k), k)
    if any(len(mono) > n * m for mono, _ in q.items()):
        raise AssertionError("composition polynomial uses λ^i with i > nm")
    expr = LambdaExpr(MultiPoly(q.terms, n * m), n * m)
    return UniversalPoly("composition", n, m, expr, k, 0)


def _substitute_elementaries(up: UniversalPoly, k: int, l: int) -> MultiPoly:
    # Lr_i -> e_i(x_0..x_{k-1}), Ls_j -> e_j(x_k..x_{k+l-1})
    nr = up.expr.nr
    xs: Dict[Monomial, MultiPoly] = {}
    ys: Dict[Monomial, MultiPoly] = {}
    acc: Dict[Monomial, int] = {}
    for mono, c in up.expr.poly.items():
        a, b = _strip(mono[:nr]), _strip(mono[nr:])
        if any(e for e in a[k:]) or any(e for e in b[l:]):
            continue  # involves e_i with i > k, which vanishes
        if a not in xs:
            xs[a] = _e_monomial(k, a)
        if b not in ys:
            ys[b] = _e_monomial(l, b)
        shift = (0,) * k
        for ym, yc in ys[b].items():
            ykey = shift + ym if ym else ()
            for xm, xc in xs[a].items():
                key = _mono_mul(xm, ykey) if ykey else xm
                acc[key] = acc.get(key, 0) + c * xc * yc
    return MultiPoly(acc, k + l)


def splitting_oracle_check(up: UniversalPoly, k: int, l: Optional[int] = None) -> bool:
    """True iff ``up`` evaluated on sums of k (and l) line elements matches the direct expansion."""
    if up.kind == "product":
        l = k if l is None else l
        lhs = _substitute_elementaries(up, k, l)
        rhs = product_expansion(up.n, k, l)
    elif up.kind == "composition":
        lhs = _substitute_elementaries(up, k, 0)
        rhs = composition_expansion(up.n, up.m, k)
    else:
        raise ValueError(f"unknown kind {up.kind!r}")
    return lhs == rhs
