"""λ-ring instances, Adams operations and sample-based axiom checking."""

from __future__ import annotations

import json
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Any, Dict, List, Optional, Sequence

from .poly import MultiPoly, _mono_mul
from .symfun import LambdaExpr, universal_compose, universal_product


def binomial(n: int, i: int) -> int:
    """C(n, i) for any integer n, via the falling factorial."""
    if i < 0:
        return 0
    if n >= 0:
        return comb(n, i)
    return (-1) ** i * comb(i - n - 1, i)


class LambdaRing(ABC):
    """A commutative ring with operations λ^i.

    Subclasses supply the carrier operations and ``lam``.  ``divisible``
    decides membership in ``pR``; returning ``None`` means the instance
    cannot decide it.
    """

    name = "lambda-ring"

    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def one(self): ...

    @abstractmethod
    def from_int(self, n: int): ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def lam(self, i: int, a): ...

    @abstractmethod
    def sample(self, rng: random.Random): ...

    def eq(self, a, b) -> bool:
        return a == b

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, e: int):
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def divisible(self, a, p: int) -> Optional[bool]:
        return None

    def lambdas(self, a, n: int) -> List[Any]:
        """``[λ^1(a), ..., λ^n(a)]``."""
        return [self.lam(i, a) for i in range(1, n + 1)]

    def to_text(self, a) -> str:
        return str(a)


class BinomialZ(LambdaRing):
    """The integers with ``λ^i(n) = C(n, i)``; all Adams operations are the identity."""

    name = "BinomialZ"

    def __init__(self, sample_range: int = 20):
        self.sample_range = sample_range

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def power(self, a, e):
        return a ** e

    def lam(self, i, a):
        return binomial(a, i)

    def sample(self, rng):
        return rng.randint(-self.sample_range, self.sample_range)

    def divisible(self, a, p):
        return a % p == 0


class LineSumRing(LambdaRing):
    """Polynomials in k line elements, truncated above total degree D.

    Every monomial is a line element, ``λ_t(x^a) = 1 + x^a t``, extended by
    ``λ_t(c·x^a) = (1 + x^a t)^c`` and multiplicativity of ``λ_t``.  The
    ideal of terms of degree > D is closed under all λ^i (i > 0), so the
    truncation is again a λ-ring.  The sampler draws symmetric elements
    with non-negative coefficients.
    """

    name = "LineSumRing"

    def __init__(self, k: int = 4, D: int = 6, max_part: int = 2, max_coef: int = 2):
        self.k = k
        self.D = D
        self.max_part = max_part
        self.max_coef = max_coef
        self._cache: Dict[Any, List[MultiPoly]] = {}

    def trunc(self, p: MultiPoly) -> MultiPoly:
        D = self.D
        return p.filter_terms(lambda m: sum(m) <= D)

    def zero(self):
        return MultiPoly({}, self.k)

    def one(self):
        return MultiPoly.const(1, self.k)

    def from_int(self, n):
        return MultiPoly.const(n, self.k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a.mul_trunc(b, self.D)

    def element(self, p: MultiPoly) -> MultiPoly:
        return self.trunc(p)

    def line_sum(self) -> MultiPoly:
        return sum((MultiPoly.var(i, self.k) for i in range(self.k)), self.zero())

    def _series(self, a: MultiPoly, n: int) -> List[MultiPoly]:
        key = (a, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        D = self.D
        layers: List[Dict] = [{(): 1}] + [{} for _ in range(n)]
        for mono, c in a.items():
            d = sum(mono)
            top = n if d == 0 else min(n, D // d)
            factor = []
            power = ()
            for i in range(1, top + 1):
                power = _mono_mul(power, mono)
                b = binomial(c, i)
                if b:
                    factor.append((i, b, power, i * d))
            if not factor:
                continue
            new = [dict(layer) for layer in layers]
            for j in range(n + 1):
                src = layers[j]
                if not src:
                    continue
                for i, b, pw, pd in factor:
                    if i + j > n:
                        break
                    dst = new[i + j]
                    for key2, v in src.items():
                        if sum(key2) + pd <= D:
                            nk = _mono_mul(key2, pw)
                            dst[nk] = dst.get(nk, 0) + b * v
            layers = [{m: v for m, v in layer.items() if v} for layer in new]
        out = [MultiPoly(layer, self.k) for layer in layers]
        self._cache[key] = out
        return out

    def lam(self, i, a):
        if i == 0:
            return self.one()
        return self._series(a, i)[i]

    def lambdas(self, a, n):
        return self._series(a, n)[1:]

    def sample(self, rng):
        # random non-negative combination of monomial symmetric functions
        out = MultiPoly.const(rng.randint(0, 3), self.k)
        for size in range(1, self.max_part + 1):
            for part in _partitions(size, self.k):
                c = rng.randint(0, self.max_coef)
                if c:
                    out = out + monomial_symmetric(part, self.k).scale(c)
        return self.trunc(out)

    def divisible(self, a, p):
        return a.is_divisible_by(p)

    def to_text(self, a):
        return a.to_text()


def _partitions(n: int, max_len: int, largest: Optional[int] = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, max_len - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_symmetric(part, k: int) -> MultiPoly:
    """Sum of the distinct monomials whose exponents permute ``part`` (padded to k)."""
    exps = tuple(part) + (0,) * (k - len(part))
    return MultiPoly({p: 1 for p in set(permutations(exps))}, k)


class CorruptedRing(LambdaRing):
    """Wraps an instance, replacing λ^2(r) with λ^2(r) + 1.  Used as a negative control."""

    def __init__(self, base: LambdaRing):
        self.base = base
        self.name = f"Corrupted({base.name})"

    def zero(self):
        return self.base.zero()

    def one(self):
        return self.base.one()

    def from_int(self, n):
        return self.base.from_int(n)

    def add(self, a, b):
        return self.base.add(a, b)

    def neg(self, a):
        return self.base.neg(a)

    def mul(self, a, b):
        return self.base.mul(a, b)

    def lam(self, i, a):
        v = self.base.lam(i, a)
        return self.base.add(v, self.base.one()) if i == 2 else v

    def lambdas(self, a, n):
        return [self.lam(i, a) for i in range(1, n + 1)]

    def sample(self, rng):
        return self.base.sample(rng)

    def divisible(self, a, p):
        return self.base.divisible(a, p)

    def to_text(self, a):
        return self.base.to_text(a)


# -- Adams operations ----------------------------------------------------

@dataclass(frozen=True)
class AdamsFormula:
    k: int
    expr: LambdaExpr

    def to_text(self):
        return self.expr.to_text()


@lru_cache(maxsize=None)
def newton_adams_formula(k: int) -> AdamsFormula:
    """ψ^k as a polynomial in Lr1..Lrk, solved from the Newton recurrence

        ψ^k = Σ_{i=1}^{k-1} (-1)^{i+1} λ^i ψ^{k-i} + (-1)^{k-1} k λ^k.
    """
    if k < 1:
        raise ValueError("Adams index must be >= 1")
    poly = MultiPoly.var(k - 1, k).scale((-1) ** (k - 1) * k)
    for i in range(1, k):
        prev = newton_adams_formula(k - i).expr.poly
        poly = poly + (MultiPoly.var(i - 1, k) * prev).scale((-1) ** (i + 1))
    return AdamsFormula(k, LambdaExpr(MultiPoly(poly.terms, k), k))


def evaluate(expr: LambdaExpr, R: LambdaRing, r_values: Sequence, s_values: Sequence = ()):
    """Evaluate a λ-expression in R with Lr_i -> r_values[i-1], Ls_j -> s_values[j-1]."""
    values = list(r_values)[:expr.nr]
    if len(values) < expr.nr:
        need = expr.r_degree_used()
        if len(values) < need:
            raise ValueError(f"need λ^1..λ^{need} of r, got {len(values)}")
        values += [R.zero()] * (expr.nr - len(values))
    values += list(s_values)
    powers: Dict[Any, Any] = {}
    total = R.zero()
    for mono, c in expr.poly.items():
        term = R.from_int(c)
        for i, e in enumerate(mono):
            if e:
                if (i, e) not in powers:
                    powers[(i, e)] = R.power(values[i], e)
                term = R.mul(term, powers[(i, e)])
        total = R.add(total, term)
    return total


def adams(R: LambdaRing, k: int, a):
    """ψ^k(a), evaluating the Newton formula at λ^i(a)."""
    if k < 1:
        raise ValueError("Adams index must be >= 1")
    if k == 1:
        return a
    return evaluate(newton_adams_formula(k).expr, R, R.lambdas(a, k))


# -- reports -------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    status: str = "pass"  # pass | fail | skip
    checked: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    note: str = ""

    def record(self, ok: bool, witness=None):
        self.checked += 1
        if not ok and self.status != "fail":
            self.status = "fail"
            self.counterexample = witness

    def to_json(self):
        out = {"name": self.name, "status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    title: str
    instance: str
    seed: int
    results: Dict[str, CheckResult] = field(default_factory=dict)

    def check(self, name: str) -> CheckResult:
        if name not in self.results:
            self.results[name] = CheckResult(name)
        return self.results[name]

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results.values())

    def failures(self):
        return [r for r in self.results.values() if r.status == "fail"]

    def to_json(self):
        return {
            "title": self.title,
            "instance": self.instance,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [self.results[k].to_json() for k in sorted(self.results)],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def check_axioms(R: LambdaRing, samples: int = 100, n_max: int = 4, nm_max: int = 6,
                 seed: int = 0) -> Report:
    """Sample-based check of the λ-ring axioms.

    Product and composition laws are compared against the universal
    polynomials from :mod:`lambdagenus.symfun`.  Failures are report
    content; nothing raises.
    """
    rng = random.Random(seed)
    rep = Report("axioms", R.name, seed)
    txt = R.to_text
    one = R.one()
    unit = rep.check("lambda^n(1)=0")
    for n in range(2, n_max + 1):
        v = R.lam(n, one)
        unit.record(R.eq(v, R.zero()), {"n": n, "value": txt(v)})
    prod_polys = {n: universal_product(n) for n in range(1, n_max + 1)}
    comp_polys = {(n, m): universal_compose(n, m)
                  for n in range(1, nm_max + 1) for m in range(1, nm_max + 1) if n * m <= nm_max}
    deg = max([n_max] + [n * m for n, m in comp_polys])
    for _ in range(samples):
        r, s = R.sample(rng), R.sample(rng)
        lr = [one] + R.lambdas(r, deg)
        ls = [one] + R.lambdas(s, n_max)
        rep.check("lambda^0=1").record(R.eq(R.lam(0, r), one), {"r": txt(r)})
        rep.check("lambda^1=id").record(R.eq(lr[1], r), {"r": txt(r)})
        lrs_sum = [one] + R.lambdas(R.add(r, s), n_max)
        lrs_prod = [one] + R.lambdas(R.mul(r, s), n_max)
        for n in range(1, n_max + 1):
            rhs = R.zero()
            for i in range(n + 1):
                rhs = R.add(rhs, R.mul(lr[i], ls[n - i]))
            rep.check("addition").record(R.eq(lrs_sum[n], rhs),
                                         {"n": n, "r": txt(r), "s": txt(s)})
            rhs = evaluate(prod_polys[n].expr, R, lr[1:n + 1], ls[1:n + 1])
            rep.check("product").record(R.eq(lrs_prod[n], rhs),
                                        {"n": n, "r": txt(r), "s": txt(s)})
        for (n, m), up in comp_polys.items():
            lhs = R.lam(n, lr[m])
            rhs = evaluate(up.expr, R, lr[1:n * m + 1])
            rep.check("composition").record(R.eq(lhs, rhs), {"n": n, "m": m, "r": txt(r)})
    return rep


def check_adams_properties(R: LambdaRing, k_max: int = 4, primes: Sequence[int] = (2, 3, 5, 7),
                           samples: int = 100, kl_max: int = 8, seed: int = 0) -> Report:
    """Sample-based check that the ψ^k are additive, multiplicative, compose as
    ψ^k ψ^l = ψ^{kl}, and satisfy ψ^p(a) ≡ a^p mod pR."""
    rng = random.Random(seed)
    rep = Report("adams", R.name, seed)
    txt = R.to_text
    pairs = [(k, l) for k in range(1, kl_max + 1) for l in range(1, kl_max + 1) if k * l <= kl_max]
    frob = rep.check("frobenius")
    can_divide = R.divisible(R.zero(), 2) is not None
    if not can_divide:
        frob.status = "skip"
        frob.note = "instance cannot decide membership in pR"
    memo: Dict[Any, Any] = {}

    def psi_of(k, x):
        key = (k, x)
        if key not in memo:
            memo[key] = adams(R, k, x)
        return memo[key]

    for _ in range(samples):
        a, b = R.sample(rng), R.sample(rng)
        psi = {k: psi_of(k, a) for k in range(1, kl_max + 1)}
        rep.check("psi^1=id").record(R.eq(psi[1], a), {"a": txt(a)})
        for k, l in pairs:
            lhs = psi_of(k, psi[l])
            rep.check("psi^k psi^l=psi^kl").record(R.eq(lhs, psi[k * l]),
                                                  {"k": k, "l": l, "a": txt(a)})
        for k in range(1, k_max + 1):
            pb = psi_of(k, b)
            rep.check("additive").record(R.eq(psi_of(k, R.add(a, b)), R.add(psi[k], pb)),
                                         {"k": k, "a": txt(a), "b": txt(b)})
            rep.check("multiplicative").record(
                R.eq(psi_of(k, R.mul(a, b)), R.mul(psi[k], pb)),
                {"k": k, "a": txt(a), "b": txt(b)})
        if can_divide:
            for p in primes:
                diff = R.sub(psi_of(p, a), R.power(a, p))
                frob.record(bool(R.divisible(diff, p)), {"p": p, "a": txt(a)})
        memo.clear()
    return rep


def symbolic_adams_composition(k: int, l: int) -> bool:
    """Check ψ^k ψ^l = ψ^{kl} on a sum of kl line elements, untruncated.

    On ``x_1 + ... + x_n`` with ``n = kl`` every λ^i is an elementary
    polynomial, so both sides are determined by the formal λ-expressions.
    """
    n = k * l
    R = LineSumRing(k=n, D=n)
    x = R.line_sum()
    return adams(R, k, adams(R, l, x)) == adams(R, k * l, x)
