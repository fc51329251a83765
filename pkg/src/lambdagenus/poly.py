"""Sparse multivariate polynomials with exact integer or integer-mod-m coefficients.

Variables are anonymous indices ``x0, x1, ...``; callers impose their own
naming.  A polynomial is a map from exponent vectors (trailing zeros
stripped) to nonzero coefficients.  Values are immutable and hashable.
"""

from __future__ import annotations

import re
from operator import add
from typing import Dict, Iterable, Mapping, Optional, Tuple

Monomial = Tuple[int, ...]


class ModulusMismatch(ValueError):
    """Raised when combining polynomials over different coefficient rings."""


class UnboundVariable(KeyError):
    def __init__(self, index: int):
        super().__init__(index)
        self.index = index

    def __str__(self):
        return f"variable x{self.index} is not bound"


def _strip(exps) -> Monomial:
    exps = tuple(exps)
    n = len(exps)
    while n and exps[n - 1] == 0:
        n -= 1
    return exps[:n]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    la, lb = len(a), len(b)
    if la == lb:
        return tuple(map(add, a, b))
    if la < lb:
        a, b, la, lb = b, a, lb, la
    if not lb:
        return a
    # a is the longer one, so no trailing zeros can appear
    return tuple(map(add, a, b)) + a[lb:]


def grlex_key(mono: Monomial, nvars: int):
    """Sort key for graded lexicographic order (larger key = larger monomial)."""
    return (sum(mono), mono + (0,) * (nvars - len(mono)))


def _pack_width(*term_maps) -> int:
    # bits per exponent slot so that sums of one exponent from each map cannot overflow
    total = sum(max((max(m, default=0) for m in t), default=0) for t in term_maps)
    return total.bit_length() + 1


def _pack(mono: Monomial, bits: int) -> int:
    v = 0
    shift = 0
    for e in mono:
        v |= e << shift
        shift += bits
    return v


def _unpack(v: int, bits: int) -> Monomial:
    mask = (1 << bits) - 1
    out = []
    while v:
        out.append(v & mask)
        v >>= bits
    return tuple(out)


def _packed_product(a: Dict[Monomial, int], b: Dict[Monomial, int], limit=None, weight=None):
    bits = _pack_width(a, b)
    if weight is None:
        pa = [(_pack(k, bits), c, 0) for k, c in a.items()]
        pb = [(_pack(k, bits), c, 0) for k, c in b.items()]
    else:
        pa = [(_pack(k, bits), c, weight(k)) for k, c in a.items()]
        pb = sorted(((_pack(k, bits), c, weight(k)) for k, c in b.items()), key=lambda t: t[2])
    acc: Dict[int, int] = {}
    get = acc.get
    if limit is None:
        for ka, ca, _ in pa:
            for kb, cb, _ in pb:
                k = ka + kb
                acc[k] = get(k, 0) + ca * cb
    else:
        for ka, ca, wa in pa:
            room = limit - wa
            for kb, cb, wb in pb:
                if wb > room:
                    break
                k = ka + kb
                acc[k] = get(k, 0) + ca * cb
    return {_unpack(k, bits): c for k, c in acc.items()}


class MultiPoly:
    __slots__ = ("_terms", "nvars", "modulus", "_hash")

    def __init__(self, terms: Optional[Mapping[Iterable[int], int]] = None,
                 nvars: int = 0, modulus: Optional[int] = None):
        if modulus is not None and modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        clean: Dict[Monomial, int] = {}
        width = nvars
        if terms:
            for exps, c in terms.items():
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {tuple(exps)}")
                key = _strip(exps)
                width = max(width, len(key))
                clean[key] = clean.get(key, 0) + c
        self._terms = _canonical(clean, modulus)
        self.nvars = width
        self.modulus = modulus
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int], nvars: int, modulus: Optional[int]) -> "MultiPoly":
        # trusted constructor: keys already stripped, coefficients already canonical
        obj = object.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj.modulus = modulus
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------
    @classmethod
    def const(cls, c: int, nvars: int = 0, modulus: Optional[int] = None) -> "MultiPoly":
        return cls({(): c}, nvars, modulus)

    @classmethod
    def var(cls, i: int, nvars: int = 0, modulus: Optional[int] = None) -> "MultiPoly":
        exps = [0] * (i + 1)
        exps[i] = 1
        return cls({tuple(exps): 1}, max(nvars, i + 1), modulus)

    @classmethod
    def monomial(cls, exps: Iterable[int], coef: int = 1, nvars: int = 0,
                 modulus: Optional[int] = None) -> "MultiPoly":
        return cls({tuple(exps): coef}, nvars, modulus)

    # -- basic accessors -----------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exps: Iterable[int]) -> int:
        return self._terms.get(_strip(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def variables(self):
        """Sorted indices of variables that actually occur."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def __len__(self):
        return len(self._terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        n = self.nvars
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0], n), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        n = self.nvars
        return max(self._terms.items(), key=lambda t: grlex_key(t[0], n))

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "MultiPoly") -> Optional[int]:
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"incompatible coefficient rings: modulus {self.modulus} vs {other.modulus}")
        return self.modulus

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(other, self.nvars, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return MultiPoly._raw(_canonical(out, m), max(self.nvars, other.nvars), m)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(_canonical({k: -c for k, c in self._terms.items()}, self.modulus),
                              self.nvars, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._check(other)
        out = _packed_product(self._terms, other._terms)
        return MultiPoly._raw(_canonical(out, m), max(self.nvars, other.nvars), m)

    __rmul__ = __mul__

    def mul_trunc(self, other: "MultiPoly", limit: int, weights=None) -> "MultiPoly":
        """Product keeping only monomials of weight <= ``limit``.

        The weight of ``x^e`` is ``sum(w_i * e_i)`` with non-negative ``w``
        (all ones when ``weights`` is None).  Pairs that cannot survive are
        never formed.
        """
        m = self._check(other)
        if weights is None:
            weight = sum
        else:
            def weight(mono):
                return sum(w * e for w, e in zip(weights, mono))
        out = _packed_product(self._terms, other._terms, limit, weight)
        return MultiPoly._raw(_canonical(out, m), max(self.nvars, other.nvars), m)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly._raw(_canonical({k: c * v for k, v in self._terms.items()}, self.modulus),
                              self.nvars, self.modulus)

    def mul_monomial(self, exps: Monomial, c: int = 1) -> "MultiPoly":
        """Multiply by ``c * x^exps``; cheaper than a general product."""
        exps = _strip(exps)
        out = {_mono_mul(k, exps): c * v for k, v in self._terms.items()}
        return MultiPoly._raw(_canonical(out, self.modulus), max(self.nvars, len(exps)),
                              self.modulus)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(1, self.nvars, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other, self.nvars, self.modulus)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.modulus == other.modulus and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._terms.items()), self.modulus))
        return self._hash

    # -- transformations -----------------------------------------------
    def substitute(self, bindings: Mapping[int, "MultiPoly | int"]) -> "MultiPoly":
        """Simultaneously replace ``x_i`` by ``bindings[i]``.

        Every variable occurring in ``self`` must be bound.  Powers of each
        bound value are cached so repeated exponents are computed once.
        """
        for i in self.variables():
            if i not in bindings:
                raise UnboundVariable(i)
        vals = {}
        for i, v in bindings.items():
            if isinstance(v, int):
                v = MultiPoly.const(v, 0, self.modulus)
            vals[i] = v
        modulus = self.modulus
        for v in vals.values():
            if v.modulus != modulus:
                if modulus is None:
                    modulus = v.modulus
                else:
                    raise ModulusMismatch(
                        f"incompatible coefficient rings: modulus {modulus} vs {v.modulus}")
        nv = max((v.nvars for v in vals.values()), default=0)
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = vals[i] if e == 1 else power(i, e - 1) * vals[i]
            return powers[key]

        acc: Dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            term = None
            for i, e in enumerate(mono):
                if e:
                    term = power(i, e) if term is None else term * power(i, e)
            if term is None:
                acc[()] = acc.get((), 0) + c
                continue
            for k, v in term._terms.items():
                acc[k] = acc.get(k, 0) + c * v
        return MultiPoly._raw(_canonical(acc, modulus), nv, modulus)

    def reduce_mod(self, m: int) -> "MultiPoly":
        """Coefficientwise reduction into ``[0, m)``."""
        if self.modulus is not None:
            raise ValueError(f"polynomial already has modulus {self.modulus}")
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        return MultiPoly._raw(_canonical(dict(self._terms), m), self.nvars, m)

    def lift(self) -> "MultiPoly":
        """Forget the modulus, keeping representatives in ``[0, m)``."""
        return MultiPoly._raw(dict(self._terms), self.nvars, None)

    def filter_terms(self, keep) -> "MultiPoly":
        """Keep only the terms whose monomial satisfies ``keep``."""
        return MultiPoly._raw({k: c for k, c in self._terms.items() if keep(k)},
                              self.nvars, self.modulus)

    def rename(self, mapping: Mapping[int, int], nvars: Optional[int] = None) -> "MultiPoly":
        """Move variable ``i`` to slot ``mapping[i]`` (a monomial relabelling)."""
        out: Dict[Monomial, int] = {}
        width = max(mapping.values(), default=-1) + 1
        for mono, c in self._terms.items():
            exps = [0] * width
            for i, e in enumerate(mono):
                if e:
                    exps[mapping[i]] += e
            key = _strip(exps)
            out[key] = out.get(key, 0) + c
        return MultiPoly._raw(_canonical(out, self.modulus),
                              max(width, nvars or 0), self.modulus)

    def is_divisible_by(self, n: int) -> bool:
        return all(c % n == 0 for c in self._terms.values())

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    # -- text ----------------------------------------------------------
    def to_text(self, names=None) -> str:
        """Deterministic text form, e.g. ``3*x0^2*x1 - 2*x1 + 1``."""
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [str(abs(c))]
            for i, e in enumerate(mono):
                if e:
                    nm = names(i) if names else f"x{i}"
                    factors.append(nm if e == 1 else f"{nm}^{e}")
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        mod = f", modulus={self.modulus}" if self.modulus is not None else ""
        return f"MultiPoly({self.to_text()!r}{mod})"


def _canonical(terms: Dict[Monomial, int], modulus: Optional[int]) -> Dict[Monomial, int]:
    if modulus is None:
        return {k: c for k, c in terms.items() if c}
    out = {}
    for k, c in terms.items():
        c %= modulus
        if c:
            out[k] = c
    return out


_TERM = re.compile(r"^(\d+)((?:\*[A-Za-z_]\w*(?:\^\d+)?)*)$")
_FACTOR = re.compile(r"\*([A-Za-z_]\w*?)(?:\^(\d+))?(?=\*|$)")


def parse(text: str, nvars: int = 0, modulus: Optional[int] = None, index=None) -> MultiPoly:
    """Inverse of :meth:`MultiPoly.to_text`.

    ``index`` maps a variable name to its slot; by default names must look
    like ``x<i>``.
    """
    if index is None:
        def index(name):
            if not re.fullmatch(r"x\d+", name):
                raise ValueError(f"unknown variable name {name!r}")
            return int(name[1:])
    s = text.strip()
    if s == "0":
        return MultiPoly({}, nvars, modulus)
    tokens = re.split(r"\s+([+-])\s+", s)
    signs = [1]
    bodies = [tokens[0]]
    for op, body in zip(tokens[1::2], tokens[2::2]):
        signs.append(1 if op == "+" else -1)
        bodies.append(body)
    terms: Dict[Monomial, int] = {}
    for sign, body in zip(signs, bodies):
        if body.startswith("-"):
            sign, body = -sign, body[1:]
        m = _TERM.match(body)
        if not m:
            raise ValueError(f"cannot parse term {body!r}")
        exps: Dict[int, int] = {}
        for name, e in _FACTOR.findall(m.group(2)):
            i = index(name)
            exps[i] = exps.get(i, 0) + int(e or 1)
        width = max(exps, default=-1) + 1
        key = _strip(exps.get(i, 0) for i in range(width))
        terms[key] = terms.get(key, 0) + sign * int(m.group(1))
    return MultiPoly(terms, nvars, modulus)

