"""Normal-ordered polynomials over Heisenberg-type algebras.

Three families of algebras are supported, all of them tensor products of
one-variable Weyl algebras once the antisymmetric generators are reduced to
canonical index pairs:

``H``   generalized Heisenberg algebra: ``x[m,n]``, ``d[m,n]`` (m < n) with
        ``[d[m,n], x[a,b]] = g(m,a) g(n,b) - g(m,b) g(n,a)``.
``HP``  ``H`` extended by vector pairs ``p[m]``, ``dv[m]`` with
        ``[dv[m], p[n]] = g(m,n)``.
``A``   plain Heisenberg-Weyl algebra ``xa[a]``, ``da[a]``, ``[da[a], xa[b]] = delta``.

``g`` is the Euclidean or Minkowski ``diag(-1, 1, ..., 1)`` metric.  For
canonical generators every commutator reduces to ``[d_i, x_j] = s_i delta_ij``
with ``s_i = +-1``, so a product of normal-ordered monomials expands with the
Wick formula ``d^b x^c = sum_k k! C(b,k) C(c,k) s^k x^(c-k) d^(b-k)`` applied
slot by slot.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from math import comb, factorial
from operator import add
from typing import Iterable, NamedTuple

from .exactnum import ONE, ZERO, GaussianRational, format_scalar, parse_scalar

EUCLIDEAN = "euclidean"
MINKOWSKI = "minkowski"

COORDINATE_KINDS = ("x", "p", "xa")
DERIVATIVE_KINDS = ("d", "dv", "da")
PAIR_KINDS = ("x", "d")
_PARTNER = {"x": "d", "p": "dv", "xa": "da", "d": "x", "dv": "p", "da": "xa"}
_MODE_KINDS = {"H": ("x", "d"), "HP": ("x", "d", "p", "dv"), "A": ("xa", "da")}


class Metric(NamedTuple):
    """Diagonal metric on ``1..dim``; Minkowski is ``diag(-1, 1, ..., 1)``."""

    dim: int
    kind: str = EUCLIDEAN

    def sign(self, mu: int) -> int:
        return -1 if (self.kind == MINKOWSKI and mu == 1) else 1

    def __call__(self, mu: int, nu: int) -> int:
        return self.sign(mu) if mu == nu else 0

    def __str__(self):
        return f"{self.kind}({self.dim})"


def make_metric(n: int, kind: str = EUCLIDEAN) -> Metric:
    if kind not in (EUCLIDEAN, MINKOWSKI):
        raise ValueError(f"unknown metric kind {kind!r}")
    if n < 1:
        raise ValueError("metric dimension must be positive")
    return Metric(n, kind)


def canonical_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


class Generator(NamedTuple):
    kind: str
    idx: tuple

    def __str__(self):
        return f"{self.kind}[{','.join(map(str, self.idx))}]"

    @property
    def is_derivative(self) -> bool:
        return self.kind in DERIVATIVE_KINDS


_GEN_RE = re.compile(r"(xa|da|dv|x|d|p)\[(\d+)(?:,(\d+))?\]")


def parse_generator(text: str) -> tuple[int, Generator | None]:
    """Parse ``"x[2,1]"`` etc. into ``(sign, generator)``.

    Pair generators are reduced to ``lo < hi``; a diagonal pair gives
    ``(0, None)``.
    """
    m = _GEN_RE.fullmatch(text.replace(" ", ""))
    if m is None:
        raise ValueError(f"bad generator syntax: {text!r}")
    kind, i, j = m.group(1), int(m.group(2)), m.group(3)
    if kind in PAIR_KINDS:
        if j is None:
            raise ValueError(f"{kind} needs an index pair: {text!r}")
        j = int(j)
        if i == j:
            return 0, None
        if i > j:
            return -1, Generator(kind, (j, i))
        return 1, Generator(kind, (i, j))
    if j is not None:
        raise ValueError(f"{kind} takes a single index: {text!r}")
    return 1, Generator(kind, (i,))


class Algebra:
    """One concrete algebra: mode, metric and the canonical generator slots."""

    def __init__(self, mode: str, metric: Metric):
        if mode not in _MODE_KINDS:
            raise ValueError(f"unknown algebra mode {mode!r}")
        self.mode = mode
        self.metric = metric
        n = metric.dim
        if mode == "A":
            coords = [Generator("xa", (a,)) for a in range(1, n + 1)]
            signs = [1] * n
        else:
            pairs = canonical_pairs(n)
            coords = [Generator("x", pq) for pq in pairs]
            signs = [metric.sign(a) * metric.sign(b) for a, b in pairs]
            if mode == "HP":
                coords += [Generator("p", (a,)) for a in range(1, n + 1)]
                signs += [metric.sign(a) for a in range(1, n + 1)]
        self.coords = coords
        self.derivs = [Generator(_PARTNER[g.kind], g.idx) for g in coords]
        self.signs = tuple(signs)
        self.nvars = len(coords)
        self.slot = {g: i for i, g in enumerate(coords)}
        self.slot.update({g: self.nvars + i for i, g in enumerate(self.derivs)})
        self.generators = coords + self.derivs

    @property
    def n(self) -> int:
        return self.metric.dim

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.mode == other.mode
                and self.metric == other.metric)

    def __hash__(self):
        return hash((self.mode, self.metric))

    def __reduce__(self):
        return (_algebra, (self.mode, self.metric.dim, self.metric.kind))

    def __repr__(self):
        return f"Algebra({self.mode!r}, {self.metric})"

    # construction --------------------------------------------------------
    def one(self) -> "NCPoly":
        return NCPoly(self, {self.unit_monomial(): ONE})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def scalar(self, c) -> "NCPoly":
        c = GaussianRational.coerce(c)
        return NCPoly(self, {self.unit_monomial(): c} if c else {})

    def unit_monomial(self) -> tuple:
        return (0,) * (2 * self.nvars)

    def check_generator(self, g: Generator) -> int:
        if g.kind not in _MODE_KINDS[self.mode]:
            raise ValueError(f"generator {g} does not belong to mode {self.mode}")
        if g not in self.slot:
            raise ValueError(f"generator {g} out of range for {self}")
        return self.slot[g]

    def gen(self, kind: str, *idx: int) -> "NCPoly":
        sign, g = parse_generator(f"{kind}[{','.join(map(str, idx))}]")
        if g is None:
            if kind not in _MODE_KINDS[self.mode]:
                raise ValueError(f"generator kind {kind} does not belong to mode {self.mode}")
            return self.zero()
        mono = [0] * (2 * self.nvars)
        mono[self.check_generator(g)] = 1
        return NCPoly(self, {tuple(mono): GaussianRational(sign)})

    def x(self, i, j):
        return self.gen("x", i, j)

    def d(self, i, j):
        return self.gen("d", i, j)

    def p(self, i):
        return self.gen("p", i)

    def dv(self, i):
        return self.gen("dv", i)

    def xa(self, i):
        return self.gen("xa", i)

    def da(self, i):
        return self.gen("da", i)

    def parse(self, text: str) -> "NCPoly":
        """Parse an expression; products are taken in this algebra, in order."""
        return _Parser(self, text).parse()

    # monomials -----------------------------------------------------------
    def format_monomial(self, mono: tuple) -> str:
        parts = []
        for g, e in zip(self.generators, mono):
            if e:
                parts.append(str(g) if e == 1 else f"{g}^{e}")
        return "*".join(parts) if parts else "1"

    def parse_monomial(self, text: str) -> tuple:
        mono = [0] * (2 * self.nvars)
        if text.strip() == "1":
            return tuple(mono)
        for factor in text.split("*"):
            name, _, exp = factor.partition("^")
            sign, g = parse_generator(name)
            if sign != 1:
                raise ValueError(f"non-canonical generator in monomial: {factor!r}")
            mono[self.check_generator(g)] += int(exp) if exp else 1
        return tuple(mono)


@lru_cache(maxsize=None)
def _algebra(mode: str, n: int, kind: str) -> Algebra:
    return Algebra(mode, make_metric(n, kind))


def heisenberg(n: int, kind: str = EUCLIDEAN) -> Algebra:
    """``H_n`` (Euclidean) or its Minkowski version."""
    return _algebra("H", n, kind)


def extended_heisenberg(n: int, kind: str = MINKOWSKI) -> Algebra:
    """``H_n`` plus the vector pairs ``(p_mu, d_mu)``."""
    return _algebra("HP", n, kind)


def weyl(m: int) -> Algebra:
    """Heisenberg-Weyl algebra ``A_m``."""
    return _algebra("A", m, EUCLIDEAN)


def _graded_key(mono):
    return (sum(mono), tuple(-e for e in mono))


class _Prepared(NamedTuple):
    mono: tuple
    coef: GaussianRational
    xsupp: tuple
    dsupp: tuple
    xdeg: int
    ddeg: int


class NCPoly:
    """Normal-ordered element of an :class:`Algebra`.

    ``terms`` maps exponent tuples (coordinate slots then derivative slots)
    to nonzero :class:`GaussianRational` coefficients.  Treat as immutable.
    """

    __slots__ = ("alg", "terms", "_prep", "_hash")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms
        self._prep = None
        self._hash = None

    @classmethod
    def from_raw(cls, alg, terms: dict) -> "NCPoly":
        return cls(alg, {m: c for m, c in terms.items() if c})

    # inspection ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def d_degree_of(self, mono) -> int:
        return sum(mono[self.alg.nvars:])

    def x_degree_of(self, mono) -> int:
        return sum(mono[: self.alg.nvars])

    def d_degree(self) -> int:
        """Largest d-degree present (-1 for the zero polynomial)."""
        return max((self.d_degree_of(m) for m in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((self.x_degree_of(m) for m in self.terms), default=-1)

    def is_dpoly(self) -> bool:
        return all(self.x_degree_of(m) == 0 for m in self.terms)

    def is_state(self) -> bool:
        return all(self.d_degree_of(m) == 0 for m in self.terms)

    def coefficient(self, mono) -> GaussianRational:
        if isinstance(mono, str):
            mono = self.alg.parse_monomial(mono)
        return self.terms.get(mono, ZERO)

    def constant(self) -> GaussianRational:
        return self.terms.get(self.alg.unit_monomial(), ZERO)

    def is_real(self) -> bool:
        return all(c.is_real for c in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _graded_key(kv[0]))

    def part(self, ddeg: int) -> "NCPoly":
        """Homogeneous component of d-degree ``ddeg``."""
        return NCPoly(self.alg, {m: c for m, c in self.terms.items()
                                 if self.d_degree_of(m) == ddeg})

    def truncate(self, dmax: int) -> "NCPoly":
        return truncate(self, dmax)

    # arithmetic ----------------------------------------------------------
    def _check(self, other: "NCPoly"):
        if self.alg != other.alg:
            raise ValueError(f"algebra mismatch: {self.alg} vs {other.alg}")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return NCPoly.from_raw(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "NCPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return self.alg.zero()
        return NCPoly(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.alg.one()
        for _ in range(k):
            result = mul(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.alg == other.alg and self.terms == other.terms
        try:
            return self == self.alg.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alg, frozenset(self.terms.items())))
        return self._hash

    def __reduce__(self):
        return (NCPoly, (self.alg, self.terms))

    # serialization ------------------------------------------------------
    def to_terms(self) -> list[dict]:
        """Canonical term list: ``[{"coeff": "1/2", "mono": "x[1,2]*d[1,3]"}, ...]``."""
        return [{"coeff": format_scalar(c), "mono": self.alg.format_monomial(m)}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_terms(cls, alg: Algebra, terms: Iterable[dict]) -> "NCPoly":
        out = {}
        for t in terms:
            m = alg.parse_monomial(t["mono"])
            out[m] = out.get(m, ZERO) + parse_scalar(t["coeff"])
        return cls.from_raw(alg, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = self.alg.format_monomial(m)
            cs = format_scalar(c)
            if mono == "1":
                parts.append(cs if c.is_real or not c.re else f"({cs})")
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}" if c.is_real or not c.re else f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"NCPoly({self.alg.mode}, {self})"

    # internals ----------------------------------------------------------
    def prepared(self) -> list[_Prepared]:
        if self._prep is None:
            V = self.alg.nvars
            prep = []
            for m, c in self.terms.items():
                xs = tuple(i for i in range(V) if m[i])
                ds = tuple(i for i in range(V) if m[V + i])
                prep.append(_Prepared(m, c, xs, ds, sum(m[:V]), sum(m[V:])))
            self._prep = prep
        return self._prep


def _wick_into(alg, left, right, out, dmax, sign, contracted_only):
    """Accumulate ``sign * left*right`` (normal-ordered) into ``out``.

    With ``contracted_only`` the zero-contraction terms are skipped; those
    cancel in a commutator.
    """
    V = alg.nvars
    s = alg.signs
    by_var = {}
    if contracted_only:
        for t in right:
            for i in t.xsupp:
                by_var.setdefault(i, []).append(t)
    for ta in left:
        ma, ca, ddeg_a = ta.mono, ta.coef, ta.ddeg
        if sign < 0:
            ca = -ca
        if contracted_only:
            if len(ta.dsupp) == 1:
                candidates = by_var.get(ta.dsupp[0], ())
            else:
                seen = {}
                for i in ta.dsupp:
                    for t in by_var.get(i, ()):
                        seen[id(t)] = t
                candidates = seen.values()
        else:
            candidates = right
        for tb in candidates:
            mb = tb.mono
            if dmax is not None and ddeg_a + tb.ddeg - tb.xdeg > dmax:
                continue
            contract = [i for i in ta.dsupp if mb[i]]
            if not contract:
                if contracted_only:
                    continue
                key = tuple(map(add, ma, mb))
                if dmax is not None and ddeg_a + tb.ddeg > dmax:
                    continue
                out[key] = out.get(key, ZERO) + ca * tb.coef
                continue
            base = list(map(add, ma, mb))
            cab = ca * tb.coef
            ranges = [range(min(ma[V + i], mb[i]) + 1) for i in contract]
            for ks in product(*ranges):
                total = sum(ks)
                if total == 0 and contracted_only:
                    continue
                if dmax is not None and ddeg_a + tb.ddeg - total > dmax:
                    continue
                mult = 1
                key = base[:]
                for i, k in zip(contract, ks):
                    if k:
                        b, c = ma[V + i], mb[i]
                        mult *= factorial(k) * comb(b, k) * comb(c, k)
                        if s[i] < 0 and k % 2:
                            mult = -mult
                        key[i] -= k
                        key[V + i] -= k
                key = tuple(key)
                out[key] = out.get(key, ZERO) + cab * mult


def mul(a: NCPoly, b: NCPoly, dmax: int | None = None) -> NCPoly:
    """Normal-ordered product; with ``dmax`` terms of higher d-degree are dropped."""
    a._check(b)
    out: dict = {}
    _wick_into(a.alg, a.prepared(), b.prepared(), out, dmax, 1, False)
    return NCPoly.from_raw(a.alg, out)


def commutator(a: NCPoly, b: NCPoly, dmax: int | None = None) -> NCPoly:
    """``ab - ba``.  Only contracted Wick terms are formed; the rest cancel."""
    a._check(b)
    out: dict = {}
    _wick_into(a.alg, a.prepared(), b.prepared(), out, dmax, 1, True)
    _wick_into(a.alg, b.prepared(), a.prepared(), out, dmax, -1, True)
    return NCPoly.from_raw(a.alg, out)


def truncate(a: NCPoly, dmax: int) -> NCPoly:
    """Drop every term whose d-degree exceeds ``dmax``."""
    if dmax < 0:
        raise ValueError("dmax must be non-negative")
    V = a.alg.nvars
    return NCPoly(a.alg, {m: c for m, c in a.terms.items() if sum(m[V:]) <= dmax})


def act(op: NCPoly, state: NCPoly) -> NCPoly:
    """The action on polynomials in the coordinate generators.

    Coordinates multiply; ``d_i`` acts as ``s_i`` times the partial derivative
    in ``x_i``, which is the derivation fixed by ``[d_i, x_i] = s_i``.
    """
    op._check(state)
    if not state.is_state():
        raise ValueError("state must not contain derivative generators")
    V = op.alg.nvars
    s = op.alg.signs
    out: dict = {}
    for mo, co in op.terms.items():
        dpart = mo[V:]
        for ms, cs in state.terms.items():
            mult = 1
            key = list(ms)
            for i, b in enumerate(dpart):
                if not b:
                    continue
                c = ms[i]
                if b > c:
                    mult = 0
                    break
                mult *= factorial(c) // factorial(c - b)
                if s[i] < 0 and b % 2:
                    mult = -mult
                key[i] = c - b
            if not mult:
                continue
            for i in range(V):
                key[i] += mo[i]
            key = tuple(key)
            out[key] = out.get(key, ZERO) + co * cs * mult
    return NCPoly.from_raw(op.alg, out)


def linear_combination(alg: Algebra, items) -> NCPoly:
    """Sum of ``coef * poly`` for ``(coef, poly)`` pairs."""
    out: dict = {}
    for coef, poly in items:
        coef = GaussianRational.coerce(coef)
        if not coef:
            continue
        if poly.alg != alg:
            raise ValueError(f"algebra mismatch: {alg} vs {poly.alg}")
        for m, c in poly.terms.items():
            out[m] = out.get(m, ZERO) + coef * c
    return NCPoly.from_raw(alg, out)


class _Parser:
    _TOKEN = re.compile(r"\s*(?:(?P<gen>(?:xa|da|dv|x|d|p)\[[\d,\s]+\])|(?P<num>\d+)"
                        r"|(?P<i>i)|(?P<op>[-+*/^()]))")

    def __init__(self, alg: Algebra, text: str):
        self.alg = alg
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse {text[pos:]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> NCPoly:
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing tokens: {self.tokens[self.pos:]}")
        return result

    def expr(self) -> NCPoly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        result = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> NCPoly:
        result = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                result = mul(result, self.power())
            elif tok == ("op", "/"):
                self.take()
                kind, val = self.take()
                if kind != "num":
                    raise ValueError("only integer divisors are supported")
                result = result.scale(GaussianRational(1) / int(val))
            else:
                return result

    def power(self) -> NCPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> NCPoly:
        kind, val = self.take()
        if kind == "gen":
            sign, g = parse_generator(val)
            if g is None:
                return self.alg.zero()
            return self.alg.gen(g.kind, *g.idx).scale(sign)
        if kind == "num":
            return self.alg.scalar(int(val))
        if kind == "i":
            return self.alg.scalar(parse_scalar("i"))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")
