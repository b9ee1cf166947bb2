"""Exact linear algebra over QQ and over rational function fields QQ(chi_1,...,chi_s).

Scalars are `fractions.Fraction`; parametric scalars are reduced ratios of
multivariate polynomials with Fraction coefficients.  Every dimension count in
the rest of the package (solution spaces, symbols, cohomology, localized
kernels) reduces to the rank/kernel computations here, so all arithmetic is
exact and every pivot choice is deterministic: leftmost column first, lowest
row index among nonzero candidates.

Matrices over a function field are eliminated fraction-free (Bareiss) after
clearing denominators, then normalized to reduced row echelon form with field
divisions.  Ranks over parameters are therefore certified symbolically; no
probabilistic shortcut is taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Fraction


def _fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """gcd of a family of rationals: gcd of numerators over lcm of denominators."""
    num = 0
    den = 1
    for v in values:
        num = math.gcd(num, abs(v.numerator))
        den = den * v.denominator // math.gcd(den, v.denominator)
    if num == 0:
        return Fraction(0)
    return Fraction(num, den)


class Poly:
    """Multivariate polynomial in parameters chi_1..chi_s with Fraction coefficients.

    Terms are stored as a dict {exponent tuple: coefficient} with zero
    coefficients stripped; the zero polynomial has an empty dict.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        cleaned = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError("exponent arity mismatch")
                c = Fraction(c)
                if c:
                    cleaned[tuple(exps)] = c
        self.terms = cleaned

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, j: int) -> "Poly":
        """The parameter chi_{j+1} (0-based j)."""
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.nvars, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.one(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(self.nvars, other)

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def leading(self) -> tuple[tuple, Fraction]:
        """Leading (exponent, coefficient) under lexicographic order."""
        e = max(self.terms)
        return e, self.terms[e]

    def content(self) -> Fraction:
        return _fraction_gcd(self.terms.values())

    def primitive(self) -> "Poly":
        """Integer-coefficient part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.terms[max(self.terms)] < 0:
            c = -c
        return Poly(self.nvars, {e: v / c for e, v in self.terms.items()})

    def div_exact(self, other: "Poly") -> "Poly":
        """Exact division; raises ValueError when `other` does not divide."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if not self:
            return Poly.zero(self.nvars)
        rem = self
        quot: dict = {}
        le, lc = other.leading()
        while rem:
            re, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(x < 0 for x in qe):
                raise ValueError("inexact polynomial division")
            qc = rc / lc
            quot[qe] = quot.get(qe, Fraction(0)) + qc
            rem = rem - Poly(self.nvars, {qe: qc}) * other
        return Poly(self.nvars, quot)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v *= x
            total += v
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for j, k in enumerate(e):
                if k == 1:
                    factors.append(f"χ_{j + 1}")
                elif k > 1:
                    factors.append(f"(χ_{j + 1})^{k}")
            body = "*".join(factors)
            if not body:
                piece = str(c)
            elif c == 1:
                piece = body
            elif c == -1:
                piece = "-" + body
            else:
                piece = f"{c}*{body}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    __repr__ = __str__


def _poly_to_rec(p: Poly) -> dict[int, Poly]:
    """Split off the first variable: {degree in chi_1: coefficient Poly in the rest}."""
    coeffs: dict[int, dict] = {}
    for e, c in p.terms.items():
        coeffs.setdefault(e[0], {})[e[1:]] = c
    return {d: Poly(p.nvars - 1, t) for d, t in coeffs.items()}


def _poly_from_rec(nvars: int, coeffs: dict[int, Poly]) -> Poly:
    terms: dict = {}
    for d, q in coeffs.items():
        for e, c in q.terms.items():
            terms[(d,) + e] = c
    return Poly(nvars, terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd via a pseudo-remainder sequence, recursing on variables."""
    if a.nvars != b.nvars:
        raise ValueError("arity mismatch")
    if not a:
        return b.primitive() if b else b
    if not b:
        return a.primitive()
    if a.nvars == 0:
        return Poly.one(0)
    ra, rb = _poly_to_rec(a), _poly_to_rec(b)
    if max(ra) == 0 and max(rb) == 0:
        g = poly_gcd(ra[0], rb[0])
        return _poly_from_rec(a.nvars, {0: g})
    conta = _rec_content(ra)
    contb = _rec_content(rb)
    pa = {d: q.div_exact(conta) for d, q in ra.items()}
    pb = {d: q.div_exact(contb) for d, q in rb.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        r = _rec_prem(pa, pb, a.nvars - 1)
        if not r:
            break
        rc = _rec_content(r)
        pa, pb = pb, {d: q.div_exact(rc) for d, q in r.items()}
    g = _poly_from_rec(a.nvars, pb)
    cont = poly_gcd(conta, contb)
    return (g * _poly_from_rec(a.nvars, {0: cont})).primitive()


def _rec_content(coeffs: dict[int, Poly]) -> Poly:
    it = iter(coeffs.values())
    g = next(it)
    for q in it:
        g = poly_gcd(g, q)
    return g


def _rec_prem(a: dict[int, Poly], b: dict[int, Poly], sub_nvars: int) -> dict[int, Poly]:
    """Pseudo-remainder of a by b, both nonzero, deg a >= deg b in the main variable."""
    da, db = max(a), max(b)
    lb = b[db]
    rem = dict(a)
    while rem and max(rem) >= db:
        dr = max(rem)
        lr = rem[dr]
        shift = dr - db
        new: dict[int, Poly] = {}
        for d, q in rem.items():
            new[d] = q * lb
        for d, q in b.items():
            t = new.get(d + shift, Poly.zero(sub_nvars)) - q * lr
            if t:
                new[d + shift] = t
            else:
                new.pop(d + shift, None)
        rem = {d: q for d, q in new.items() if q}
    return rem


class ParamScalar:
    """Element of QQ(chi_1..chi_s) stored as a ratio of polynomials.

    The denominator is kept primitive (integer coefficients, gcd one) with a
    positive leading coefficient; numerator and denominator are reduced by
    integer content only.  Full polynomial gcd reduction is available through
    :meth:`reduced` but is not applied automatically.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.nvars)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = Poly.one(num.nvars)
        else:
            c = den.content()
            if den.terms[max(den.terms)] < 0:
                c = -c
            if c != 1:
                den = Poly(den.nvars, {e: v / c for e, v in den.terms.items()})
                num = Poly(num.nvars, {e: v / c for e, v in num.terms.items()})
        self.num = num
        self.den = den

    @classmethod
    def from_const(cls, nvars: int, value) -> "ParamScalar":
        return cls(Poly.const(nvars, value))

    @classmethod
    def zero(cls, nvars: int) -> "ParamScalar":
        return cls(Poly.zero(nvars))

    @classmethod
    def one(cls, nvars: int) -> "ParamScalar":
        return cls(Poly.one(nvars))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def _coerce(self, other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, Poly):
            return ParamScalar(other)
        if isinstance(other, (int, Fraction)):
            return ParamScalar.from_const(self.nvars, other)
        raise TypeError(f"cannot coerce {other!r}")

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduced(full=True)
        return hash((r.num, r.den))

    def __add__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if self.den == other.den:
            return ParamScalar(self.num + other.num, self.den)
        return ParamScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar(-self.num, self.den)

    def __sub__(self, other) -> "ParamScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ParamScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        return ParamScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return ParamScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "ParamScalar":
        return self._coerce(other) / self

    def reduced(self, full: bool = False) -> "ParamScalar":
        """Content-reduced copy; with full=True also cancel the polynomial gcd."""
        if not full or not self.num:
            return ParamScalar(self.num, self.den)
        g = poly_gcd(self.num, self.den)
        if g.is_constant():
            return ParamScalar(self.num, self.den)
        return ParamScalar(self.num.div_exact(g), self.den.div_exact(g))

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        r = self.reduced(full=True)
        if r.den == Poly.one(self.nvars):
            return str(r.num)
        return f"({r.num})/({r.den})"

    __repr__ = __str__


Entry = Union[Fraction, ParamScalar]


@dataclass(frozen=True)
class RrefResult:
    matrix: "ExactMatrix"
    pivots: tuple[int, ...]


class ExactMatrix:
    """Dense rectangular matrix over QQ (params == 0) or QQ(chi_1..chi_s)."""

    __slots__ = ("rows", "cols", "entries", "params")

    def __init__(self, entries: Sequence[Sequence[Entry]], cols: int | None = None, params: int = 0):
        rows = [tuple(r) for r in entries]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged matrix")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = cols
        self.params = params

    def zero(self) -> Entry:
        return ParamScalar.zero(self.params) if self.params else Fraction(0)

    def one(self) -> Entry:
        return ParamScalar.one(self.params) if self.params else Fraction(1)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.zero()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, cols=other.cols, params=self.params)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


def _rref_field(m: list[list], one) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan over a field; returns (rows, pivot columns)."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = one / m[r][c]
        m[r] = [inv * x if x else x for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _clear_denominators(row: Sequence[ParamScalar], nparams: int) -> list[Poly]:
    d = Poly.one(nparams)
    for e in row:
        if e and e.den != Poly.one(nparams):
            d = d * e.den
    out = []
    for e in row:
        if not e:
            out.append(Poly.zero(nparams))
        else:
            out.append(e.num * d.div_exact(e.den))
    c = _fraction_gcd(v for p in out for v in p.terms.values())
    if c and c != 1:
        out = [Poly(nparams, {ex: v / c for ex, v in p.terms.items()}) for p in out]
    return out


def _rref_param(matrix: ExactMatrix) -> tuple[list[list[ParamScalar]], list[int]]:
    """Fraction-free (Bareiss) forward elimination, then field normalization."""
    s = matrix.params
    m: list[list[Poly]] = [_clear_denominators(row, s) for row in matrix.entries]
    nrows, ncols = len(m), matrix.cols
    pivots: list[int] = []
    prev = Poly.one(s)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            # Bareiss update: every entry is a minor, so division by the
            # previous pivot is exact.
            m[i] = [(p * a - f * b).div_exact(prev) for a, b in zip(m[i], m[r])]
        prev = p
        pivots.append(c)
        r += 1
    # Normalize the echelon form to RREF in the fraction field.
    field_rows: list[list[ParamScalar]] = []
    for i in range(nrows):
        if i < len(pivots):
            p = m[i][pivots[i]]
            field_rows.append([ParamScalar(e, p) for e in m[i]])
        else:
            field_rows.append([ParamScalar.zero(s) for _ in range(ncols)])
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for j in range(i):
            f = field_rows[j][c]
            if f:
                field_rows[j] = [a - f * b if b else a for a, b in zip(field_rows[j], field_rows[i])]
    return field_rows, pivots


def rref(matrix: ExactMatrix) -> RrefResult:
    """Reduced row echelon form with deterministic pivoting."""
    if matrix.rows == 0:
        return RrefResult(matrix, ())
    if matrix.params:
        rows, pivots = _rref_param(matrix)
    else:
        rows, pivots = _rref_field([list(r) for r in matrix.entries], Fraction(1))
    return RrefResult(ExactMatrix(rows, cols=matrix.cols, params=matrix.params), tuple(pivots))


def rank(matrix: ExactMatrix) -> int:
    return len(rref(matrix).pivots)


def kernel_basis(matrix: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of the right null space, one per free column.

    The basis vector for free column f has entry 1 at f and zeros at every
    other free column, which keeps downstream "parametric jet" choices
    reproducible.
    """
    result = rref(matrix)
    pivots = result.pivots
    free = [c for c in range(matrix.cols) if c not in set(pivots)]
    zero, one = matrix.zero(), matrix.one()
    columns = []
    for f in free:
        v = [zero] * matrix.cols
        v[f] = one
        for i, p in enumerate(pivots):
            e = result.matrix.entries[i][f]
            if e:
                v[p] = -e
        columns.append(v)
    rows = [[columns[j][i] for j in range(len(free))] for i in range(matrix.cols)]
    return ExactMatrix(rows, cols=len(free), params=matrix.params)
