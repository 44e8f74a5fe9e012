"""Exact arithmetic: rationals, points of the projective line, dense
univariate polynomials over Q, and F2 linear algebra on int bitsets.

Rationals are :class:`fractions.Fraction`; nothing in the package uses floats.
F2 vectors are Python ints, bit ``i`` holding coordinate ``i``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction


class _Infinity:
    """The point at infinity of the projective line (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ProjPoint = Union[Fraction, _Infinity]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_point(value) -> ProjPoint:
    """Parse a point of the projective line; ``"inf"`` is the point at infinity."""
    if value is INF:
        return INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return as_rational(value)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_point(p: ProjPoint) -> str:
    return "inf" if p is INF else format_rational(p)


def point_key(p: ProjPoint):
    """Total order on the projective line: finite points by value, then infinity."""
    return (1, Fraction(0)) if p is INF else (0, Fraction(p))


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Dense polynomial over Q; ``coeffs[i]`` is the coefficient of ``z**i``.

    Instances are immutable and hashable. The zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "Poly":
        p = cls([leading])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    X = None  # set below

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other) -> "Poly":
        other = Poly._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-Poly._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = Poly._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def scale(self, c) -> "Poly":
        return Poly(as_rational(c) * x for x in self.coeffs)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def substitute_neg(self) -> "Poly":
        """``p(-z)``."""
        return Poly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def homogenized(self, num: "Poly", den: "Poly", degree: int) -> "Poly":
        """``den**degree * p(num/den)`` for ``degree >= deg p``."""
        if degree < self.degree:
            raise ValueError("homogenizing degree below polynomial degree")
        acc = Poly()
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + (num ** k) * (den ** (degree - k)) * c
        return acc

    def __repr__(self) -> str:
        return f"Poly({self.to_string()})"

    def to_string(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{format_rational(abs(c))}*{mono}"
            else:
                body = format_rational(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


Poly.X = Poly([0, 1])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``poly_gcd(p, 0) == monic(p)`` and ``poly_gcd(0, 0) == 0``."""
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: Poly) -> bool:
    if p.is_zero():
        raise ValueError("squarefree test of the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``(A_k, k)`` with
    ``p = lc(p) * prod A_k**k``. Constant factors are omitted."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    out: list[tuple[Poly, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        k += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, ascending (rational root theorem)."""
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    roots = set()
    if p.coeff(0) == 0:
        roots.add(Fraction(0))
    k = 0
    while p.coeff(k) == 0:
        k += 1
    cs = p.coeffs[k:]
    if len(cs) <= 1:
        return sorted(roots)
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rational_nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` over Q, one vector per free column, in
    reduced form (free coordinate 1, other free coordinates 0)."""
    m = [[as_rational(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# F2 linear algebra


def bits_to_str(v: int, n: int) -> str:
    """Coordinate string, coordinate 0 first."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def str_to_bits(s: str) -> int:
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def _echelon(rows: Iterable[int]) -> list[int]:
    """Reduced echelon form: pivots are leading (highest) bits, every pivot
    column cleared in all other rows, rows sorted by pivot descending."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            # reduce existing rows by the new pivot
            top = v.bit_length() - 1
            basis = [b ^ v if (b >> top) & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    # full reduction
    out = sorted(basis, reverse=True)
    for i in range(len(out)):
        piv = out[i].bit_length() - 1
        for j in range(len(out)):
            if j != i and (out[j] >> piv) & 1:
                out[j] ^= out[i]
    return sorted(out, reverse=True)


class F2Subspace:
    """Subspace of F2^n stored in canonical reduced echelon form, so that
    equal subspaces have equal representations."""

    __slots__ = ("n", "basis")

    def __init__(self, n: int, vectors: Iterable[int] = ()):
        object.__setattr__(self, "n", n)
        vecs = list(vectors)
        for v in vecs:
            if v < 0 or v >> n:
                raise ValueError(f"vector {v:b} outside F2^{n}")
        object.__setattr__(self, "basis", tuple(_echelon(vecs)))

    def __setattr__(self, name, value):
        raise AttributeError("F2Subspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: int) -> int:
        for b in self.basis:
            if (v >> (b.bit_length() - 1)) & 1:
                v ^= b
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, F2Subspace) and (self.n, self.basis) == (other.n, other.basis)

    def __hash__(self) -> int:
        return hash((self.n, self.basis))

    def __add__(self, other: "F2Subspace") -> "F2Subspace":
        return F2Subspace(self.n, self.basis + other.basis)

    def intersection(self, other: "F2Subspace") -> "F2Subspace":
        # x in both  <=>  x = sum a_i u_i = sum b_j w_j ; kernel of [U; W]
        rows = list(self.basis) + list(other.basis)
        k = len(self.basis)
        m = F2Matrix.from_columns(self.n, rows)
        out = []
        for coeffs in f2_kernel(m).basis:
            v = 0
            for i in range(k):
                if (coeffs >> i) & 1:
                    v ^= rows[i]
            out.append(v)
        return F2Subspace(self.n, out)

    def elements(self) -> list[int]:
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return sorted(out)

    def to_json(self) -> dict:
        return {"ambient_dim": self.n, "dim": self.dim,
                "basis": [bits_to_str(b, self.n) for b in self.basis]}

    def __repr__(self) -> str:
        return f"F2Subspace(n={self.n}, basis={[bits_to_str(b, self.n) for b in self.basis]})"


class F2Matrix:
    """Matrix over F2 with rows stored as int bitsets of width ``ncols``."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        rows = list(rows) if rows is not None else [0] * nrows
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError("row wider than ncols")
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("F2Matrix is immutable")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "F2Matrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = [sum((int(x) & 1) << j for j, x in enumerate(r)) for r in entries]
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> "F2Matrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in range(nrows):
                if (col >> i) & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(columns), rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                if (r >> j) & 1:
                    cols[j] |= 1 << i
        return cols

    def apply(self, v: int) -> int:
        """``M v`` for a column vector ``v`` of width ``ncols``."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & v).count("1") & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = [self.apply(c) for c in other.columns()]
        return F2Matrix.from_columns(self.nrows, cols)

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows, self.columns())

    def rank(self) -> int:
        return len(_echelon(self.rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, F2Matrix) and (self.nrows, self.ncols, self.rows) == (
            other.nrows, other.ncols, other.rows)

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.rows))

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols})"


def f2_kernel(m: F2Matrix) -> F2Subspace:
    """Canonical basis of ``{x in F2^ncols : m x = 0}``."""
    n = m.ncols
    # row-reduce with pivots on the lowest set bit so free columns are explicit
    rows = [r for r in m.rows if r]
    pivot_rows: dict[int, int] = {}
    for r in rows:
        for col, pr in pivot_rows.items():
            if (r >> col) & 1:
                r ^= pr
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c2 in list(pivot_rows):
            if (pivot_rows[c2] >> col) & 1:
                pivot_rows[c2] ^= r
        pivot_rows[col] = r
    basis = []
    for free in range(n):
        if free in pivot_rows:
            continue
        v = 1 << free
        for col, pr in pivot_rows.items():
            if (pr >> free) & 1:
                v |= 1 << col
        basis.append(v)
    return F2Subspace(n, basis)


def f2_solve(m: F2Matrix, b: int) -> int | None:
    """One solution of ``m x = b`` or None."""
    aug = [(r, (b >> i) & 1) for i, r in enumerate(m.rows)]
    pivots: list[tuple[int, int, int]] = []
    for r, rhs in aug:
        for col, pr, prhs in pivots:
            if (r >> col) & 1:
                r ^= pr
                rhs ^= prhs
        if not r:
            if rhs:
                return None
            continue
        col = (r & -r).bit_length() - 1
        pivots = [(c, pr ^ r, prhs ^ rhs) if (pr >> col) & 1 else (c, pr, prhs)
                  for c, pr, prhs in pivots]
        pivots.append((col, r, rhs))
    x = 0
    for col, pr, prhs in pivots:
        if prhs:
            x |= 1 << col
    if m.apply(x) != b:  # pragma: no cover - guards the elimination above
        raise AssertionError("F2 solve produced a non-solution")
    return x


def f2_image(m: F2Matrix) -> F2Subspace:
    return F2Subspace(m.nrows, m.columns())
