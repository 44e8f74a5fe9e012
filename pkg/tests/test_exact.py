from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from equibrane.exact import (
    INF,
    F2Matrix,
    F2Subspace,
    Poly,
    f2_image,
    f2_kernel,
    f2_solve,
    format_point,
    is_squarefree,
    parse_point,
    poly_gcd,
    rational_nullspace,
    rational_roots,
    squarefree_decomposition,
)

X = sp.Symbol("x")

small = st.integers(-6, 6)
coeff_lists = st.lists(small, min_size=1, max_size=7)


def to_sympy(p: Poly):
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], X)


def from_sympy(q) -> Poly:
    return Poly([Fraction(int(c.p), int(c.q)) for c in reversed(q.all_coeffs())])


def test_parse_and_format_points():
    assert parse_point("3/6") == Fraction(1, 2)
    assert parse_point("inf") is INF
    assert format_point(Fraction(-4, 2)) == "-2"
    assert format_point(Fraction(2, 3)) == "2/3"
    with pytest.raises(ValueError):
        parse_point("abc")


def test_gcd_examples():
    z = Poly.X
    assert poly_gcd(z * z - 1, z - 1) == z - 1
    assert poly_gcd(z * z + 1, z - 1) == Poly([1])
    assert poly_gcd(Poly(), Poly()).is_zero()


def test_squarefree_zero_rejected():
    with pytest.raises(ValueError):
        is_squarefree(Poly())


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_arithmetic_matches_sympy(a, b):
    pa, pb = Poly(a), Poly(b)
    assert from_sympy(to_sympy(pa) * to_sympy(pb)) == pa * pb
    assert from_sympy(to_sympy(pa) + to_sympy(pb)) == pa + pb
    if not pb.is_zero():
        q, r = divmod(pa, pb)
        sq, sr = sp.div(to_sympy(pa), to_sympy(pb))
        assert (q, r) == (from_sympy(sq), from_sympy(sr))


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_gcd_matches_sympy(a, b):
    pa, pb = Poly(a), Poly(b)
    if pa.is_zero() and pb.is_zero():
        return
    expected = from_sympy(sp.gcd(to_sympy(pa), to_sympy(pb)))
    assert poly_gcd(pa, pb) == expected.monic()


@given(st.lists(st.tuples(small, st.integers(1, 3)), min_size=1, max_size=4), st.integers(1, 5))
@settings(max_examples=60, deadline=None)
def test_squarefree_decomposition_matches_sympy(roots, lead):
    p = Poly([lead])
    for r, k in roots:
        p = p * Poly([-r, 1]) ** k
    ours = {(f, k) for f, k in squarefree_decomposition(p)}
    _, factors = sp.sqf_list(to_sympy(p))
    theirs = {(from_sympy(f).monic(), k) for f, k in factors}
    assert ours == theirs
    rebuilt = Poly([lead])
    for f, k in ours:
        rebuilt = rebuilt * f ** k
    assert rebuilt == p


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=4),
       st.lists(small, min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_rational_roots_matches_sympy(roots, extra):
    p = Poly.from_roots(roots) * Poly([1, 0, 1])  # z^2 + 1 contributes no rational roots
    found = rational_roots(p)
    assert found == sorted(set(Fraction(r) for r in roots))
    assert set(found) == {Fraction(int(r.p), int(r.q)) for r in sp.roots(to_sympy(p), filter="Q")}


def test_homogenized_matches_composition():
    p = Poly([1, -2, 0, 3])
    num, den = Poly([-1, 0, 2]), Poly([-1, 0, 1])
    w = sp.Symbol("w")
    lhs = to_sympy(p).as_expr().subs(X, to_sympy(num).as_expr().subs(X, w) / to_sympy(den).as_expr().subs(X, w))
    rhs = to_sympy(p.homogenized(num, den, 3)).as_expr().subs(X, w) / to_sympy(den).as_expr().subs(X, w) ** 3
    assert sp.simplify(lhs - rhs) == 0


def test_rational_nullspace():
    basis = rational_nullspace([[1, 2, 3], [2, 4, 6]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


# ---------------------------------------------------------------------------
# F2


def test_f2_kernel_example():
    m = F2Matrix.from_lists([[1, 1, 0], [0, 1, 1]])
    ker = f2_kernel(m)
    assert ker.dim == 1 and 0b111 in ker


def brute_kernel(m: F2Matrix) -> set:
    return {x for x in range(1 << m.ncols) if m.apply(x) == 0}


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r).map(lambda rows: F2Matrix(r, c, rows))))


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_f2_kernel_against_brute_force(m):
    ker = f2_kernel(m)
    assert set(ker.elements()) == brute_kernel(m)
    assert ker.dim + m.rank() == m.ncols


@given(matrices, st.integers(0, 31))
@settings(max_examples=80, deadline=None)
def test_f2_solve_against_brute_force(m, b):
    b &= (1 << m.nrows) - 1
    sol = f2_solve(m, b)
    exists = any(m.apply(x) == b for x in range(1 << m.ncols))
    assert (sol is not None) == exists
    if sol is not None:
        assert m.apply(sol) == b


@given(st.lists(st.integers(0, 63), max_size=6))
@settings(max_examples=80, deadline=None)
def test_subspace_canonical_form(vectors):
    a = F2Subspace(6, vectors)
    b = F2Subspace(6, list(reversed(vectors)) + [0])
    assert a == b and hash(a) == hash(b)
    span = {0}
    for v in vectors:
        span |= {x ^ v for x in span}
    assert set(a.elements()) == span


@given(st.lists(st.integers(0, 31), max_size=4), st.lists(st.integers(0, 31), max_size=4))
@settings(max_examples=60, deadline=None)
def test_intersection_against_brute_force(u, w):
    a, b = F2Subspace(5, u), F2Subspace(5, w)
    assert set(a.intersection(b).elements()) == set(a.elements()) & set(b.elements())


def test_image_and_transpose():
    m = F2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    assert f2_image(m).dim == 2
    assert m.transpose().transpose() == m
    assert (F2Matrix.identity(2) @ m) == m
