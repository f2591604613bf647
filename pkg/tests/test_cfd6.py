from __future__ import annotations

import io
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from burgerspim import cfd6
from burgerspim.errors import DomainError, FactorizationError, SizeError


def _taylor_oracle(left: dict[int, Fraction], offsets: list[int]) -> list[sp.Rational]:
    """Independent sympy solve of the Taylor-matching conditions."""
    x = sp.symbols("x")
    bs = sp.symbols(f"b0:{len(offsets)}")
    eqs = []
    for k in range(len(offsets)):
        f = x**k
        lhs = sum(b * f.subs(x, o) for b, o in zip(bs, offsets))
        rhs = sum(sp.Rational(a.numerator, a.denominator) * sp.diff(f, x, 2).subs(x, o) for o, a in left.items())
        eqs.append(sp.Eq(lhs, rhs))
    sol = sp.solve(eqs, bs)
    return [sol[b] for b in bs]


def test_row1_closure_matches_symbolic_oracle():
    derived = cfd6.derive_closure_row(cfd6.ROW1_LEFT, range(7))
    oracle = _taylor_oracle(cfd6.ROW1_LEFT, list(range(7)))
    assert [sp.Rational(d.numerator, d.denominator) for d in derived] == oracle
    assert derived[0] == Fraction(13097, 990)
    assert tuple(derived[1:]) == cfd6.ROW1_TAIL


def test_row2_closure_matches_printed_coefficients():
    derived = cfd6.derive_closure_row(cfd6.ROW2_LEFT, range(-1, 6))
    assert tuple(derived) == cfd6.ROW2_RHS
    assert sum(cfd6.ROW2_RHS) == 0


def test_printed_row1_lead_leaves_constant_defect():
    defect = cfd6.ROW1_LEAD_PRINTED + sum(cfd6.ROW1_TAIL)
    assert defect == Fraction(1, 155430)
    assert cfd6.ROW1_LEAD_DERIVED + sum(cfd6.ROW1_TAIL) == 0


def test_interior_row_pattern_n8():
    op = cfd6.assemble_closure(8, 1.0)
    row = op.b_matrix[3]
    np.testing.assert_array_equal(row[1:6], [3 / 44, 12 / 11, -51 / 22, 12 / 11, 3 / 44])
    assert row[0] == 0 and row[6] == 0
    a = op.a_matrix[3]
    np.testing.assert_array_equal(a[2:5], [2 / 11, 1.0, 2 / 11])


def test_closure_metadata_records_both_leads():
    op = cfd6.assemble_closure(10, 0.1)
    assert op.metadata["row1_lead_printed"] == "2077/157"
    assert op.metadata["row1_lead_derived"] == "13097/990"
    printed = cfd6.assemble_closure(10, 0.1, leading="printed")
    assert printed.b_matrix[0, 0] * 0.01 == pytest.approx(2077 / 157)


def test_closure_structure_and_mirroring():
    n, h = 12, 0.1
    op = cfd6.assemble_closure(n, h)
    assert np.all(np.diag(op.a_matrix) == 1.0)
    np.testing.assert_array_equal(op.a_matrix[::-1, ::-1], op.a_matrix)
    np.testing.assert_array_equal(op.b_matrix[::-1, ::-1], op.b_matrix)
    interior = op.a_matrix[2:-2]
    assert np.all(np.abs(np.diag(op.a_matrix)[2:-2]) > np.abs(interior).sum(axis=1) - 1.0)


@pytest.mark.parametrize("kind", ["closure", "neumann", "dirichlet"])
def test_size_errors(kind):
    with pytest.raises(SizeError):
        cfd6.assemble(kind, 7, 0.1)
    with pytest.raises(SizeError):
        cfd6.assemble_periodic(5, 0.1)


def test_unknown_kind_and_bad_spacing():
    with pytest.raises(DomainError):
        cfd6.assemble("spectral", 10, 0.1)
    with pytest.raises(DomainError):
        cfd6.assemble_closure(10, 0.0)


@pytest.mark.parametrize("n", [8, 13, 41])
def test_closure_exact_on_quadratic(n):
    x = np.linspace(0, 1, n)
    op = cfd6.assemble_closure(n, x[1])
    f2 = np.linalg.solve(op.a_matrix, op.b_matrix @ x**2)
    np.testing.assert_allclose(f2, 2.0, atol=1e-9)


def test_closure_interior_order_on_sine():
    errs = []
    for n in (21, 41, 81):
        x = np.linspace(0, 1, n)
        op = cfd6.assemble_closure(n, x[1])
        f2 = np.linalg.solve(op.a_matrix, op.b_matrix @ np.sin(2 * np.pi * x))
        exact = -4 * np.pi**2 * np.sin(2 * np.pi * x)
        errs.append(np.abs(f2 - exact)[n // 4 : 3 * n // 4].max())
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders >= 5.5)


@pytest.mark.parametrize("n", [16, 32, 33])
def test_periodic_symmetry_and_row_sums(n):
    op = cfd6.assemble_periodic(n, 1.0 / n)
    assert np.array_equal(op.a_matrix, op.a_matrix.T)
    assert np.array_equal(op.b_matrix, op.b_matrix.T)
    assert sum(cfd6.INTERIOR_RHS) == 0
    assert np.abs(op.b_matrix @ np.ones(n)).max() <= 1e-13 * n**2


def test_periodic_spectrum_nonpositive():
    gen = cfd6.form_generator(cfd6.assemble_periodic(32, 1 / 32), 1.0)
    eig = np.linalg.eigvals(gen.h_matrix)
    norm = np.linalg.norm(gen.h_matrix, 2)
    assert np.abs(eig.imag).max() <= 1e-8 * norm
    assert eig.real.max() <= 1e-8 * norm


@pytest.mark.parametrize("kind", ["closure", "periodic", "neumann"])
def test_row_sums_vanish(kind):
    h = 0.05
    op = cfd6.assemble(kind, 21, h)
    sums = op.b_matrix @ np.ones(21)
    assert np.abs(sums).max() <= 1e-12 / h**2


def test_form_generator_rejects_nonpositive_omega():
    op = cfd6.assemble_periodic(16, 1 / 16)
    for omega in (0.0, -1.0, float("nan")):
        with pytest.raises(DomainError):
            cfd6.form_generator(op, omega)


def test_periodic_generator_kills_constants():
    gen = cfd6.build_generator("periodic", 16, 1 / 16, 1.0)
    assert np.abs(gen.h_matrix @ np.ones(16)).max() <= 1e-12


def test_closure_generator_quadratic_interior():
    x = np.linspace(0, 1, 16)
    gen = cfd6.build_generator("closure", 16, x[1], 1.0)
    np.testing.assert_allclose((gen.h_matrix @ x**2)[2:-2], 2.0, atol=1e-9)


def test_singular_a_raises():
    op = cfd6.CompactOperator(np.zeros((8, 8)), np.eye(8), 0.1, "closure")
    with pytest.raises(FactorizationError):
        cfd6.form_generator(op, 1.0)


def _folded(n: int, h: float, parity: int) -> np.ndarray:
    """Reference: periodic operator on the reflected 2(n-1) node ring, folded back."""
    m = 2 * (n - 1)
    gen = cfd6.build_generator("periodic", m, h, 1.0)
    ext = np.zeros((m, n))
    for j in range(m):
        k = j if j < n else m - j
        ext[j, k] += 1.0 if (j < n or parity > 0) else -1.0
    return (gen.h_matrix @ ext)[:n]


def test_neumann_equals_even_reflection():
    n, h = 17, 1 / 16
    gen = cfd6.build_generator("neumann", n, h, 1.0)
    np.testing.assert_allclose(gen.h_matrix, _folded(n, h, +1), atol=1e-9 / h**2, rtol=0)


def test_dirichlet_equals_odd_reflection():
    n, h = 17, 1 / 16
    gen = cfd6.build_generator("dirichlet", n, h, 1.0)
    ref = _folded(n, h, -1)
    ref[0] = ref[-1] = 0.0
    ref[:, 0] = ref[:, -1] = 0.0
    np.testing.assert_allclose(gen.h_matrix, ref, atol=1e-9 / h**2, rtol=0)
    assert np.all(gen.h_matrix[[0, -1]] == 0.0)
    assert np.all(gen.h_matrix[:, [0, -1]] == 0.0)


def test_dirichlet_blocks_shapes():
    gen = cfd6.build_generator("closure", 12, 0.1, 1.0)
    hii, hib = cfd6.dirichlet_blocks(gen)
    assert hii.shape == (10, 10) and hib.shape == (10, 2)
    np.testing.assert_array_equal(hib[:, 0], gen.h_matrix[1:-1, 0])


def test_matrix_dump_round_trip():
    op = cfd6.assemble_closure(9, 1 / 8)
    buf = io.StringIO()
    cfd6.dump_matrix(op.b_matrix, buf, "B")
    buf.seek(0)
    np.testing.assert_array_equal(cfd6.load_matrix(buf), op.b_matrix)
