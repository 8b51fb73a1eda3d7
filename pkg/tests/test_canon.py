import pytest

from qcanon import TensorModule
from qcanon.canon import (
    CanonError,
    canonical_basis,
    canonical_basis_irreducible,
    canonical_basis_tensor,
    certify_basis,
    expand_in_basis,
    irreducible,
    oracle_basis,
    peel_basis,
    standard_basis,
)
from qcanon.involution import bar_basis
from qcanon.qarith import LaurentInt, RatQ, qint
from qcanon.verma import Gen

from _fixtures import KRONECKER, SL2, SL3

q = LaurentInt.q()
F = lambda i, n=1: Gen("F", i, n)  # noqa: E731


def all_elements(tm, **kw):
    out = set()
    for nu in tm.contents():
        if tm.dim(nu):
            out |= set(canonical_basis(tm, nu, **kw).elements)
    return out


@pytest.mark.parametrize("d", range(7))
def test_sl2_irreducible(d):
    tm = TensorModule(SL2, [(d,)], d)
    for r in range(d + 1):
        B = canonical_basis(tm, (r,))
        assert B.elements == (tm.act(F(0, r), tm.vacuum()),)


def test_irreducible_convenience_form():
    B = irreducible(SL3, (1, 1), (1, 1))
    assert B.dim == 2


def test_sl2_pair():
    tm = TensorModule(SL2, [(1,), (1,)], 3)
    v = tm.vacuum()
    c0, c1 = tm.components
    fa = tm.pure([c0.word_vector([0]), c1.eta()])
    ff = tm.pure([c0.word_vector([0]), c1.word_vector([0])])
    assert all_elements(tm) == {v, fa, tm.act(F(0), v), ff}
    assert ff == tm.act(F(0, 2), v)


SL3_MONOMIALS = [[], [F(0)], [F(1)], [F(0, 2), F(1)], [F(1, 2), F(0)], [F(0), F(1, 2), F(0)], [F(1), F(0)], [F(0), F(1)]]


def test_sl3_adjoint():
    tm = TensorModule(SL3, [(1, 1)], 4)
    assert all_elements(tm) == {tm.act_word(m, tm.vacuum()) for m in SL3_MONOMIALS}


@pytest.mark.parametrize("factors, ninth", [([(1, 0), (0, 1)], [1, 0]), ([(0, 1), (1, 0)], [0, 1])])
def test_sl3_tensor_tables(factors, ninth):
    tm = TensorModule(SL3, factors, 4)
    expected = {tm.act_word(m, tm.vacuum()) for m in SL3_MONOMIALS}
    expected.add(tm.pure([tm.components[0].word_vector(ninth), tm.components[1].eta()]))
    assert all_elements(tm) == expected


def test_empty_sequence_is_vacuum():
    tm = TensorModule(SL3, [], 3)
    assert all_elements(tm) == {tm.vacuum()}


def test_kl_unitriangular_and_normalized():
    tm = TensorModule(SL2, [(1,), (2,), (1,)], 4)
    for nu in tm.contents():
        if not tm.dim(nu):
            continue
        B = canonical_basis_tensor(tm, nu)
        assert B.method == "kl"
        for k, row in enumerate(B.standard_expansion):
            assert row[k] == RatQ(1)
            for j, c in enumerate(row):
                if j != k and c:
                    assert c.is_laurent() and c.num.in_qinv_Z()


def test_coefficients_over_standard_vectors_bar_fixed():
    tm = TensorModule(SL3, [(1, 0), (0, 1)], 4)
    for nu in tm.contents():
        if not tm.dim(nu):
            continue
        bb = bar_basis(tm, nu)
        for b in canonical_basis(tm, nu).elements:
            coords = tm.to_dense(b)
            over_l = [sum((bb.from_tensor[r][c] * coords[c] for c in range(bb.dim)), RatQ()) for r in range(bb.dim)]
            assert all(x.bar() == x for x in over_l)


@pytest.mark.parametrize("factors", [[(1,), (1,)], [(2,), (1,)], [(1,), (1,), (1,)]])
def test_solvers_agree(factors):
    tm = TensorModule(SL2, factors, 3)
    for nu in tm.contents():
        if not tm.dim(nu):
            continue
        kl = set(canonical_basis_tensor(tm, nu).elements)
        assert set(peel_basis(tm, nu).elements) == kl
        if tm.dim(nu) <= 3:
            assert set(oracle_basis(tm, nu).elements) == kl


def test_oracle_on_sl3_middle_space():
    tm = TensorModule(SL3, [(1, 1)], 2)
    got = set(oracle_basis(tm, (1, 1)).elements)
    assert got == {tm.act_word([F(1), F(0)], tm.vacuum()), tm.act_word([F(0), F(1)], tm.vacuum())}


def test_oracle_dimension_cap():
    tm = TensorModule(SL2, [(2,), (2,), (2,)], 3)
    with pytest.raises(CanonError):
        oracle_basis(tm, (3,))


def test_certificate_examples():
    tm = TensorModule(SL2, [(1,), (1,)], 3)
    v = tm.vacuum()
    fv = tm.act(F(0), v)
    assert tm.act(Gen("E", 0), fv) == v.scale(qint(2))
    assert expand_in_basis(tm, tm.act(Gen("E", 0), fv)) == [RatQ(qint(2))]
    fa = tm.pure([tm.components[0].word_vector([0]), tm.components[1].eta()])
    assert tm.act(Gen("E", 0), fa) == v
    for nu in tm.contents():
        cert = certify_basis(tm, canonical_basis(tm, nu))
        assert cert.ok, cert.witnesses


def test_certificate_reports_failures():
    tm = TensorModule(SL2, [(1,), (1,)], 3)
    B = canonical_basis(tm, (1,))
    bad = type(B)((1,), (B.elements[0].scale(q), B.elements[1]), B.standard_expansion, "tampered")
    cert = certify_basis(tm, bad)
    assert not cert.checks["bar_fixed"] and "bar_fixed" in cert.witnesses
    assert not cert.ok


def test_kronecker_fixture():
    tm = TensorModule(KRONECKER, [(1, 0)], 4)
    total = 0
    for nu in tm.contents():
        d = tm.dim(nu)
        if d:
            B = canonical_basis(tm, nu)
            assert certify_basis(tm, B).ok
            total += d
    assert total > 0


def test_standard_basis_bar_matrix_squares_to_identity():
    tm = TensorModule(SL2, [(1,), (1,), (1,)], 3)
    sb = standard_basis(tm, (1,))
    R = sb.bar_matrix
    n = len(R)
    Rb = [[x.bar() for x in row] for row in R]
    for i in range(n):
        for j in range(n):
            s = sum((R[i][k] * Rb[k][j] for k in range(n)), RatQ())
            assert s == RatQ(1 if i == j else 0)


def test_irreducible_requires_single_factor():
    with pytest.raises(ValueError):
        canonical_basis_irreducible(TensorModule(SL2, [(1,), (1,)], 2), (1,))
