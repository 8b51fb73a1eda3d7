from hypothesis import given, strategies as st

from qcanon import TensorModule
from qcanon.involution import bar_basis, bar_matrix, bar_vector, build_bar_basis
from qcanon.qarith import LaurentInt, RatQ
from qcanon.tensor import mu_str
from qcanon.verma import Gen

from _fixtures import SL2, SL3

q = LaurentInt.q()


def test_sl2_pair_example():
    tm = TensorModule(SL2, [(1,), (1,)], 3)
    bb = bar_basis(tm, (1,))
    assert [mu_str(SL2, mu) for mu in bb.selected] == ["(i^, i, i^)", "(i^, i^, i)"]
    c0, c1 = tm.components
    x = tm.pure([c0.eta(), c1.word_vector([0])])
    y = tm.pure([c0.word_vector([0]), c1.eta()])
    assert bar_vector(tm, x) == x + y.scale(q**-1 - q)
    M = bar_matrix(tm, (1,))
    assert M == [[RatQ(1), RatQ(0)], [RatQ(q**-1 - q), RatQ(1)]]


def test_standard_vectors_fixed():
    tm = TensorModule(SL3, [(1, 0), (0, 1)], 4)
    for nu in tm.contents():
        for mu in tm.enumerate_mu(nu):
            v = tm.l_vector(mu)
            assert bar_vector(tm, v) == v


def test_choice_independence():
    tm = TensorModule(SL2, [(1,), (2,), (1,)], 4)
    for nu in tm.contents():
        if tm.dim(nu):
            assert bar_matrix(tm, nu) == bar_matrix(tm, nu, build_bar_basis(tm, nu, "reversed"))


small = st.integers(-2, 2)
laurent = st.builds(LaurentInt, small, st.lists(small, max_size=3))
MOD = TensorModule(SL2, [(1,), (2,)], 3)


@given(st.lists(laurent, min_size=3, max_size=3))
def test_psi_involutive_and_antilinear(cs):
    v = MOD.from_dense((1,), cs)
    assert bar_vector(MOD, bar_vector(MOD, v)) == v
    assert bar_vector(MOD, v.scale(q)) == bar_vector(MOD, v).scale(q**-1)


@given(st.lists(laurent, min_size=3, max_size=3), st.integers(1, 2))
def test_psi_commutes_with_f(cs, n):
    v = MOD.from_dense((1,), cs)
    g = Gen("F", 0, n)
    assert bar_vector(MOD, MOD.act(g, v)) == MOD.act(g, bar_vector(MOD, v))


@given(st.lists(laurent, min_size=2, max_size=2))
def test_psi_compatible_with_embedding(cs):
    prev = MOD.prefix(1)
    u = prev.from_dense((1,), cs[:1])
    assert bar_vector(MOD, MOD.embed(u)) == MOD.embed(bar_vector(prev, u))
