from hypothesis import given, strategies as st

from qcanon.qarith import LaurentInt, RatQ, qint
from qcanon.verma import E, F, FWord, HighestWeightModule, K

from _fixtures import SL2, SL3

q = LaurentInt.q()


def test_sl2_normalization():
    m = HighestWeightModule(SL2, (2,))
    f = m.word_vector([0])
    assert m.form(f, f) == RatQ(1 + q**-2)
    f2 = m.act(F(0, 2), m.eta())
    assert m.form(f2, f2) == RatQ(1)
    assert m.weight_space((3,)).dim == 0


def test_first_step_norm_formula():
    for n in range(1, 6):
        m = HighestWeightModule(SL2, (n,))
        f = m.act(F(0), m.eta())
        assert m.form(f, f) == RatQ(qint(n).shift(1 - n))


def test_sl3_adjoint_dims():
    m = HighestWeightModule(SL3, (1, 1))
    dims = {nu: m.weight_space(nu).dim for nu in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2), (2, 0), (3, 3)]}
    assert sum(dims.values()) == 8
    assert dims[(1, 1)] == 2 and dims[(2, 0)] == 0
    assert m.weight_space((1, 1)).pivot_words == ((0, 1), (1, 0))


def test_adjoint_top_norm_is_one():
    m = HighestWeightModule(SL3, (1, 1))
    v = m.act(F(0), m.act(F(1, 2), m.act(F(0), m.eta())))
    assert m.form(v, v) == RatQ(1)


def test_divided_power_word_expansion():
    w = FWord(((0, 2), (1, 1)))
    plain, factor = w.expand()
    assert plain == (0, 0, 1)
    assert factor == qint(2)


def test_e_kills_highest_vector():
    m = HighestWeightModule(SL3, (1, 1))
    assert not m.act(E(0), m.eta())
    assert m.act(K(1, -1), m.eta()) == m.eta().scale(q**-1)


words = st.lists(st.sampled_from([0, 1]), max_size=3)


@given(words, words, st.sampled_from([0, 1]))
def test_contravariance_on_words(u, w, i):
    """(F_i u, w) = (u, q K_i^-1 E_i w) and (E_i w, u) = (w, q K_i F_i u)."""
    m = HighestWeightModule(SL3, (1, 2))
    uu, ww = m.word_vector(u), m.word_vector(w)
    lhs = m.form(m.act(F(i), uu), ww)
    rhs = m.form(uu, m.act(K(i, -1), m.act(E(i), ww)).scale(q))
    assert lhs == rhs
    lhs = m.form(m.act(E(i), ww), uu)
    rhs = m.form(ww, m.act(K(i), m.act(F(i), uu)).scale(q))
    assert lhs == rhs


@given(words, words)
def test_form_symmetric(u, w):
    m = HighestWeightModule(SL3, (2, 1))
    assert m.form(m.word_vector(u), m.word_vector(w)) == m.form(m.word_vector(w), m.word_vector(u))
