import dataclasses
import random
from fractions import Fraction

import pytest

from sosfield.errors import BudgetExhaustedError, DegenerateInputError
from sosfield.extension import ExtField, GlobalBase
from sosfield.factor import factor_q
from sosfield.fields import QQ, FqField
from sosfield.orderings import (
    indefinite_witness,
    norm_product_probe,
    real_embeddings,
    sign_at,
    verify_sign_witness,
)
from sosfield.poly import Poly


def _q_field(coeffs):
    return ExtField(GlobalBase("Q"), Poly(QQ, [Fraction(c) for c in coeffs], "T"))


def test_real_embedding_counts():
    assert len(real_embeddings(_q_field([-2, 0, 1]))) == 2  # sqrt(2)
    assert len(real_embeddings(_q_field([1, 0, 1]))) == 0  # imaginary
    assert len(real_embeddings(_q_field([-2, 0, 0, 1]))) == 1  # cbrt(2)


def test_real_embedding_count_parity_random():
    rng = random.Random(71)
    built = 0
    while built < 25:
        deg = rng.randrange(2, 5)
        coeffs = [Fraction(rng.randrange(-9, 10)) for _ in range(deg)] + [Fraction(1)]
        f = Poly(QQ, coeffs, "T")
        fac = factor_q(f)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            continue
        K = ExtField(GlobalBase("Q"), f)
        built += 1
        embs = real_embeddings(K)
        # conjugate pairs come in twos
        assert (deg - len(embs)) % 2 == 0
        for e in embs:
            assert e.lo < e.hi
            r = e.refine(Fraction(1, 10**9))
            assert r.hi - r.lo < Fraction(1, 10**9)


def test_real_embeddings_preconditions():
    b5 = GlobalBase("FF", FqField(5))
    E = b5.fraction_field()
    Kf = ExtField(b5, Poly(E, [-E.gen(), E.zero(), E.one()], "T"))
    with pytest.raises(DegenerateInputError):
        real_embeddings(Kf)
    f = Poly(QQ, [Fraction(-2), Fraction(0), Fraction(1)], "T")
    K = ExtField(GlobalBase("Q"), f, irreducibility="asserted")
    with pytest.raises(DegenerateInputError):
        real_embeddings(K)


def test_sign_at_sqrt2():
    K = _q_field([-2, 0, 1])
    neg, pos = real_embeddings(K)  # ordered by root position
    t = K.gen()
    assert sign_at(pos, t) == 1
    assert sign_at(neg, t) == -1
    assert sign_at(pos, t - 1) == 1  # sqrt(2) > 1
    assert sign_at(pos, t - 2) == -1  # sqrt(2) < 2
    assert sign_at(pos, K.from_base(Fraction(3, 7))) == 1
    assert sign_at(pos, K.zero()) == 0
    assert sign_at(neg, t * t - 2) == 0  # the modulus itself vanishes


def test_sign_at_needs_tight_separation():
    # sign of t - 239/169, a convergent of sqrt(2): forces deep refinement
    K = _q_field([-2, 0, 1])
    _, pos = real_embeddings(K)
    t = K.gen()
    assert sign_at(pos, t - K.from_base(Fraction(239, 169))) == 1
    assert sign_at(pos, t - K.from_base(Fraction(577, 408))) == -1


def test_sign_at_multiplicative():
    rng = random.Random(72)
    K = _q_field([-2, 0, 1])
    for emb in real_embeddings(K):
        for _ in range(40):
            a, b = K.rand(rng), K.rand(rng)
            sa, sb = sign_at(emb, a), sign_at(emb, b)
            assert sign_at(emb, a * b) == sa * sb
            assert sign_at(emb, a * a) in (0, 1)


def test_sign_at_wrong_field_rejected():
    K1 = _q_field([-2, 0, 1])
    K2 = _q_field([-3, 0, 1])
    emb = real_embeddings(K1)[0]
    with pytest.raises(DegenerateInputError):
        sign_at(emb, K2.gen())


def test_indefinite_witness_frozen():
    K = _q_field([-2, 0, 1])
    neg, pos = real_embeddings(K)
    t = K.gen()
    alpha = t - 2  # sqrt(2) - 2 < 0 under both embeddings
    w = indefinite_witness(K, alpha, pos, neg)
    assert w.pair == (K.one(), K.one())
    assert w.signs == (1, -1)
    # beta = 1 + alpha = sqrt(2) - 1: positive at sqrt(2), negative at -sqrt(2)
    assert w.beta == K.one() + alpha
    assert verify_sign_witness(w).ok


def test_indefinite_witness_swapped_embeddings():
    K = _q_field([-2, 0, 1])
    neg, pos = real_embeddings(K)
    alpha = K.gen() - 2
    w = indefinite_witness(K, alpha, neg, pos)
    assert verify_sign_witness(w).ok
    assert sign_at(neg, w.beta) == 1 and sign_at(pos, w.beta) == -1


def test_indefinite_witness_rational_alpha():
    # rational alpha: no rational pair works, but a + b*theta pairs do
    K = _q_field([-2, 0, 1])
    neg, pos = real_embeddings(K)
    t = K.gen()
    w = indefinite_witness(K, K.from_int(-2), pos, neg)
    assert verify_sign_witness(w).ok
    assert w.pair == (K.one(), t - 1)
    beta = w.beta
    assert beta == 4 * t - 5  # 1 + (theta-1)^2 * (-2)
    assert sign_at(pos, beta) == 1 and sign_at(neg, beta) == -1


def test_indefinite_witness_preconditions_and_budget():
    K = _q_field([-2, 0, 1])
    neg, pos = real_embeddings(K)
    t = K.gen()
    with pytest.raises(DegenerateInputError):
        indefinite_witness(K, t, pos, neg)  # positive under pos
    with pytest.raises(BudgetExhaustedError):
        indefinite_witness(K, K.from_int(-2), pos, neg, max_pairs=3)
    with pytest.raises(BudgetExhaustedError):
        indefinite_witness(K, K.from_int(-2), pos, neg, max_height=0)


def test_verify_sign_witness_rejects_tampering():
    K = _q_field([-2, 0, 1])
    neg, pos = real_embeddings(K)
    w = indefinite_witness(K, K.gen() - 2, pos, neg)
    assert verify_sign_witness(w).ok

    flipped = dataclasses.replace(w, signs=(-1, 1))
    assert not verify_sign_witness(flipped).ok

    wrong_pair = dataclasses.replace(w, pair=(K.from_int(3), K.zero()))
    assert not verify_sign_witness(wrong_pair).ok

    swapped = dataclasses.replace(w, embeddings=(neg, pos))
    assert not verify_sign_witness(swapped).ok

    zero_beta = dataclasses.replace(w, pair=(K.zero(), K.zero()))
    assert not verify_sign_witness(zero_beta).ok


def test_norm_product_probe_identity():
    K = _q_field([-2, 0, 0, 1])  # cbrt(2), degree 3
    report = norm_product_probe(K, samples=100, seed=0)
    assert report.samples == 100
    assert report.identity_failures == 0
    assert report.square_untested == 100


def test_norm_product_probe_degree_one_squares():
    lin = ExtField(GlobalBase("Q"), Poly(QQ, [Fraction(-1), Fraction(1)], "T"))
    report = norm_product_probe(lin, samples=50, seed=1)
    assert report.identity_failures == 0
    # alpha * N(alpha) = alpha^2 in degree 1: always a square
    assert report.square_yes == 50 and report.square_no == 0


def test_norm_product_probe_rejects_even_degree():
    with pytest.raises(DegenerateInputError):
        norm_product_probe(_q_field([-2, 0, 1]))
