"""Pseudo-representation calculus: relations, trace recovery, glueing and
rank-2 reconstruction."""

import random
from fractions import Fraction

import pytest

from padicfam.errors import (
    ApparentlyReducible,
    BadConjugationImage,
    CoincidentNodes,
    Incompatible,
    NonUnit,
    NotPowerBounded,
)
from padicfam.padic import RingParams
from padicfam.pseudo import (
    GroupWord,
    MatrixRep2,
    PseudoRep,
    check_wiles_relations,
    enumerate_words,
    glue_crt,
    lift_to_series,
    mat_det,
    mat_mul,
    mat_trace,
    matrix_rep_from_text,
    matrix_rep_to_text,
    parse_word,
    reconstruct,
    sample_reduced_words,
    trace_to_AD,
)
from padicfam.series import FormalSeries

R = RingParams(3, 1, 8)
R5 = RingParams(5, 1, 8)


def random_matrix_rep(params, rng, t=2):
    """Entries uniform mod p^N, resampled until the determinant is a unit."""
    mod = params.p ** params._comp_digits(0, params.prec)
    images = []
    while len(images) < t:
        m = tuple(params.from_int(rng.randrange(mod)) for _ in range(4))
        if not mat_det(m).is_zero() and mat_det(m).valuation() == 0:
            images.append(m)
    return MatrixRep2(images)


def random_series_rep(params, rng, t=1, order=6):
    mod = params.p ** params._comp_digits(0, params.prec)
    images = []
    while len(images) < t:
        m = tuple(
            FormalSeries(
                params,
                [params.from_int(rng.randrange(mod)) for _ in range(order)],
                orders=(order,),
            )
            for _ in range(4)
        )
        d = mat_det(m).coeffs[0]
        if not d.is_zero() and d.valuation() == 0:
            images.append(m)
    return MatrixRep2(images)


def relation_tuples(t, max_len, rng, pairs=25, quads=15, singles=5):
    words = sample_reduced_words(t, max_len, 2 * pairs, rng)
    tups = [(words[i % len(words)],) for i in range(singles)]
    tups += [(words[(2 * i) % len(words)], words[(2 * i + 1) % len(words)]) for i in range(pairs)]
    tups += [tuple(words[(4 * i + j) % len(words)] for j in range(4)) for i in range(quads)]
    return tups


def test_word_algebra():
    c = GroupWord.conjugation()
    g1 = GroupWord.generator(1)
    assert len(c * c) == 0
    assert (g1 * g1.inverse()) == GroupWord.identity()
    w = GroupWord((1, -1, 0, 0, 2))
    assert w == GroupWord.generator(2)
    assert str(g1 * c * g1.inverse()) == "g1.c.g1^-1"
    assert parse_word("g1.c.g1^-1") == g1 * c * g1.inverse()
    assert parse_word("1") == GroupWord.identity()
    # length-lex enumeration: 1 + 3 + 6 + 12 reduced words for t = 1
    ws = enumerate_words(1, 3)
    assert len(ws) == 22
    assert [str(w) for w in ws[:4]] == ["1", "c", "g1", "g1^-1"]
    keys = [w.sort_key() for w in ws]
    assert keys == sorted(keys)


def test_pseudo_from_matrix_examples():
    # involution-only representation: diagonal, so Xi vanishes
    triv = MatrixRep2([], one=R.one())
    pi = PseudoRep.from_matrix_rep(triv)
    c = GroupWord.conjugation()
    one_w = GroupWord.identity()
    assert pi.A(c) == R.from_int(-1) and pi.D(c) == R.one()
    assert pi.Xi(c, c).is_zero()
    assert pi.A(one_w) == R.one() and pi.D(one_w) == R.one()

    rho = MatrixRep2([(R.one(), R.one(), R.from_int(3), R.one())])
    pi = PseudoRep.from_matrix_rep(rho)
    g1 = GroupWord.generator(1)
    assert pi.Xi(g1, g1) == R.from_int(3)


def test_relations_hold_for_matrix_pseudoreps():
    rng = random.Random(101)
    for params in (R, R5):
        for _ in range(6):
            rep = random_matrix_rep(params, rng)
            pi = PseudoRep.from_matrix_rep(rep)
            report = check_wiles_relations(pi, relation_tuples(2, 5, rng))
            assert report.ok, report.violations[:2]


def test_relations_hold_over_series():
    rng = random.Random(103)
    for _ in range(4):
        rep = random_series_rep(R, rng, t=1, order=6)
        pi = PseudoRep.from_matrix_rep(rep)
        report = check_wiles_relations(pi, relation_tuples(1, 6, rng, pairs=12, quads=6))
        assert report.ok, report.violations[:2]


def test_mutation_detected():
    rng = random.Random(107)
    rep = random_matrix_rep(R, rng)
    pi = PseudoRep.from_matrix_rep(rep)
    tuples = relation_tuples(2, 4, rng)
    pair = next(t for t in tuples if len(t) == 2)
    mutated = pi.perturb_xi(pair, R.one())
    report = check_wiles_relations(mutated, tuples)
    assert not report.ok
    assert any(v.relation.startswith(("A(st)", "D(st)", "Xi")) for v in report.violations)


def test_lookup_table_diagonal():
    # order-2 group realized by words in c alone: trivial plus sign character
    one, minus = R.one(), R.from_int(-1)
    words = [(), (0,)]
    A = {(): one, (0,): minus}
    D = {(): one, (0,): one}
    Xi = {(w1, w2): R.zero() for w1 in words for w2 in words}
    pi = PseudoRep.from_tables(A, D, Xi, one)
    cw = GroupWord.conjugation()
    tuples = [(cw,), (cw, cw), (cw, cw, cw, cw)]
    assert check_wiles_relations(pi, tuples).ok


def test_trace_to_AD():
    rng = random.Random(109)
    for _ in range(5):
        rep = random_matrix_rep(R, rng)
        pi = PseudoRep.from_matrix_rep(rep)
        A, D = trace_to_AD(pi.trace, R.one())
        for w in sample_reduced_words(2, 4, 12, rng):
            assert A(w) == pi.A(w)
            assert D(w) == pi.D(w)
    # tr(c) = 0 forces A(c) = -1, D(c) = 1 given c^2 = 1 and tr(1) = 2
    triv = PseudoRep.from_matrix_rep(MatrixRep2([], one=R.one()))
    A, D = trace_to_AD(triv.trace, R.one())
    c = GroupWord.conjugation()
    assert triv.trace(c).is_zero()
    assert A(c) == R.from_int(-1) and D(c) == R.one()
    # constant trace 2: the doubled trivial character
    A2, D2 = trace_to_AD(lambda w: R.from_int(2), R.one())
    for w in (GroupWord.identity(), c):
        assert A2(w) == R.one() and D2(w) == R.one()


def test_glue_examples():
    u1, u2 = R.from_int(3), R.from_int(6)
    same = glue_crt(R.from_int(4), R.from_int(4), u1, u2)
    assert same.evaluate(u1) == R.from_int(4)
    assert same[1].is_zero()

    f = glue_crt(R.from_int(4), R.from_int(7), u1, u2)
    assert f[0] == R.one() and f[1] == R.one()

    with pytest.raises(Incompatible) as exc:
        glue_crt(R.from_int(0), R.from_int(1), u1, u2)
    assert exc.value.obstruction_valuation == 0
    assert exc.value.required_valuation == 1
    with pytest.raises(CoincidentNodes):
        glue_crt(R.from_int(0), R.from_int(1), u1, u1)


def test_glue_exhaustive_congruence():
    """Success exactly on congruence-compatible pairs over a small residue
    system."""
    u1, u2 = R.from_int(3), R.from_int(6)
    for x in range(9):
        for y in range(9):
            compatible = (y - x) % 3 == 0
            try:
                f = glue_crt(R.from_int(x), R.from_int(y), u1, u2)
                assert compatible
                assert f.evaluate(u1) == R.from_int(x)
                assert f.evaluate(u2) == R.from_int(y)
            except Incompatible:
                assert not compatible


def test_reconstruct_example():
    rho = MatrixRep2([(R.one(), R.one(), R.from_int(3), R.one())])
    res = reconstruct(PseudoRep.from_matrix_rep(rho), t=1, search_len=1)
    g1 = GroupWord.generator(1)
    assert res.sigma == g1 and res.tau == g1
    assert res.mu == 1
    assert res.unit == R.one()
    m = res.rep.images[0]
    assert mat_trace(m) == R.from_int(2)
    assert mat_det(m) == R.from_int(-2)
    assert m[1] == R.one() and m[2] == R.from_int(3)


def test_reconstruct_diagonal_is_reducible():
    diag = MatrixRep2([(R.one(), R.zero(), R.zero(), R.from_int(2))])
    with pytest.raises(ApparentlyReducible):
        reconstruct(PseudoRep.from_matrix_rep(diag), t=1, search_len=2)


def test_reconstruct_properties():
    rng = random.Random(113)
    words = enumerate_words(2, 3)
    for params in (R, R5):
        for _ in range(4):
            rho = random_matrix_rep(params, rng)
            pi = PseudoRep.from_matrix_rep(rho)
            try:
                res = reconstruct(pi, t=2, search_len=1)
            except ApparentlyReducible:
                continue
            ident = res.rep.matrix(GroupWord.identity())
            assert ident[0] == params.one() and ident[3] == params.one()
            for w in words:
                formula = res.formula_image(w)
                product = res.rep.matrix(w)
                assert all(a == b for a, b in zip(formula, product))
                src = rho.matrix(w)
                assert mat_trace(formula) == mat_trace(src)
                assert mat_det(formula) == mat_det(src)
                assert pi.A(w) + pi.D(w) == mat_trace(formula)


def test_reconstruct_over_series_and_specialization():
    # entries genuinely in the series ring; Xi(g1, g1) = 3(1 + U)
    b = FormalSeries.from_ints(R, [1], orders=(8,))
    c_entry = FormalSeries.from_ints(R, [3, 3], orders=(8,))
    one_s = FormalSeries.one(R, orders=(8,))
    rho = MatrixRep2([(one_s, b, c_entry, one_s)])
    pi = PseudoRep.from_matrix_rep(rho)
    res = reconstruct(pi, t=1, search_len=1)
    assert res.mu == 1
    assert res.unit == FormalSeries.from_ints(R, [1, 1], orders=(8,)).truncate(8)
    # Cor-4.4-style compatibility: reduce then charpoly = charpoly then reduce
    for w in enumerate_words(1, 3):
        m = res.rep.matrix(w)
        for u in (R.from_int(3), R.from_int(6), R.from_int(12)):
            reduced = tuple(entry.evaluate(u) for entry in m)
            src = rho.matrix(w)
            assert mat_trace(reduced) == mat_trace(src).evaluate(u)
            assert mat_det(reduced) == mat_det(src).evaluate(u)


def test_reconstruct_lifted_constants_match():
    rho = MatrixRep2([(R.one(), R.one(), R.from_int(3), R.one())])
    pi = lift_to_series(PseudoRep.from_matrix_rep(rho), order=4)
    res = reconstruct(pi, t=1, search_len=1)
    assert res.mu == 1
    m = res.rep.images[0]
    assert m[1].coeffs[0] == R.one() and m[2].coeffs[0] == R.from_int(3)


def test_reconstruct_factorization_obstruction():
    # every Xi is a unit times (3+U)^2, whose p-normalization leaves the ring
    s = FormalSeries.from_ints(R, [3, 1], orders=(8,))
    one_s = FormalSeries.one(R, orders=(8,))
    rho = MatrixRep2([(one_s, s, s, one_s)])
    with pytest.raises(NotPowerBounded):
        reconstruct(PseudoRep.from_matrix_rep(rho), t=1, search_len=1)


def test_reconstruct_rejects_unnormalized():
    rho = MatrixRep2([(R.one(), R.one(), R.from_int(3), R.one())])
    base = PseudoRep.from_matrix_rep(rho)
    c = GroupWord.conjugation()

    def bad_a(w):
        return R.from_int(2) if w == c else base.A(w)

    with pytest.raises(BadConjugationImage):
        reconstruct(PseudoRep(bad_a, base.D, base.Xi, base.one), t=1, search_len=1)


def test_matrix_rep_validation_and_file():
    with pytest.raises(NonUnit):
        MatrixRep2([(R.from_int(3), R.zero(), R.zero(), R.from_int(3))])
    with pytest.raises(BadConjugationImage):
        MatrixRep2(
            [(R.one(), R.one(), R.from_int(3), R.one())],
            c_image=(R.one(), R.zero(), R.zero(), R.one()),
        )
    rng = random.Random(127)
    rep = random_matrix_rep(R, rng)
    text = matrix_rep_to_text(rep, R)
    back, params = matrix_rep_from_text(text)
    assert params == R
    for m1, m2 in zip(rep.images, back.images):
        assert all(a == b for a, b in zip(m1, m2))
    assert matrix_rep_to_text(back, params) == text
