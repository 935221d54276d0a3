import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_hermitian, random_unitary_blocks
from wstar import (
    BlockIdealSpec,
    InvalidNorm,
    PreconditionViolated,
    ShapeMismatch,
    SymmetricNorm,
    c11_bound_check,
    calkin_check,
    commutant_dimension,
    delta_apply,
    diagonal,
    epsilon_bound_check,
    haar_unitary,
    hoffman_check,
    ideal_colon,
    identity,
    make_central,
    make_element,
    norm_eval,
    sakai_check,
    zeros,
)
from wstar.derivations import colon_plus_center, derivation_space

NORMS = [SymmetricNorm.operator(), SymmetricNorm.schatten(1), SymmetricNorm.schatten(2),
         SymmetricNorm.schatten(3), SymmetricNorm.kyfan(1), SymmetricNorm.kyfan(2)]


def subsets(k):
    return [frozenset(s) for r in range(k + 1) for s in itertools.combinations(range(k), r)]


class TestDelta:
    def test_swap(self):
        x = delta_apply(diagonal([0, 1]), make_element([2], [[[0, 1], [1, 0]]]))
        np.testing.assert_allclose(x.blocks[0], [[0, -1], [1, 0]])

    def test_central_argument(self, rng):
        a = random_hermitian(rng, [2, 3])
        assert delta_apply(a, make_central([2, 3], [2.0, 5.0]).to_element()).max_abs() <= 1e-14

    def test_linearity(self, rng):
        for _ in range(10):
            a, x, y = (random_hermitian(rng, [3, 2]) for _ in range(3))
            assert delta_apply(a, x + y).allclose(delta_apply(a, x) + delta_apply(a, y), 1e-12)


class TestHaar:
    def test_unitary_and_seeded(self):
        u1 = haar_unitary([3, 2], np.random.default_rng(7))
        u2 = haar_unitary([3, 2], np.random.default_rng(7))
        assert all(np.array_equal(x, y) for x, y in zip(u1.blocks, u2.blocks))
        assert (u1.adjoint() @ u1).allclose(identity([3, 2]), 1e-12)

    def test_first_moment(self):
        # E|u_11|^2 = 1/n for Haar unitaries
        rng = np.random.default_rng(1)
        vals = [abs(haar_unitary([4], rng).blocks[0][0, 0]) ** 2 for _ in range(4000)]
        assert abs(np.mean(vals) - 0.25) < 0.02


class TestSakai:
    def test_swap_example(self):
        r = sakai_check(diagonal([0, 1]), samples=500, seed=3)
        assert r.dist == 0.5 and r.passed
        swap = make_element([2], [[[0, 1], [1, 0]]])
        assert np.linalg.norm(delta_apply(diagonal([0, 1]), swap).blocks[0], 2) == pytest.approx(1.0)

    def test_central(self):
        r = sakai_check(make_central([2, 2], [1.0, 3.0]).to_element(), samples=10)
        assert r.dist == 0.0 and r.delta_norm_lower <= 1e-14 and r.passed

    def test_example_one(self):
        r = sakai_check(diagonal([1, 2, 3]), samples=300)
        assert r.dist == 1.0 and r.passed

    def test_bad_samples(self):
        with pytest.raises(PreconditionViolated):
            sakai_check(diagonal([1, 2]), samples=0)


class TestEpsilonBound:
    def test_example_one(self):
        r = epsilon_bound_check(diagonal([1, 2, 3]), 0.0)
        assert r.passed and r.margin == pytest.approx(0.0, abs=1e-12)

    def test_central(self):
        assert epsilon_bound_check(make_central([2], 4.0).to_element(), 0.5).passed

    def test_two_block(self):
        r = epsilon_bound_check(diagonal([0, 10], [1, 2, 3]), 0.1)
        assert r.passed and r.margin >= 0

    def test_bad_epsilon(self):
        with pytest.raises(PreconditionViolated):
            epsilon_bound_check(diagonal([1, 2]), 1.0)


class TestIdeals:
    def test_colon(self):
        i, j = BlockIdealSpec((2, 2, 1), {0}), BlockIdealSpec((2, 2, 1), {0, 1})
        assert ideal_colon(i, j).members == {0, 2}

    def test_colon_empty_j(self):
        i, j = BlockIdealSpec((2, 2), set()), BlockIdealSpec((2, 2), set())
        assert ideal_colon(i, j).members == {0, 1}

    def test_colon_contains_i(self):
        for s in subsets(3):
            i = BlockIdealSpec((1, 2, 3), s)
            assert ideal_colon(i, i).members >= i.members

    def test_colon_by_brute_force(self, rng):
        # x in I:J iff x y lands in I for every matrix unit y of J
        shape = (2, 3, 1)
        for si, sj in itertools.product(subsets(3), subsets(3)):
            i, j = BlockIdealSpec(shape, si), BlockIdealSpec(shape, sj)
            colon = ideal_colon(i, j)
            for k in range(3):
                x = [np.zeros((n, n)) for n in shape]
                x[k] = rng.standard_normal((shape[k], shape[k]))
                xe = make_element(shape, x)
                inside = all(i.contains(xe @ make_element(shape, [np.eye(n) if q == kk else
                                                                   np.zeros((n, n))
                                                                   for q, n in enumerate(shape)]))
                             for kk in sj)
                assert inside == (k in colon.members)

    def test_out_of_range(self):
        with pytest.raises(PreconditionViolated):
            BlockIdealSpec((2, 2), {5})

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            ideal_colon(BlockIdealSpec((2,), {0}), BlockIdealSpec((3,), {0}))

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 1), (4, 1)])
    def test_commutant_is_scalars(self, n, expected):
        assert commutant_dimension(n) == expected

    def test_hoffman_example(self):
        shape = (2, 2, 1)
        i, j = BlockIdealSpec(shape, {0}), BlockIdealSpec(shape, {0, 1})
        assert derivation_space(i, j) == ("free", "scalar", "free")
        assert colon_plus_center(i, j) == ("free", "scalar", "free")
        passed, witness = hoffman_check(i, j)
        assert passed and witness is None
        # dimension count 4 + 1 + 1 on both sides
        dims = [n * n if k == "free" else 1 for n, k in zip(shape, derivation_space(i, j))]
        assert sum(dims) == 6

    def test_hoffman_trivial(self):
        shape = (3, 2)
        assert hoffman_check(BlockIdealSpec(shape, {0}), BlockIdealSpec(shape, set()))[0]
        assert hoffman_check(BlockIdealSpec.all(shape), BlockIdealSpec(shape, {1}))[0]

    def test_hoffman_numeric_commutators(self, rng):
        # A random x from D(J, I) really has [x, y] in I for y in J.
        shape = (2, 3, 2)
        for si, sj in itertools.product(subsets(3), subsets(3)):
            i, j = BlockIdealSpec(shape, si), BlockIdealSpec(shape, sj)
            kinds = derivation_space(i, j)
            x = make_element(shape, [rng.standard_normal((n, n)) if kind == "free"
                                     else rng.standard_normal() * np.eye(n)
                                     for n, kind in zip(shape, kinds)])
            y = make_element(shape, [rng.standard_normal((n, n)) if k in sj else np.zeros((n, n))
                                     for k, n in enumerate(shape)])
            assert i.contains(delta_apply(x, y), 1e-12)

    def test_calkin_examples(self):
        assert calkin_check(BlockIdealSpec((2, 3), {0}))
        assert calkin_check(BlockIdealSpec.all((2, 3)))
        assert calkin_check(BlockIdealSpec((2, 3), set()))

    @pytest.mark.parametrize("shape", [(1,), (2, 3), (4, 1, 2), (3, 3, 2, 1), (2, 2, 2, 1, 4)])
    def test_exhaustive(self, shape):
        subs = subsets(len(shape))
        for si in subs:
            assert calkin_check(BlockIdealSpec(shape, si))
            for sj in subs:
                assert hoffman_check(BlockIdealSpec(shape, si), BlockIdealSpec(shape, sj))[0]


class TestNorms:
    def test_schatten2(self):
        assert norm_eval(diagonal([3, 4]), SymmetricNorm.schatten(2)) == pytest.approx(5.0)

    def test_kyfan1(self):
        assert norm_eval(diagonal([3, 4]), SymmetricNorm.kyfan(1)) == 4.0

    @pytest.mark.parametrize("norm", NORMS)
    def test_zero(self, norm):
        assert norm_eval(zeros([2, 3]), norm) == 0.0

    @pytest.mark.parametrize("bad", [("schatten", 0.5), ("kyfan", 0), ("kyfan", 1.5), ("spectral", 1)])
    def test_invalid(self, bad):
        with pytest.raises(InvalidNorm):
            SymmetricNorm(*bad)

    def test_parse_roundtrip(self):
        for n in NORMS:
            assert SymmetricNorm.parse(str(n)) == n

    def test_against_numpy(self, rng):
        x = make_element([4], [rng.standard_normal((4, 4))])
        b = x.blocks[0]
        assert norm_eval(x, "operator") == pytest.approx(np.linalg.norm(b, 2))
        assert norm_eval(x, "schatten(1)") == pytest.approx(np.linalg.norm(b, "nuc"))
        assert norm_eval(x, "schatten(2)") == pytest.approx(np.linalg.norm(b, "fro"))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_solidity(self, seed):
        rng = np.random.default_rng(seed)
        dims = [3, 2]
        x = make_element(dims, [rng.standard_normal((n, n)) for n in dims])
        shrunk = []
        for b in x.blocks:
            w, s, vh = np.linalg.svd(b)
            shrunk.append((w * (s * rng.uniform(0, 1, s.size))) @ vh)
        y = make_element(dims, shrunk)
        for norm in NORMS:
            assert norm_eval(y, norm) <= norm_eval(x, norm) + 1e-12

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_unitary_invariance(self, seed):
        rng = np.random.default_rng(seed)
        dims = [3, 2]
        x = make_element(dims, [rng.standard_normal((n, n)) for n in dims])
        u = make_element(dims, random_unitary_blocks(rng, dims))
        v = make_element(dims, random_unitary_blocks(rng, dims))
        for norm in NORMS:
            assert norm_eval(u @ x @ v, norm) <= norm_eval(x, norm) + 1e-12


class TestC11:
    def test_trace_example(self):
        r = c11_bound_check(diagonal([0, 1]), SymmetricNorm.schatten(1))
        assert r.d_norm == pytest.approx(1.0) and r.delta_u0_norm == pytest.approx(2.0)
        assert r.passed and r.psd_dominated

    def test_central(self):
        r = c11_bound_check(make_central([2, 1], [3.0, 1.0]).to_element())
        assert r.d_norm == 0.0 and r.passed

    def test_operator_example(self):
        r = c11_bound_check(diagonal([1, 2, 3]))
        assert r.d_norm == pytest.approx(1.0) and r.delta_u0_norm == pytest.approx(2.0)

    @pytest.mark.parametrize("norm", NORMS)
    def test_random(self, rng, norm):
        for _ in range(15):
            r = c11_bound_check(random_hermitian(rng, [4, 3]), norm)
            assert r.passed and r.psd_dominated
