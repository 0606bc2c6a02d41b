import numpy as np
import pytest

from src.core.errors import DimensionMismatch, NonSquare
from src.core.params import make_params
from src.core.types import InitScheme, Method
import src.kernels.analysis as analysis
from src.kernels.analysis import (
    FULL_SCORE,
    TERMS,
    KernelSample,
    factorization_check,
    gram_matrix,
    kernel_terms,
    pd_check,
    pd_witness_search,
    stack_samples,
)
from src.oracle.exact import exact_attention


def test_pd_check_identity():
    report = pd_check(np.eye(3))
    assert report.is_pd
    assert report.min_eigenvalue == pytest.approx(1.0)
    assert report.matrix_size == 3


def test_pd_check_symmetrizes():
    report = pd_check([[1.0, 2.0], [0.0, 1.0]])
    assert report.min_eigenvalue == pytest.approx(0.0, abs=1e-12)
    assert report.asymmetry == pytest.approx(1.0)


def test_pd_check_indefinite():
    report = pd_check([[0.0, 1.0], [1.0, 0.0]])
    assert not report.is_pd
    assert report.min_eigenvalue == pytest.approx(-1.0)


def test_pd_check_non_square():
    with pytest.raises(NonSquare):
        pd_check(np.zeros((2, 3)))


def test_pd_check_empty():
    assert pd_check(np.zeros((0, 0))).is_pd


def test_stack_samples_rejects_mixed_shapes():
    with pytest.raises(DimensionMismatch):
        stack_samples([KernelSample([1.0, 0.0], [0.0]), KernelSample([1.0], [0.0])])
    with pytest.raises(DimensionMismatch):
        stack_samples([])


@pytest.mark.parametrize("method", list(Method))
def test_terms_sum_to_score(instance, method):
    qk, p_q, _, params = instance(method)
    terms = kernel_terms(method, qk, p_q, p_q, params)
    assert tuple(terms) == TERMS[method]
    total = exact_attention(method, qk, p_q, p_q, params).values
    assert np.allclose(sum(terms.values()), total)


def test_unknown_term():
    params = make_params(Method.ROPE, 2)
    samples = [KernelSample([1.0, 0.0], [0.0])]
    with pytest.raises(KeyError):
        gram_matrix(Method.ROPE, samples, params, "f3_sin_plus")


def test_full_score_term_is_the_default():
    params = make_params(Method.ROPE, 2)
    samples = [KernelSample([1.0, 0.0], [0.0]), KernelSample([0.0, 1.0], [1.0])]
    assert np.array_equal(
        gram_matrix(Method.ROPE, samples, params),
        gram_matrix(Method.ROPE, samples, params, FULL_SCORE),
    )


def test_fstripe1_gram_is_positive_semidefinite():
    rng = np.random.default_rng(0)
    params = make_params(Method.FSTRIPE1, 6, scheme=InitScheme.RANDOM_UNIFORM, seed=0)
    samples = [
        KernelSample(rng.normal(size=6), rng.uniform(0, 8, size=1)) for _ in range(40)
    ]
    report = pd_check(gram_matrix(Method.FSTRIPE1, samples, params))
    assert report.is_pd
    assert report.asymmetry < 1e-12


def test_factorization(instance):
    qk, p_q, p_k, params = instance(Method.FSTRIPE1)
    assert factorization_check(qk, p_q, p_k, params) < 1e-12


class TestWitnessSearch:
    def test_no_witness_for_fstripe1(self):
        report = pd_witness_search(Method.FSTRIPE1, 3, budget=40, seed=0)
        assert report.witness is None
        assert report.is_pd

    @pytest.mark.parametrize("method", [Method.ROPE, Method.ROPEPOOL])
    def test_pair_methods_have_witnesses(self, method):
        report = pd_witness_search(method, 3, budget=50, seed=0)
        assert report.witness is not None
        assert not report.is_pd
        witness = report.witness
        gram = gram_matrix(method, witness.samples, witness.params, witness.term)
        assert pd_check(gram).min_eigenvalue == pytest.approx(report.min_eigenvalue)

    def test_lowest_trial_wins_regardless_of_workers(self):
        serial = pd_witness_search(Method.ROPE, 3, budget=50, seed=2, workers=1)
        parallel = pd_witness_search(Method.ROPE, 3, budget=50, seed=2, workers=4)
        assert serial.witness.trial == parallel.witness.trial
        assert serial.witness.term == parallel.witness.term
        assert serial.min_eigenvalue == parallel.min_eigenvalue

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            pd_witness_search(Method.ROPE, 1, budget=5)

    @pytest.mark.parametrize("method", list(Method))
    def test_one_eigen_decomposition_per_term(self, method, monkeypatch):
        calls = []

        def counting(gram, tol=1e-8):
            calls.append(np.shape(gram))
            return pd_check(gram, tol)

        monkeypatch.setattr(analysis, "pd_check", counting)
        report = pd_witness_search(method, 3, budget=1, seed=0)
        scanned = 1 + len(TERMS[method])
        if report.witness is None:
            assert len(calls) == scanned
        else:
            terms = (FULL_SCORE, *TERMS[method])
            assert len(calls) == terms.index(report.witness.term) + 1
        assert all(shape == (3, 3) for shape in calls)

    def test_witness_records_its_seed(self):
        witness = pd_witness_search(Method.ROPE, 3, budget=50, seed=5).witness
        assert witness.seed == 5
