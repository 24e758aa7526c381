import numpy as np
import pytest
from scipy.cluster.hierarchy import fcluster, linkage as scipy_linkage
from scipy.spatial.distance import squareform

from wocce.linkage import agglomerate, cut, pairwise_distances, relabel_first_occurrence


def same_partition(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.array_equal(relabel_first_occurrence(a), relabel_first_occurrence(b))


@pytest.mark.parametrize("method", ["single", "average", "complete", "ward"])
@pytest.mark.parametrize("seed", range(5))
def test_matches_scipy_on_tie_free_data(method, seed):
    x = np.random.default_rng(seed).normal(size=(30, 3))
    d = pairwise_distances(x)
    ours = agglomerate(d, method)
    ref = scipy_linkage(squareform(d, checks=False), method=method)
    np.testing.assert_allclose(ours.heights(), ref[:, 2], rtol=1e-10, atol=1e-12)
    for k in (1, 2, 3, 7, 30):
        assert same_partition(cut(ours, k), fcluster(ref, k, criterion="maxclust"))


def test_average_linkage_hand_trace():
    d = np.array([[0.0, 1.0, 4.0], [1.0, 0.0, 5.0], [4.0, 5.0, 0.0]])
    dend = agglomerate(d, "average")
    assert dend.merges[0][:3] == (0, 1, 1.0)
    assert dend.merges[1][:3] == (2, 3, 4.5)


def test_ties_broken_by_smallest_node_ids():
    d = np.ones((4, 4)) - np.eye(4)
    dend = agglomerate(d, "average")
    assert [m[:2] for m in dend.merges] == [(0, 1), (2, 3), (4, 5)]
    assert cut(dend, 2).tolist() == [0, 0, 1, 1]


def test_cut_extremes():
    x = np.random.default_rng(0).normal(size=(8, 2))
    dend = agglomerate(pairwise_distances(x), "complete")
    assert cut(dend, 8).tolist() == list(range(8))
    assert cut(dend, 1).tolist() == [0] * 8


def test_hamming_is_fraction_of_differing_coordinates():
    x = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    d = pairwise_distances(x, "hamming")
    assert d[0, 1] == 0.5
    assert d[0, 2] == 1.0


def test_cosine_zero_vector():
    x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0], [3.0, 0.0]])
    d = pairwise_distances(x, "cosine")
    assert d[0, 1] == 1.0 and d[0, 0] == 0.0
    assert d[1, 2] == pytest.approx(1.0)
    assert d[1, 3] == pytest.approx(0.0, abs=1e-15)


def test_linkage_matrix_sizes():
    x = np.random.default_rng(1).normal(size=(6, 2))
    z = agglomerate(pairwise_distances(x), "single").to_linkage_matrix()
    assert z.shape == (5, 4)
    assert z[-1, 3] == 6
