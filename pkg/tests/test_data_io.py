import numpy as np
import pytest

from wocce.data_io import (
    Dataset,
    generate_half_ring,
    load_csv,
    load_dataset,
    write_csv,
    zscore_normalize,
)
from wocce.errors import ParseError, SizeError


def test_load_iris_shape():
    ds = load_dataset("iris")
    assert (ds.n, ds.d, ds.k_true) == (150, 4, 3)
    assert not ds.normalized


def test_wine_is_normalized_by_default():
    ds = load_dataset("wine")
    assert (ds.n, ds.d, ds.k_true) == (178, 13, 3)
    assert ds.normalized
    np.testing.assert_allclose(ds.features.mean(0), 0.0, atol=1e-9)
    np.testing.assert_allclose(ds.features.var(0), 1.0, atol=1e-6)


def test_minimal_unlabelled_file(tmp_path):
    f = tmp_path / "two.csv"
    f.write_text("0,0\n1,1\n")
    ds = load_csv(f, has_labels=False)
    assert (ds.n, ds.d) == (2, 2)
    assert ds.labels is None and ds.k_true is None


def test_labels_are_remapped(tmp_path):
    f = tmp_path / "lab.csv"
    f.write_text("1.0,5\n2.0,9\n3.0,5\n")
    ds = load_csv(f)
    assert ds.labels.tolist() == [0, 1, 0]
    assert ds.k_true == 2


def test_header_is_skipped(tmp_path):
    f = tmp_path / "h.csv"
    f.write_text("a,b,class\n1,2,0\n3,4,1\n")
    ds = load_csv(f)
    assert ds.features.tolist() == [[1, 2], [3, 4]]


def test_ragged_row_reports_line(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("1,2,0\n3,4\n")
    with pytest.raises(ParseError, match=":2:"):
        load_csv(f)


def test_non_numeric_cell(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("1,2,0\n3,x,1\n")
    with pytest.raises(ParseError, match="'x'"):
        load_csv(f)


def test_too_few_rows(tmp_path):
    f = tmp_path / "one.csv"
    f.write_text("1,2,0\n")
    with pytest.raises(SizeError):
        load_csv(f)


def test_round_trip(tmp_path):
    ds = load_dataset("iris")
    write_csv(ds, tmp_path / "iris.csv")
    back = load_csv(tmp_path / "iris.csv")
    np.testing.assert_array_equal(back.features, ds.features)
    np.testing.assert_array_equal(back.labels, ds.labels)


def test_zscore_two_values():
    # mean 2, population variance ((1-2)^2 + (3-2)^2) / 2 = 1
    ds = zscore_normalize(Dataset("t", np.array([[1.0], [3.0]])))
    np.testing.assert_allclose(ds.features[:, 0], [-1.0, 1.0], atol=1e-15)
    assert ds.normalized


def test_zscore_idempotent():
    once = zscore_normalize(load_dataset("iris"))
    twice = zscore_normalize(once)
    np.testing.assert_allclose(twice.features, once.features, atol=1e-9)


def test_zscore_constant_column():
    x = np.array([[4.0, 1.0], [4.0, 2.0], [4.0, 6.0]])
    ds = zscore_normalize(Dataset("c", x, labels=[0, 1, 0]))
    np.testing.assert_array_equal(ds.features[:, 0], 0.0)
    np.testing.assert_array_equal(ds.labels, [0, 1, 0])


def test_half_ring_shape_and_balance():
    ds = generate_half_ring(400, 0.08, seed=1)
    assert (ds.n, ds.d, ds.k_true) == (400, 2, 2)
    assert np.bincount(ds.labels).tolist() == [200, 200]


def test_half_ring_zero_noise_geometry():
    ds = generate_half_ring(40, 0.0, seed=3)
    up = ds.features[ds.labels == 0]
    np.testing.assert_allclose(np.hypot(up[:, 0], up[:, 1]), 1.0, atol=1e-12)
    assert np.all(up[:, 1] >= -1e-12)
    low = ds.features[ds.labels == 1]
    np.testing.assert_allclose(np.hypot(low[:, 0] - 1.0, low[:, 1] - 0.5), 1.0, atol=1e-12)
    assert np.all(low[:, 1] <= 0.5 + 1e-12)


def test_half_ring_deterministic():
    a = generate_half_ring(100, 0.1, seed=7)
    b = generate_half_ring(100, 0.1, seed=7)
    assert a.features.tobytes() == b.features.tobytes()
    assert not np.array_equal(a.features, generate_half_ring(100, 0.1, seed=8).features)


def test_half_ring_odd_size():
    with pytest.raises(SizeError):
        generate_half_ring(41)


def test_half_ring_not_linearly_separable():
    # exhaustive search over projection directions: a separating line exists
    # iff some direction puts all of one class strictly beyond the other
    ds = generate_half_ring(40, 0.0, seed=0)
    x0, x1 = ds.features[ds.labels == 0], ds.features[ds.labels == 1]
    dirs = [x1.mean(0) - x0.mean(0)]
    theta = np.linspace(0.0, np.pi, 20000, endpoint=False)
    dirs += list(np.column_stack([np.cos(theta), np.sin(theta)]))
    for w in dirs:
        p0, p1 = x0 @ w, x1 @ w
        assert not (p0.max() < p1.min() or p1.max() < p0.min())


def test_dataset_rejects_bad_labels():
    with pytest.raises(SizeError):
        Dataset("x", np.zeros((3, 1)), labels=[0, 2, 2])
    with pytest.raises(SizeError):
        Dataset("x", np.zeros((3, 1)), labels=[0, 1])
    with pytest.raises(SizeError):
        Dataset("x", np.zeros((1, 1)))
