import numpy as np
import pytest
from scipy import stats

from common.errors import GeometryError
from region_search.face_counts import FaceCounts
from region_search.sampling import (
    face_weights,
    interior_point,
    sample_points_in_polygon,
    simplify_ring,
    triangle_areas,
    triangulate,
    weighted_face_sample,
)

# L-shape: the unit square [0,2]^2 minus its upper right quarter
L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]


def test_triangulation_covers_the_area():
    triangles = triangulate(L_SHAPE)
    assert triangles.shape == (4, 3, 2)
    assert triangle_areas(triangles).sum() == pytest.approx(3.0)


def test_triangulation_accepts_clockwise_rings():
    triangles = triangulate(L_SHAPE[::-1])
    assert triangle_areas(triangles).sum() == pytest.approx(3.0)


def test_collinear_corners_are_dropped():
    ring = simplify_ring([(0, 0), (1, 0), (2, 0), (2, 2), (2, 2), (0, 2)])
    assert ring.shape == (4, 2)


def test_flat_polygon_raises():
    with pytest.raises(GeometryError):
        triangulate([(0, 0), (1, 1), (2, 2)])


def test_interior_point_is_inside_the_l():
    x, y = interior_point(L_SHAPE)
    assert 0 < x < 2 and 0 < y < 2
    assert not (x > 1 and y > 1)


def test_uniform_density(rng):
    pts = sample_points_in_polygon(L_SHAPE, rng, 30000)
    assert not ((pts[:, 0] > 1) & (pts[:, 1] > 1)).any()
    cells = (pts[:, 0] > 1).astype(int) + 2 * (pts[:, 1] > 1).astype(int)
    observed = np.bincount(cells, minlength=4)[:3]
    _, p = stats.chisquare(observed)
    assert p > 1e-3


def make_counts(values):
    values = np.asarray(values, dtype=np.int64)
    inner = values[1:]
    return FaceCounts(
        face_of=np.arange(values.shape[0]),
        counts=values,
        exterior_face=0,
        seed_face=1,
        seed_count=int(values[1]),
        min_count=int(inner.min()),
        max_count=int(inner.max()),
    )


def test_face_weights_halve_per_crossing():
    ids, probs = face_weights(make_counts([-1, 2, 3, 2, 5]))
    assert ids.tolist() == [1, 2, 3, 4]
    assert probs == pytest.approx(np.array([8, 4, 8, 1]) / 21.0)


def test_face_weights_restricted_and_empty():
    counts = make_counts([-1, 0, 1])
    ids, probs = face_weights(counts, faces=[2])
    assert ids.tolist() == [2] and probs.tolist() == [1.0]
    with pytest.raises(GeometryError):
        face_weights(counts, faces=[])


def test_weighted_sample_prefers_low_counts(rng):
    counts = make_counts([-1, 0, 4])
    draws = [weighted_face_sample(counts, rng) for _ in range(2000)]
    share = draws.count(1) / len(draws)
    assert share == pytest.approx(16 / 17, abs=0.03)


@pytest.mark.slow
def test_weighted_frequencies_follow_powers_of_two():
    counts = make_counts([-1, 0, 1, 2])
    ids, probs = face_weights(counts)
    assert probs == pytest.approx([4 / 7, 2 / 7, 1 / 7])
    r = np.random.default_rng(8)
    draws = np.array([weighted_face_sample(counts, r) for _ in range(100_000)])
    observed = np.array([(draws == f).sum() for f in ids.tolist()])
    assert stats.chisquare(observed, 100_000 * probs).pvalue > 0.01
