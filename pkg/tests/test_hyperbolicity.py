"""
Test suite for the four-point delta, quasi-isometry fits and Milnor-Svarc constants
"""

import sys
import os
import logging

import networkx as nx
import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config import get_config
from src.core.defining_graph import load_defining_graph
from src.core.hyperbolicity import as_networkx, delta_four_point, milnor_svarc_bound, qi_fit
from src.core.orbit_graphs import (
    cayley_ball, coned_off_cayley_ball, deligne_ball, maximal_spherical_family, orbit_map,
)
from src.core.word_oracles import RightAngledArtinOracle

GRAPH_DIR = os.path.join(os.path.dirname(__file__), '..', 'graphs')


def fixture(name):
    return load_defining_graph(os.path.join(GRAPH_DIR, f'{name}.graph'))


def free_oracle():
    return RightAngledArtinOracle(fixture('free_rank2'))


def test_tree_has_zero_delta():
    """Test that the free-group Cayley ball is 0-hyperbolic"""
    print("\n=== Testing Tree Delta ===")

    estimate = delta_four_point(cayley_ball(free_oracle(), 3))
    print(f"✓ {estimate.to_dict()}")

    assert estimate.method == 'exact'
    assert estimate.vertices == 53
    assert estimate.quadruples == 292825
    assert estimate.delta == 0.0
    assert estimate.witness == []


def test_sampled_fallback(caplog):
    """Test the seeded sampling used when every quadruple would exceed the budget"""
    print("\n=== Testing Sampled Fallback ===")

    ball = cayley_ball(free_oracle(), 6)
    with caplog.at_level(logging.WARNING):
        estimate = delta_four_point(ball)
    print(f"✓ {estimate.vertices} vertices, {estimate.quadruples} sampled quadruples")

    assert estimate.method == 'sampled'
    assert estimate.vertices == 1457
    assert estimate.quadruples == get_config().DELTA_SAMPLE
    assert estimate.delta == 0.0, "Every quadruple of a tree has delta 0"
    assert any('sampling' in record.getMessage() for record in caplog.records)
    assert delta_four_point(ball, seed=5).to_dict() == delta_four_point(ball, seed=5).to_dict()


def test_landmark_scan():
    """Test the explicit farthest-point landmark scan"""
    print("\n=== Testing Landmark Scan ===")

    estimate = delta_four_point(cayley_ball(free_oracle(), 6), sample='landmarks')
    assert estimate.method == 'landmarks'
    assert estimate.quadruples == 292825, "53 landmarks fit the default budget"
    assert estimate.delta == 0.0

    small = delta_four_point(nx.path_graph(3), sample='landmarks')
    assert small.method == 'exact' and small.delta == 0.0
    print("✓ Landmarks scanned")


def test_grid_and_cycle_delta():
    """Test delta of the Deligne star of F2 x F2 and of plain cycles"""
    print("\n=== Testing Grid and Cycle Delta ===")

    star = delta_four_point(deligne_ball(fixture('square'), 0))
    print(f"✓ Deligne star: {star.to_dict()}")
    assert star.delta == 2.0
    assert len(star.witness) == 4
    assert all('*G_' in label for label in star.witness)

    assert delta_four_point(nx.cycle_graph(8)).delta == 2.0, "Unweighted edges count as unit length"
    assert delta_four_point(nx.path_graph(10)).delta == 0.0
    assert delta_four_point(nx.path_graph(3)).method == 'exact'
    print("✓ Cycle and path")


def test_landmarks_and_samples_bound_exact():
    """Test that landmark and sampled estimates never exceed the exact value"""
    print("\n=== Testing Lower Bounds ===")

    ball = deligne_ball(fixture('square'), 1)
    exact = delta_four_point(ball, budget=10 ** 6)
    landmarks = delta_four_point(ball, sample='landmarks', budget=1000)
    sampled = delta_four_point(ball, sample=2000, seed=7)
    print(f"✓ exact={exact.delta}, landmarks={landmarks.delta}, sampled={sampled.delta}")

    assert exact.method == 'exact' and landmarks.method == 'landmarks' and sampled.method == 'sampled'
    assert exact.delta >= 2.0, "The ball contains the star of the identity isometrically"
    assert landmarks.delta <= exact.delta
    assert sampled.delta <= exact.delta
    assert landmarks.quadruples == 715, "13 landmarks fit a budget of 1000"
    assert sampled.quadruples == 2000


def test_sampling_is_deterministic():
    """Test that a seed fixes the sampled estimate"""
    print("\n=== Testing Seeded Sampling ===")

    ball = deligne_ball(fixture('square'), 1)
    first = delta_four_point(ball, sample=500, seed=11)
    second = delta_four_point(ball, sample=500, seed=11)
    assert first.to_dict() == second.to_dict()
    print("✓ Same seed, same estimate")


def test_delta_rejects_bad_input():
    """Test invalid samples, disconnected graphs and unknown graph types"""
    print("\n=== Testing Delta Validation ===")

    with pytest.raises(ValueError):
        delta_four_point(nx.path_graph(5), sample=0)
    with pytest.raises(ValueError):
        delta_four_point(nx.path_graph(5), sample='some')

    disconnected = nx.Graph()
    disconnected.add_edges_from([(0, 1), (2, 3), (4, 5)])
    with pytest.raises(ValueError):
        delta_four_point(disconnected)
    with pytest.raises(TypeError):
        as_networkx([1, 2, 3])
    print("✓ Invalid input rejected")


def test_qi_fit_identity_and_scaling():
    """Test lambda and C for an isometry, a dilation and a collapse"""
    print("\n=== Testing QI Fit ===")

    ball = cayley_ball(free_oracle(), 3)
    identity = qi_fit(ball, ball, {node: node for node in ball.graph}, 1)
    assert identity.lam == 1.0 and identity.constant == 0.0
    assert identity.pairs == 10, "Five interior vertices"

    source, target = nx.path_graph(6), nx.path_graph(11)
    dilation = qi_fit(source, target, lambda v: 2 * v, 5)
    print(f"✓ Dilation: lambda={dilation.lam}, C={dilation.constant}")
    assert abs(dilation.lam - 2.0) < 1e-9 and dilation.constant < 1e-9
    assert dilation.pairs == 15
    assert dilation.table == sorted(dilation.table)
    assert (1.0, 2.0) in dilation.table

    collapse = qi_fit(nx.path_graph(5), nx.path_graph(1), {v: 0 for v in range(5)}, 4)
    print(f"✓ Collapse: lambda={collapse.lam}, C={collapse.constant}")
    assert abs(collapse.lam - 2.0) < 1e-6 and abs(collapse.constant - 2.0) < 1e-6


def test_qi_fit_validation():
    """Test maps undefined on interior vertices"""
    print("\n=== Testing QI Validation ===")

    source = nx.path_graph(4)
    with pytest.raises(ValueError):
        qi_fit(source, source, {0: 0, 1: 1}, 3)
    with pytest.raises(ValueError):
        qi_fit(source, source, {v: v for v in source}, -1)
    print("✓ Partial maps rejected")


def test_coned_ball_to_deligne_ball():
    """Test the relative Milnor-Svarc fit for the free group"""
    print("\n=== Testing Relative Milnor-Svarc Fit ===")

    graph = fixture('free_rank2')
    family = maximal_spherical_family(graph)
    coned = coned_off_cayley_ball(free_oracle(), family, 2)
    deligne = deligne_ball(graph, 2)
    mapping = orbit_map(coned, deligne)

    fit = qi_fit(coned, deligne, mapping, 1)
    print(f"✓ lambda={fit.lam}, C={fit.constant}, pairs={fit.pairs}")
    assert fit.lam >= 1.0 and fit.constant >= 0.0
    assert fit.pairs == 10

    bound = milnor_svarc_bound(coned, deligne, family, mapping, 2)
    print(f"✓ {bound}")
    assert bound['R'] == 2.0, "One generator step crosses two Deligne edges"
    assert bound['inequality_pairs'] == 136
    assert bound['inequality_violations'] == 0


def test_coned_free_group_is_a_tree_metric():
    """Test that coning off the generator lines of F2 leaves delta 0"""
    print("\n=== Testing Coned-Off F2 Delta ===")

    family = maximal_spherical_family(fixture('free_rank2'))
    for radius in (2, 3):
        coned = coned_off_cayley_ball(free_oracle(), family, radius)
        estimate = delta_four_point(coned, budget=10 ** 7)
        print(f"✓ r={radius}: {estimate.to_dict()}")
        assert estimate.method == 'exact'
        assert estimate.delta == 0.0, "Cosets and elements form a subdivided Bass-Serre tree"

    fallback = delta_four_point(coned_off_cayley_ball(free_oracle(), family, 4))
    assert fallback.method == 'sampled'
    assert fallback.delta <= 1.0


def test_square_deligne_delta_grows():
    """Test that delta of the F2 x F2 Deligne balls grows with the radius"""
    print("\n=== Testing Deligne Delta Growth ===")

    square = fixture('square')
    values = []
    for radius in range(1, 5):
        estimate = delta_four_point(deligne_ball(square, radius), sample='landmarks')
        print(f"✓ r={radius}: delta={estimate.delta} ({estimate.quadruples} quadruples)")
        assert estimate.method == 'landmarks'
        assert estimate.delta <= 2 * radius + 2, "Each tree factor contributes at most depth 2r+1"
        values.append(estimate.delta)

    assert values == sorted(values), "Balls nest isometrically"
    assert values[3] > values[1]
    assert values[1] <= 6.0


def fit_at(graph, oracle, radius, interior):
    family = maximal_spherical_family(graph)
    coned = coned_off_cayley_ball(oracle, family, radius)
    deligne = deligne_ball(graph, radius)
    return qi_fit(coned, deligne, orbit_map(coned, deligne), interior)


def assert_stable(first, second):
    for a, b in ((first.lam, second.lam), (first.constant, second.constant)):
        assert abs(a - b) <= 0.2 * max(a, b)


def test_free_group_fit_is_bounded_and_stable():
    """Test lambda and C of the coned F2 ball against its Deligne ball at radii 5 and 6"""
    print("\n=== Testing F2 Fit Stability ===")

    graph = fixture('free_rank2')
    fits = [fit_at(graph, RightAngledArtinOracle(graph), radius, 3) for radius in (5, 6)]
    for fit in fits:
        print(f"✓ lambda={fit.lam}, C={fit.constant}, pairs={fit.pairs}")
        assert fit.lam <= 4.0 and fit.constant <= 4.0
    assert fits[0].pairs == fits[1].pairs
    assert_stable(*fits)


def test_square_fit_is_bounded_and_stable():
    """Test lambda and C of the coned F2 x F2 ball against its Deligne ball at radii 3 and 4"""
    print("\n=== Testing Square Fit Stability ===")

    graph = fixture('square')
    fits = [fit_at(graph, RightAngledArtinOracle(graph), radius, 2) for radius in (3, 4)]
    for fit in fits:
        print(f"✓ lambda={fit.lam}, C={fit.constant}, pairs={fit.pairs}")
        assert fit.lam <= 4.0 and fit.constant <= 4.0, "Every coned step spans at most four cube edges"
    assert_stable(*fits)
