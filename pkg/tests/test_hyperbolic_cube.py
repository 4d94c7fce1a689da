"""
Test suite for deformed hyperbolic cubes, dihedral angles and face isometries
"""

import sys
import os
import math
from itertools import product
from unittest.mock import patch

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import ConsistencyError
from src.core.hyperbolic_cube import (
    FaceType, HyperbolicCube, lorentz_inner, on_hyperboloid, hyp_distance,
    distance_to_coordinate_hyperplane, hyperbolic_cube, cube_apex, dihedral_angle,
    dihedral_angle_oracle, upward_angle_closed_form, angle_table, face_type,
    canonical_face, face_distance_matrix, check_face_isometry, vertex_link_angles,
)

TOL = 1e-9


def test_apex_coordinates():
    """Test x_eps for n = 2 and eps = 0.5"""
    print("\n=== Testing Apex Coordinates ===")

    apex = cube_apex(2, 0.5)
    print(f"✓ x_eps = {apex}")

    assert np.allclose(apex, [0.5210953, 0.5210953, 1.2422079], atol=1e-7)
    assert on_hyperboloid(apex)
    assert abs(lorentz_inner(apex, apex) + 1.0) < TOL
    for axis in range(2):
        assert abs(distance_to_coordinate_hyperplane(apex, axis) - 0.5) < TOL, "Apex is eps from each hyperplane"


def test_every_vertex_on_hyperboloid():
    """Test that all cube vertices lie on the upper sheet"""
    print("\n=== Testing Vertex Coordinates ===")

    for n in (1, 2, 3, 4):
        cube = hyperbolic_cube(n, 0.3)
        assert len(cube.patterns()) == 2 ** n
        for pattern in cube.patterns():
            assert on_hyperboloid(cube.vertex(pattern)), f"{pattern} is off the hyperboloid"
        assert np.allclose(cube.base, [0.0] * n + [1.0]), "x_0 is the origin"
    print("✓ 30 vertices checked")

    cube = hyperbolic_cube(1, 0.7)
    assert abs(hyp_distance(cube.base, cube.apex) - 0.7) < TOL, "C^1 is a segment of length eps"

    with pytest.raises(ValueError):
        cube.vertex((2,))
    with pytest.raises(ValueError):
        HyperbolicCube(0, 1.0)
    with pytest.raises(ValueError):
        HyperbolicCube(2, 0.0)


def test_hyp_distance_properties():
    """Test distance symmetry, zero diagonal and rejection of bad points"""
    print("\n=== Testing Hyperbolic Distance ===")

    cube = hyperbolic_cube(3, 0.5)
    points = [cube.vertex(p) for p in cube.patterns()]
    for p in points:
        assert hyp_distance(p, p) == 0.0, "Distance to itself is exactly zero"
        for q in points:
            assert abs(hyp_distance(p, q) - hyp_distance(q, p)) < TOL

    with pytest.raises(ValueError):
        hyp_distance([1.0, 1.0, 1.0], cube.base[:3])
    print("✓ Distance properties hold")


def test_dihedral_angle_values():
    """Test theta(eps) against its closed form and the geometric oracle"""
    print("\n=== Testing Dihedral Angle ===")

    theta = dihedral_angle(0.5)
    print(f"✓ theta(0.5) = {theta:.6f}")
    assert abs(math.cos(theta) - 0.2135523) < 1e-7
    assert abs(theta - 1.35558) < 1e-5

    for n in (2, 3, 4, 5):
        for epsilon in (1.0, 0.5, 0.1, 0.01):
            oracle = dihedral_angle_oracle(n, epsilon, axes=(0, n - 1))
            assert abs(oracle - dihedral_angle(epsilon)) < TOL, f"Oracle mismatch at n={n}, eps={epsilon}"
            assert abs(upward_angle_closed_form(epsilon, 0) - dihedral_angle(epsilon)) < TOL
    print("✓ Oracle agrees in dimensions 2 to 5")

    margin = math.pi / 2 - dihedral_angle(0.01)
    assert 0.5e-4 < margin < 2e-4, "theta(0.01) sits about 1e-4 below pi/2"

    with pytest.raises(ValueError):
        dihedral_angle_oracle(1, 0.5)


def test_angle_table_margins():
    """Test the epsilon grid table and monotone margins"""
    print("\n=== Testing Angle Table ===")

    rows = angle_table([1.0, 0.5, 0.1, 0.01])
    for epsilon, theta, margin in rows:
        print(f"  eps={epsilon}: theta={theta:.6f}, margin={margin:.6g}")
        assert 0 < theta < math.pi / 2
        assert abs(margin - (math.pi / 2 - theta)) < 1e-15
    margins = [row[2] for row in rows]
    assert margins == sorted(margins, reverse=True), "Margin shrinks as eps decreases"
    assert margins[-1] < 1e-3, "theta approaches pi/2 as eps goes to 0"

    with pytest.raises(ValueError):
        angle_table([])
    with pytest.raises(ValueError):
        angle_table([0.5, -1.0])
    with pytest.raises(ValueError):
        angle_table([0.5, float('nan')])
    with pytest.raises(ValueError):
        angle_table([float('inf')])
    print("✓ Angle table correct")


def test_face_types_and_canonical_faces():
    """Test face type detection and canonical faces"""
    print("\n=== Testing Face Types ===")

    cube = hyperbolic_cube(3, 0.5)
    assert face_type(cube, cube.patterns()) == FaceType(0, 3)
    assert face_type(cube, [(1, 1, 1), (0, 1, 1)]) == FaceType(0, 1)
    assert face_type(cube, [(1, 0, 0)]).dimension == 0

    with pytest.raises(ValueError):
        face_type(cube, [(0, 0, 0), (1, 1, 0)])
    with pytest.raises(ValueError):
        FaceType(2, 1)

    face = canonical_face(3, FaceType(1, 2))
    assert face == [(1, 0, 0), (1, 1, 0)]
    assert face_type(cube, face).as_tuple() == (1, 2)
    with pytest.raises(ValueError):
        canonical_face(2, FaceType(0, 3))
    print("✓ Face types correct")


def test_face_isometries():
    """Test that a type-(k, l) face of C^n is isometric to the same face of C^l"""
    print("\n=== Testing Face Isometries ===")

    for n in (2, 3, 4):
        for l in range(n + 1):
            for k in range(l + 1):
                gap = check_face_isometry(n, 0.4, (k, l))
                assert gap < TOL, f"Face ({k}, {l}) of C^{n} off by {gap}"
    print("✓ Faces isometric in dimensions 2 to 4")

    matrix = face_distance_matrix(2, 0.4, (0, 1))
    assert matrix.shape == (2, 2)
    assert abs(matrix[0, 1] - 0.4) < TOL, "Top edges have length eps"


def test_face_isometries_across_dimensions():
    """Test every face type up to l = 4 inside C^l, C^(l+1) and C^(l+2) at eps = 0.3"""
    print("\n=== Testing Face Isometries Across Dimensions ===")

    epsilon = 0.3
    checked = 0
    for l in range(5):
        for n in (l, l + 1, l + 2):
            if n == 0:
                continue
            for k in range(l + 1):
                gap = check_face_isometry(n, epsilon, (k, l))
                assert gap < TOL, f"Face ({k}, {l}) of C^{n} off by {gap}"
                checked += 1

            if l == 0:
                continue
            # a type-(0, l) face is a copy of C^l
            cube = hyperbolic_cube(l, epsilon)
            points = [cube.vertex(p) for p in product((0, 1), repeat=l)]
            direct = np.array([[hyp_distance(p, q) for q in points] for p in points])
            assert np.allclose(face_distance_matrix(n, epsilon, (0, l)), direct, atol=TOL)
    print(f"✓ {checked} face types isometric")


def test_orthogonality_at_every_vertex():
    """Test the link of every vertex of C^4 at eps = 0.1"""
    print("\n=== Testing Orthogonality in C^4 ===")

    epsilon = 0.1
    cube = hyperbolic_cube(4, epsilon)
    for pattern in cube.patterns():
        link = vertex_link_angles(4, epsilon, pattern)
        assert link.max_orthogonality_defect() < TOL, f"Non-upward edges at {pattern} are not orthogonal"
        expected = upward_angle_closed_form(epsilon, cube.vertex_type(pattern))
        assert all(abs(a - expected) < TOL for a in link.upward_angles())

    apex_angles = vertex_link_angles(4, epsilon, (1, 1, 1, 1)).upward_angles()
    assert len(apex_angles) == 6
    assert all(abs(a - dihedral_angle(epsilon)) < TOL for a in apex_angles)
    print(f"✓ 16 vertices, theta(0.1) = {dihedral_angle(epsilon):.8f}")


def test_vertex_link_angles():
    """Test angles between cube edges at the apex, the base and a middle vertex"""
    print("\n=== Testing Vertex Link Angles ===")

    epsilon = 0.5
    apex_link = vertex_link_angles(3, epsilon, (1, 1, 1))
    assert all(direction == 'up' for _, direction in apex_link.edges)
    assert all(abs(a - dihedral_angle(epsilon)) < TOL for a in apex_link.upward_angles())

    base_link = vertex_link_angles(3, epsilon, (0, 0, 0))
    assert all(direction == 'down' for _, direction in base_link.edges)
    assert base_link.max_orthogonality_defect() < TOL, "Edges at x_0 are orthogonal"

    middle = vertex_link_angles(3, epsilon, (1, 1, 0))
    assert [d for _, d in middle.edges] == ['up', 'up', 'down']
    expected = upward_angle_closed_form(epsilon, 1)
    assert abs(middle.upward_angles()[0] - expected) < TOL
    print(f"✓ Up-up angle at a type-1 vertex: {expected:.6f}")

    with pytest.raises(ValueError):
        vertex_link_angles(2, epsilon, (0, 2))


def test_apex_consistency_guard():
    """Test that a disagreeing hyperplane distance raises ConsistencyError"""
    print("\n=== Testing Apex Guard ===")

    with patch('src.core.hyperbolic_cube.distance_to_coordinate_hyperplane', return_value=0.0):
        with pytest.raises(ConsistencyError):
            cube_apex(2, 0.5)
    print("✓ ConsistencyError raised")
