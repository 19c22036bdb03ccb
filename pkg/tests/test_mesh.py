import math

import numpy as np
import pytest

from psilab import analytic
from psilab.errors import DegenerateTriangle, MeshParseError, NonManifoldMesh
from psilab.mesh import (
    TriMesh,
    VertexField,
    boundary_measure,
    hausdorff_measure,
    load_mesh,
    mean_curvature,
    p1_gradient_lp,
    sample_field,
    total_mean_curvature,
)

from conftest import boundary_vanishing_field, mesh_to_off

SQUARE_OFF = """OFF
4 2 0
0 0 0
1 0 0
1 1 0
0 1 0
3 0 1 2
3 0 2 3
"""


class TestOffParsing:
    def test_square(self):
        mesh = load_mesh(SQUARE_OFF)
        assert len(mesh.vertices) == 4
        assert len(mesh.triangles) == 2
        assert hausdorff_measure(mesh) == pytest.approx(1.0, rel=1e-14)

    def test_counts_on_header_line(self):
        text = SQUARE_OFF.replace("OFF\n4 2 0", "OFF 4 2 0")
        mesh = load_mesh(text)
        assert len(mesh.vertices) == 4

    def test_comments_and_blanks(self):
        text = "# preamble\n\nOFF # inline\n4 2 0\n" + "\n".join(
            SQUARE_OFF.splitlines()[2:]
        )
        mesh = load_mesh(text)
        assert len(mesh.triangles) == 2

    def test_noff_roundtrip(self):
        torus = analytic.make_clifford_torus(6)
        back = load_mesh(mesh_to_off(torus))
        assert back.d == 4
        assert np.allclose(back.vertices, torus.vertices)

    def test_bad_header(self):
        with pytest.raises(MeshParseError) as ei:
            load_mesh("PLY\n")
        assert ei.value.line == 1

    def test_bad_vertex_line_number(self):
        text = "OFF\n4 2 0\n0 0 0\n1 0 oops\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n"
        with pytest.raises(MeshParseError) as ei:
            load_mesh(text)
        assert ei.value.line == 4

    def test_quad_face_rejected(self):
        text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n"
        with pytest.raises(MeshParseError) as ei:
            load_mesh(text)
        assert ei.value.line == 7

    def test_truncated_file(self):
        with pytest.raises(MeshParseError):
            load_mesh("OFF\n4 2 0\n0 0 0\n")

    def test_index_out_of_range(self):
        text = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 9\n"
        with pytest.raises(MeshParseError):
            load_mesh(text)


class TestMeshValidation:
    def test_degenerate_repeated_vertex(self):
        with pytest.raises(DegenerateTriangle):
            TriMesh(np.eye(3), np.array([[0, 1, 1]]))

    def test_degenerate_zero_area(self):
        v = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
        with pytest.raises(DegenerateTriangle):
            TriMesh(v, np.array([[0, 1, 2]]))

    def test_inconsistent_orientation(self):
        v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
        # both triangles traverse edge (0, 1) in the same direction
        with pytest.raises(NonManifoldMesh):
            TriMesh(v, np.array([[0, 1, 2], [0, 1, 3]]))

    def test_disconnected_warns(self):
        v = np.array(
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 0], [6, 5, 0], [5, 6, 0]],
            dtype=float,
        )
        with pytest.warns(UserWarning, match="not connected"):
            TriMesh(v, np.array([[0, 1, 2], [3, 4, 5]]))


class TestBoundary:
    def test_disk_boundary(self, disk32):
        assert not disk32.is_closed()
        # 32 rings x 64 segments: the outer ring has 64 boundary vertices
        assert disk32.boundary_vertices().size == 64
        assert boundary_measure(disk32) == pytest.approx(2.0 * math.pi, rel=2e-3)

    def test_sphere_closed(self, sphere4):
        assert sphere4.is_closed()
        assert boundary_measure(sphere4) == 0.0

    def test_region_boundary(self):
        mesh = load_mesh(SQUARE_OFF)
        # only the first triangle: its boundary is the full triangle perimeter
        length = boundary_measure(mesh, [0])
        assert length == pytest.approx(2.0 + math.sqrt(2.0), rel=1e-13)


class TestAreasAndGradient:
    def test_disk_area(self, disk32):
        assert hausdorff_measure(disk32) == pytest.approx(math.pi, rel=2e-3)

    def test_region_area(self):
        mesh = load_mesh(SQUARE_OFF)
        assert hausdorff_measure(mesh, [0]) == pytest.approx(0.5, rel=1e-14)
        assert hausdorff_measure(mesh, []) == 0.0

    def test_affine_field_gradient_exact(self, disk32):
        # u = x + 2y + 5 has |grad u|^2 = 5 on a flat mesh
        x, y = disk32.vertices[:, 0], disk32.vertices[:, 1]
        f = VertexField(x + 2.0 * y + 5.0, mesh=disk32)
        area = hausdorff_measure(disk32)
        for p in (1.0, 2.0, 3.0):
            assert p1_gradient_lp(disk32, f, p) == pytest.approx(
                area * 5.0 ** (0.5 * p), rel=1e-12
            )

    def test_gradient_in_r4(self):
        torus = analytic.make_clifford_torus(12)
        f = VertexField(torus.vertices[:, 0] + 1.0, mesh=torus)
        assert p1_gradient_lp(torus, f, 2.0) > 0.0


class TestMeanCurvature:
    def test_sphere(self, sphere4):
        rep = mean_curvature(sphere4)
        assert np.all(~rep.boundary_mask)
        assert np.max(np.abs(rep.h_norm - 2.0)) < 0.02
        assert rep.total == pytest.approx(4.0 * math.sqrt(math.pi), rel=0.01)

    def test_tc_scale_invariance(self):
        a = total_mean_curvature(analytic.make_sphere(3, radius=1.0))
        b = total_mean_curvature(analytic.make_sphere(3, radius=7.5))
        assert a == pytest.approx(b, rel=1e-6)

    def test_refinement_convergence(self):
        errs = []
        for s in (3, 4):
            rep = mean_curvature(analytic.make_sphere(s))
            errs.append(float(np.max(np.abs(rep.h_norm - 2.0))))
        assert errs[1] / errs[0] < 0.6

    def test_clifford_torus(self):
        rep = mean_curvature(analytic.make_clifford_torus(48))
        assert np.max(np.abs(rep.h_norm - 2.0)) / 2.0 < 0.03

    def test_catenoid_is_minimal(self):
        rep = mean_curvature(analytic.make_catenoid(1.0, 24, 48))
        interior = ~rep.boundary_mask
        assert float(np.max(rep.h_norm[interior])) < 0.01

    def test_disk_boundary_vertices_zeroed(self, disk32):
        rep = mean_curvature(disk32)
        assert np.all(rep.h_norm[rep.boundary_mask] == 0.0)
        assert rep.total == pytest.approx(0.0, abs=1e-6)

    def test_report_serialization(self, disk32):
        rep = mean_curvature(disk32)
        assert "total_mean_curvature" in rep.to_json()
        assert rep.to_csv().splitlines()[0] == "vertex_index,h_norm,vertex_area,is_boundary"


class TestVertexField:
    def test_nonnegativity(self, disk32):
        with pytest.raises(ValueError):
            VertexField(-np.ones(len(disk32.vertices)), mesh=disk32)

    def test_length_check(self, disk32):
        with pytest.raises(ValueError):
            VertexField(np.ones(3), mesh=disk32)

    def test_compact_support_enforced(self, disk32):
        with pytest.raises(ValueError):
            VertexField(
                np.ones(len(disk32.vertices)), compactly_supported=True, mesh=disk32
            )

    def test_csv_roundtrip(self, disk32, disk_hat):
        back = VertexField.from_csv(disk_hat.to_csv(), disk32)
        assert np.array_equal(back.values, disk_hat.values)


class TestSampleField:
    def test_weights_partition_the_area(self, disk32, disk_hat):
        for s in (0, 1, 2):
            dmf = sample_field(disk32, disk_hat, s)
            assert dmf.total_weight() == pytest.approx(
                hausdorff_measure(disk32), rel=1e-12
            )
            assert len(dmf.values) == len(disk32.triangles) * 4**s

    def test_values_within_field_range(self, disk32, disk_hat):
        dmf = sample_field(disk32, disk_hat, 2)
        assert dmf.max_value() <= disk_hat.values.max() + 1e-15
        assert np.all(dmf.values >= 0.0)

    def test_l1_converges_to_exact(self, disk32):
        # integral of 1 - r over the unit disk is pi/3
        r = np.hypot(disk32.vertices[:, 0], disk32.vertices[:, 1])
        f = boundary_vanishing_field(disk32, 1.0 - r)
        dmf = sample_field(disk32, f, 3)
        assert float(np.sum(dmf.weights * dmf.values)) == pytest.approx(
            math.pi / 3.0, rel=5e-3
        )
