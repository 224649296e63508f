import json
import math

import numpy as np
import pytest

from icosaharm.mesh import nodal_mesh
from icosaharm.poly3 import Cubic, axis_harmonic, bombieri_norm, special_form
from icosaharm.icosa import q_basis
from icosaharm.search import eval_cubic


def _check_vertices(f, mesh):
    c = np.array([float(x) for x in f.coeffs]) / bombieri_norm(f)
    assert np.max(np.abs(eval_cubic(c, mesh.vertices)[0])) < 1e-6
    assert np.max(np.abs(np.linalg.norm(mesh.vertices, axis=1) - 1)) < 1e-12


def test_axis_harmonic_three_circles():
    f = axis_harmonic((0, 0, 1))
    mesh = nodal_mesh(f, 48)
    _check_vertices(f, mesh)
    assert mesh.components() == 3
    levels = sorted(set(np.round(mesh.vertices[:, 2], 9)))
    s = math.sqrt(3 / 5)
    assert levels == pytest.approx([-s, 0.0, s], abs=1e-9)
    assert "singular" not in mesh.markers


def test_xyz_great_circles_with_crossings():
    f = Cubic.monomial((1, 1, 1))
    mesh = nodal_mesh(f, 48)
    _check_vertices(f, mesh)
    # every vertex on one of the coordinate planes
    assert np.all(np.min(np.abs(mesh.vertices), axis=1) < 1e-12)
    sing = mesh.markers["singular"]
    assert len(sing) == 6
    for e in np.vstack([np.eye(3), -np.eye(3)]):
        assert min(np.linalg.norm(sing - e, axis=1)) < 1e-8


@pytest.mark.parametrize("res", [8, 16, 33])
def test_coarse_grids_do_not_crash(res):
    for f in [special_form((0, 1, 0), (0, 0, 1)), q_basis()[0] - q_basis()[1]]:
        mesh = nodal_mesh(f, res)
        _check_vertices(f, mesh)


def test_export(tmp_path):
    f = Cubic.monomial((1, 1, 1))
    mesh = nodal_mesh(f, 16, icosahedra=[np.eye(3)])
    p = tmp_path / "m.json"
    mesh.save(str(p))
    obj = json.loads(p.read_text())
    assert len(obj["vertices"]) == len(mesh.vertices)
    assert len(obj["markers"]["icosahedron_vertices"]) == 6
    o = tmp_path / "m.obj"
    mesh.save(str(o))
    text = o.read_text()
    assert text.count("\nl ") + text.startswith("l ") == len(mesh.segments)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        nodal_mesh(Cubic.zero(), 16)
    with pytest.raises(ValueError):
        nodal_mesh(Cubic.monomial((1, 1, 1)), 2)
