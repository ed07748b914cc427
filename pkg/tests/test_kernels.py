import os
import subprocess
import sys

import numpy as np
import pytest

from bgph import _kernels
from bgph.complex import SimplicialComplex, simplex

BACKENDS = _kernels.backends()
pairs = [(a, b) for a in BACKENDS for b in BACKENDS if a < b]


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert _kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("p", [2, 3, 7])
def test_rref_contract(name, p, rng):
    impl = BACKENDS[name]
    for _ in range(20):
        A = rng.integers(0, p, size=tuple(rng.integers(1, 8, size=2))).astype(np.int64)
        R, piv = impl.rref(A.copy(), p)
        r = len(piv)
        assert (R[:r, piv] == np.eye(r, dtype=np.int64)).all()
        assert not R[r:].any()
        assert list(piv) == sorted(piv)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_boundary_and_diameters(name):
    impl = BACKENDS[name]
    K = simplex(range(3))
    D = impl.boundary_matrix(K.faces(2), K.faces(1), 3)
    assert D.ravel().tolist() == [1, 2, 1]
    with pytest.raises(ValueError):
        impl.boundary_matrix(K.faces(2), K.faces(1)[:2], 2)
    dist = np.array([[0, 1, 5], [1, 0, 2], [5, 2, 0]], dtype=float)
    assert impl.subset_diameters(dist).tolist() == [0, 0, 0, 1, 0, 5, 2, 5]


@pytest.mark.skipif(not pairs, reason="compiled backend not built")
def test_backends_agree(rng):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for p in (2, 3, 5):
        for _ in range(30):
            A = rng.integers(0, p, size=tuple(rng.integers(0, 9, size=2))).astype(np.int64)
            if A.size == 0:
                continue
            Rp, pp = py.rref(A.copy(), p)
            Rc, pc = cy.rref(A.copy(), p)
            assert (Rp == Rc).all() and list(pp) == list(pc)
    K = SimplicialComplex.from_simplices(6, [(0, 1, 2, 3), (2, 3, 4), (4, 5)])
    for d in range(1, 4):
        hi, lo = K.faces(d), K.faces(d - 1)
        assert (py.boundary_matrix(hi, lo, 3) == cy.boundary_matrix(hi, lo, 3)).all()
    dist = rng.uniform(size=(7, 7))
    dist = dist + dist.T
    np.fill_diagonal(dist, 0)
    assert np.array_equal(py.subset_diameters(dist), cy.subset_diameters(dist))


def test_pure_python_end_to_end():
    code = (
        "import math\n"
        "from bgph import BACKEND, from_points\n"
        "from bgph.persistence import phz\n"
        "assert BACKEND == 'python', BACKEND\n"
        "B = phz(from_points([(0, 0), (2, 0), (0, 4)]))\n"
        "d = sorted(b.death for b in B if b.grade == (1, 2))\n"
        "assert abs(d[2] - 2 * math.sqrt(5)) < 1e-9 and d[:2] == [2.0, 4.0], d\n"
    )
    env = dict(os.environ, BGPH_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
