import os
import subprocess
import sys

import numpy as np

from spintorsion import _backend, _kernels_py


def test_kernels_agree(rng):
    ar, ai, br, bi = (np.ascontiguousarray(rng.integers(-9, 10, (6, 6))) for _ in range(4))
    got = _backend.gauss_matmul(ar, ai, br, bi)
    want = _kernels_py.gauss_matmul(ar, ai, br, bi)
    assert all(np.array_equal(g, w) for g, w in zip(got, want))


def test_monomial_chain_agrees(rng):
    n = 8
    rows = np.ascontiguousarray(np.stack([rng.permutation(n) for _ in range(5)]).astype(np.int64))
    phases = np.ascontiguousarray(rng.integers(0, 4, (5, n)).astype(np.int64))
    a = _backend.monomial_chain(rows, phases)
    b = _kernels_py.monomial_chain(rows, phases)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_pure_env_selects_fallback():
    env = dict(os.environ, SPINTORSION_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import spintorsion; print(spintorsion.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
