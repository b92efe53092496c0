"""NumPy implementations of the compiled kernels, used when the extension is absent."""
import numpy as np


def gauss_matmul(ar, ai, br, bi):
    """(ar + i ai) @ (br + i bi) for int64 operands known not to overflow."""
    return ar @ br - ai @ bi, ar @ bi + ai @ br


def monomial_chain(rows, phases):
    """Compose monomial matrices given as (row-of-column, phase exponent of i)."""
    n = rows.shape[1]
    out_r = np.arange(n, dtype=np.int64)
    out_p = np.zeros(n, dtype=np.int64)
    for f in range(rows.shape[0] - 1, -1, -1):
        out_p = (out_p + phases[f, out_r]) & 3
        out_r = rows[f, out_r]
    return out_r, out_p
