"""Hot loops shared by the state engines, compiled with numba.

All kernels update disjoint entries per loop iteration, so parallel
execution is bitwise reproducible.
"""

import numpy as np
from numba import njit, prange


@njit(parallel=True, cache=True)
def phase_inplace(amps, objective, gamma):
    """amps[i] *= exp(-1j * gamma * objective[i])."""
    for i in prange(amps.shape[0]):
        amps[i] = amps[i] * np.exp(-1j * gamma * objective[i])


@njit(parallel=True, cache=True)
def two_qubit_inplace(amps, shift_a, shift_b, u):
    """Apply a 4x4 unitary to qubits at bit shifts shift_a and shift_b.

    u is indexed by 2 * x_a + x_b, where x_a is the bit at shift_a. The
    shifts may come in any order but must differ.
    """
    hi = shift_a if shift_a > shift_b else shift_b
    lo = shift_b if shift_a > shift_b else shift_a
    bit_a = 1 << shift_a
    bit_b = 1 << shift_b
    low_mask = (1 << lo) - 1
    mid_mask = (1 << (hi - lo - 1)) - 1
    groups = amps.shape[0] >> 2
    for j in prange(groups):
        low = j & low_mask
        mid = (j >> lo) & mid_mask
        high = j >> (hi - 1)
        base = (high << (hi + 1)) | (mid << (lo + 1)) | low
        i01 = base | bit_b
        i10 = base | bit_a
        i11 = i10 | bit_b
        a00 = amps[base]
        a01 = amps[i01]
        a10 = amps[i10]
        a11 = amps[i11]
        amps[base] = u[0, 0] * a00 + u[0, 1] * a01 + u[0, 2] * a10 + u[0, 3] * a11
        amps[i01] = u[1, 0] * a00 + u[1, 1] * a01 + u[1, 2] * a10 + u[1, 3] * a11
        amps[i10] = u[2, 0] * a00 + u[2, 1] * a01 + u[2, 2] * a10 + u[2, 3] * a11
        amps[i11] = u[3, 0] * a00 + u[3, 1] * a01 + u[3, 2] * a10 + u[3, 3] * a11
