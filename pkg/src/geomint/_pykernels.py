"""Pure-Python (numpy) kernels, used when the compiled extension is absent.

Accumulation order matches ``_kernels.pyx`` exactly: per-slice sums are
sequential in point order and the L1 sum is sequential in bin order, so
both backends return bit-identical results.
"""

import numpy as np


def bin_index(coords, tol):
    return np.floor(coords + 0.5 + tol).astype(np.int64)


def slice_profiles(along, cross, tol):
    """Per-slice count, mean and population std of ``cross``.

    Slices are unit bins of ``along``. The returned domain always contains
    bin 0. Returns ``(lo, counts, means, stds)``; empty bins hold zeros.
    """
    along = np.asarray(along, dtype=np.float64)
    cross = np.asarray(cross, dtype=np.float64)
    bins = bin_index(along, tol)
    lo = min(int(bins.min()), 0)
    hi = max(int(bins.max()), 0)
    idx = bins - lo
    m = hi - lo + 1
    # bincount accumulates sequentially in input order
    counts = np.bincount(idx, minlength=m).astype(np.float64)
    sums = np.bincount(idx, weights=cross, minlength=m)
    occupied = counts > 0
    means = np.zeros(m)
    np.divide(sums, counts, out=means, where=occupied)
    dev = cross - means[idx]
    sq = np.bincount(idx, weights=dev * dev, minlength=m)
    var = np.zeros(m)
    np.divide(sq, counts, out=var, where=occupied)
    return lo, counts, means, np.sqrt(var)


def l1_aligned(p, p_lo, q, q_lo):
    """Sum of ``|p(b) - q(b)|`` over the union of both bin domains (absent = 0)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    lo = min(p_lo, q_lo)
    hi = max(p_lo + p.size, q_lo + q.size)
    a = np.zeros(hi - lo)
    b = np.zeros(hi - lo)
    a[p_lo - lo:p_lo - lo + p.size] = p
    b[q_lo - lo:q_lo - lo + q.size] = q
    d = np.abs(a - b)
    # cumsum is strictly sequential, unlike sum()'s pairwise reduction
    return float(np.cumsum(d)[-1]) if d.size else 0.0
