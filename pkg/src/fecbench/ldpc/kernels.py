"""Compiled LDPC decoding loops over CSR row adjacency."""

import numpy as np

from .._accel import njit

_PIN = 1.0e6  # magnitude sent by a degenerate (<2 input) check node


@njit
def _syndrome_ok(hard, row_ptr, col_idx):
    n_rows = row_ptr.size - 1
    for r in range(n_rows):
        acc = 0
        for e in range(row_ptr[r], row_ptr[r + 1]):
            acc ^= hard[col_idx[e]]
        if acc:
            return False
    return True


@njit
def layered_oms_kernel(
    llr,
    row_ptr,
    col_idx,
    layer_ptr,
    max_iters,
    beta,
    early_stop,
    q,
    rmsg,
    hard,
):
    """Layered offset min-sum: per-layer check update with the posterior
    refreshed in place. Returns (success, iterations used)."""
    N = llr.size
    for v in range(N):
        q[v] = llr[v]
    for e in range(col_idx.size):
        rmsg[e] = 0.0
    n_layers = layer_ptr.size - 1

    it = 0
    ok = False
    while it < max_iters:
        it += 1
        for layer in range(n_layers):
            for r in range(layer_ptr[layer], layer_ptr[layer + 1]):
                lo = row_ptr[r]
                hi = row_ptr[r + 1]
                w = hi - lo
                if w < 2:
                    if w == 1:
                        v = col_idx[lo]
                        t = q[v] - rmsg[lo]
                        rmsg[lo] = _PIN
                        q[v] = t + _PIN
                    continue
                min1 = 1.0e300
                min2 = 1.0e300
                arg1 = -1
                sgn = 1.0
                for e in range(lo, hi):
                    t = q[col_idx[e]] - rmsg[e]
                    if t < 0.0:
                        sgn = -sgn
                    at = abs(t)
                    if at < min1:
                        min2 = min1
                        min1 = at
                        arg1 = e
                    elif at < min2:
                        min2 = at
                for e in range(lo, hi):
                    v = col_idx[e]
                    t = q[v] - rmsg[e]
                    mag = (min2 if e == arg1 else min1) - beta
                    if mag < 0.0:
                        mag = 0.0
                    s = -sgn if t < 0.0 else sgn
                    r_new = s * mag
                    q[v] = t + r_new
                    rmsg[e] = r_new
        for v in range(N):
            hard[v] = 1 if q[v] < 0.0 else 0
        clean = _syndrome_ok(hard, row_ptr, col_idx)
        if clean and early_stop:
            ok = True
            break
        if it == max_iters:
            ok = clean
    return ok, it


@njit
def flooding_spa_kernel(
    llr,
    row_ptr,
    col_idx,
    max_iters,
    early_stop,
    q,
    rmsg,
    rnew,
    pre,
    suf,
    hard,
):
    """Flooding sum-product with the exact tanh check rule.

    Inputs to tanh are clamped to +-30 so atanh never sees a unit
    magnitude. Returns (success, iterations used)."""
    N = llr.size
    E = col_idx.size
    n_rows = row_ptr.size - 1
    for e in range(E):
        rmsg[e] = 0.0
    for v in range(N):
        q[v] = llr[v]

    it = 0
    ok = False
    while it < max_iters:
        it += 1
        for r in range(n_rows):
            lo = row_ptr[r]
            hi = row_ptr[r + 1]
            w = hi - lo
            if w < 2:
                if w == 1:
                    rnew[lo] = _PIN
                continue
            pre[0] = 1.0
            for k in range(w):
                m = q[col_idx[lo + k]] - rmsg[lo + k]
                if m > 30.0:
                    m = 30.0
                elif m < -30.0:
                    m = -30.0
                t = np.tanh(0.5 * m)
                pre[k + 1] = pre[k] * t
                suf[k] = t
            run = 1.0
            for k in range(w - 1, -1, -1):
                tk = suf[k]
                suf[k] = run
                run *= tk
            for k in range(w):
                t = pre[k] * suf[k]
                if t > 0.999999999999:
                    t = 0.999999999999
                elif t < -0.999999999999:
                    t = -0.999999999999
                rnew[lo + k] = np.log((1.0 + t) / (1.0 - t))
        for e in range(E):
            rmsg[e] = rnew[e]
        for v in range(N):
            q[v] = llr[v]
        for r in range(n_rows):
            for e in range(row_ptr[r], row_ptr[r + 1]):
                q[col_idx[e]] += rmsg[e]
        for v in range(N):
            hard[v] = 1 if q[v] < 0.0 else 0
        clean = _syndrome_ok(hard, row_ptr, col_idx)
        if clean and early_stop:
            ok = True
            break
        if it == max_iters:
            ok = clean
    return ok, it
