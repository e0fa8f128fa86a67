"""Hot loops for polar encoding and decoding.

Everything in here is numba-compiled unless FECBENCH_BACKEND=numpy is set
(see fecbench._accel). Kernels operate on preallocated flat buffers so a
decoder instance can be reused across Monte Carlo frames without
re-allocating.

Buffer layout: the decode tree has depths d = 0..n, with the depth-d
working vector of length N >> d. All depth-d vectors are packed into one
flat array at offset 2*N - 2*(N >> d); stored left-sibling images use
offset N - (N >> (d - 1)).
"""

import numpy as np

from .._accel import njit


@njit
def polar_transform(u):
    """Self-inverse GF(2) butterfly transform in natural bit order."""
    x = u.copy()
    N = x.size
    h = 1
    while h < N:
        for st in range(0, N, 2 * h):
            for j in range(st, st + h):
                x[j] ^= x[j + h]
        h *= 2
    return x


@njit
def crc_remainder(bits, poly, degree):
    """Remainder of the bit sequence (MSB first) modulo the CRC polynomial.

    ``poly`` includes the leading term, e.g. 0x139 for degree 8.
    """
    top = 1 << degree
    reg = 0
    for i in range(bits.size):
        reg = (reg << 1) | bits[i]
        if reg & top:
            reg ^= poly
    return reg


@njit
def _f_op(a, b, exact):
    if exact:
        aa = min(max(a, -30.0), 30.0)
        bb = min(max(b, -30.0), 30.0)
        t = np.tanh(0.5 * aa) * np.tanh(0.5 * bb)
        return np.log((1.0 + t) / (1.0 - t))
    s = 1.0
    if a < 0.0:
        s = -s
    if b < 0.0:
        s = -s
    return s * min(abs(a), abs(b))


@njit
def _descend(llr_buf, ps_buf, i, N, n, exact):
    """Refresh per-depth LLR vectors so llr_buf[2N-2] is bit i's decision LLR."""
    if i == 0:
        d_from = 1
    else:
        z = 0
        while ((i >> z) & 1) == 0:
            z += 1
        dg = n - z
        h = N >> dg
        po = 2 * N - 2 * (N >> (dg - 1))
        co = 2 * N - 2 * (N >> dg)
        pso = N - (N >> (dg - 1))
        for j in range(h):
            a = llr_buf[po + j]
            b = llr_buf[po + h + j]
            if ps_buf[pso + j]:
                llr_buf[co + j] = b - a
            else:
                llr_buf[co + j] = b + a
        d_from = dg + 1
    for d in range(d_from, n + 1):
        h = N >> d
        po = 2 * N - 2 * (N >> (d - 1))
        co = 2 * N - 2 * (N >> d)
        for j in range(h):
            llr_buf[co + j] = _f_op(llr_buf[po + j], llr_buf[po + h + j], exact)


@njit
def _ascend(img_buf, ps_buf, i, N, n, u):
    """Fold bit i's decision into the partial-sum tree.

    After the final bit, img_buf[:N] holds the re-encoded codeword.
    """
    img_buf[2 * N - 2] = u
    d = n
    while d >= 1 and ((i >> (n - d)) & 1) == 1:
        sz = N >> d
        io = 2 * N - 2 * (N >> d)
        po = 2 * N - 2 * (N >> (d - 1))
        pso = N - (N >> (d - 1))
        for j in range(sz):
            img_buf[po + j] = ps_buf[pso + j] ^ img_buf[io + j]
            img_buf[po + sz + j] = img_buf[io + j]
        d -= 1
    if d >= 1:
        sz = N >> d
        io = 2 * N - 2 * (N >> d)
        pso = N - (N >> (d - 1))
        for j in range(sz):
            ps_buf[pso + j] = img_buf[io + j]


@njit
def sc_decode_kernel(chan_llrs, frozen, exact, llr_buf, ps_buf, img_buf, u_out):
    """Successive decoding of one frame.

    After the call ``u_out`` holds the estimated input bits and
    ``img_buf[:N]`` the re-encoded codeword image.
    """
    N = chan_llrs.size
    n = 0
    while (1 << n) < N:
        n += 1
    for j in range(N):
        llr_buf[j] = chan_llrs[j]
    for i in range(N):
        _descend(llr_buf, ps_buf, i, N, n, exact)
        if frozen[i]:
            u = 0
        else:
            u = 1 if llr_buf[2 * N - 2] < 0.0 else 0
        u_out[i] = u
        _ascend(img_buf, ps_buf, i, N, n, u)


@njit
def scl_decode_kernel(
    chan_llrs,
    frozen,
    L,
    exact,
    llr_buf,
    ps_buf,
    img_buf,
    u_paths,
    metrics,
    cand_pm,
    keep0,
    keep1,
    free_rows,
):
    """List decoding with the sign-mismatch path metric.

    The metric of a path grows by |LLR| whenever the appended bit
    contradicts the sign of its decision LLR (frozen bits included) and is
    unchanged otherwise. At each information bit the 2*nact candidate
    extensions are ranked by a stable sort, so metric ties resolve to the
    lower path index with the zero-extension first; with L=1 this
    reproduces plain successive decoding exactly.

    A fork copies a parent row only when both of its children survive;
    otherwise rows are updated in place, which keeps per-frame copy
    traffic proportional to the number of actual path splits. The list
    never shrinks (min(2*nact, L) >= nact), so the active rows stay
    0..nact-1.

    Returns the number of active paths; survivors are left unranked.
    """
    N = chan_llrs.size
    n = 0
    while (1 << n) < N:
        n += 1
    for j in range(N):
        llr_buf[0, j] = chan_llrs[j]
    metrics[0] = 0.0
    nact = 1

    for i in range(N):
        for p in range(nact):
            _descend(llr_buf[p], ps_buf[p], i, N, n, exact)

        if frozen[i]:
            for p in range(nact):
                dec = llr_buf[p, 2 * N - 2]
                if dec < 0.0:
                    metrics[p] -= dec
                u_paths[p, i] = 0
        else:
            for p in range(nact):
                dec = llr_buf[p, 2 * N - 2]
                if dec < 0.0:
                    cand_pm[p] = metrics[p] - dec  # u=0 contradicts the LLR
                    cand_pm[nact + p] = metrics[p]
                else:
                    cand_pm[p] = metrics[p]
                    cand_pm[nact + p] = metrics[p] + dec  # u=1 contradicts
            n_cand = 2 * nact
            n_keep = n_cand if n_cand < L else L
            ranked = np.argsort(cand_pm[:n_cand], kind="mergesort")
            for p in range(nact):
                keep0[p] = 0
                keep1[p] = 0
            for r in range(n_keep):
                c = ranked[r]
                if c < nact:
                    keep0[c] = 1
                else:
                    keep1[c - nact] = 1

            # Rows of fully-pruned parents are recycled first; while the
            # list is still filling, extra children go to fresh rows.
            nfree = 0
            for p in range(nact):
                if keep0[p] == 0 and keep1[p] == 0:
                    free_rows[nfree] = p
                    nfree += 1
            n_two = 0
            for p in range(nact):
                if keep0[p] == 1 and keep1[p] == 1:
                    n_two += 1
            grow = nact
            while nfree < n_two:
                free_rows[nfree] = grow
                nfree += 1
                grow += 1

            fi = 0
            for p in range(nact):
                if keep0[p] == 1 and keep1[p] == 1:
                    dst = free_rows[fi]
                    fi += 1
                    for j in range(llr_buf.shape[1]):
                        llr_buf[dst, j] = llr_buf[p, j]
                    for j in range(ps_buf.shape[1]):
                        ps_buf[dst, j] = ps_buf[p, j]
                    for j in range(img_buf.shape[1]):
                        img_buf[dst, j] = img_buf[p, j]
                    for j in range(i):
                        u_paths[dst, j] = u_paths[p, j]
                    dec = llr_buf[p, 2 * N - 2]
                    u_paths[dst, i] = 1
                    u_paths[p, i] = 0
                    if dec < 0.0:
                        metrics[dst] = metrics[p]
                        metrics[p] -= dec
                    else:
                        metrics[dst] = metrics[p] + dec
                elif keep0[p] == 1:
                    dec = llr_buf[p, 2 * N - 2]
                    if dec < 0.0:
                        metrics[p] -= dec
                    u_paths[p, i] = 0
                elif keep1[p] == 1:
                    dec = llr_buf[p, 2 * N - 2]
                    if dec > 0.0:
                        metrics[p] += dec
                    u_paths[p, i] = 1
            nact = n_keep

        for p in range(nact):
            _ascend(img_buf[p], ps_buf[p], i, N, n, u_paths[p, i])

    return nact


@njit
def bp_decode_kernel(
    chan_llrs,
    frozen,
    max_iters,
    early_stop,
    exact,
    lmsg,
    rmsg,
    u_hat,
    x_hat,
    scratch,
):
    """Iterative message passing on the n-stage transform graph.

    ``lmsg``/``rmsg`` are (n+1, N) leftward/rightward message arrays;
    column 0 faces the input bits, column n the channel. One iteration is
    a full right-to-left sweep followed by a left-to-right sweep. After
    each iteration the input-side and channel-side hard decisions are
    compared through the transform; matching images stop the decoder.

    Returns (success, iterations_used). u_hat/x_hat keep the final hard
    decisions.
    """
    N = chan_llrs.size
    n = 0
    while (1 << n) < N:
        n += 1
    big = 1.0e6

    for s in range(n + 1):
        for j in range(N):
            lmsg[s, j] = 0.0
            rmsg[s, j] = 0.0
    for j in range(N):
        lmsg[n, j] = chan_llrs[j]
        if frozen[j]:
            rmsg[0, j] = big

    it = 0
    ok = False
    match = False
    while it < max_iters:
        it += 1
        # right-to-left: update lmsg[s] from lmsg[s+1] and rmsg[s]
        for s in range(n - 1, -1, -1):
            h = 1 << s
            for st in range(0, N, 2 * h):
                for j in range(st, st + h):
                    r1 = rmsg[s, j]
                    r2 = rmsg[s, j + h]
                    l1 = lmsg[s + 1, j]
                    l2 = lmsg[s + 1, j + h]
                    lmsg[s, j] = _f_op(l1, l2 + r2, exact)
                    lmsg[s, j + h] = _f_op(r1, l1, exact) + l2
        # left-to-right: update rmsg[s+1] from rmsg[s] and lmsg[s+1]
        for s in range(0, n):
            h = 1 << s
            for st in range(0, N, 2 * h):
                for j in range(st, st + h):
                    r1 = rmsg[s, j]
                    r2 = rmsg[s, j + h]
                    l1 = lmsg[s + 1, j]
                    l2 = lmsg[s + 1, j + h]
                    rmsg[s + 1, j] = _f_op(r1, l2 + r2, exact)
                    rmsg[s + 1, j + h] = _f_op(r1, l1, exact) + r2

        for j in range(N):
            u_hat[j] = 1 if (lmsg[0, j] + rmsg[0, j]) < 0.0 else 0
            x_hat[j] = 1 if (chan_llrs[j] + rmsg[n, j]) < 0.0 else 0
        for j in range(N):
            scratch[j] = u_hat[j]
        h = 1
        while h < N:
            for st in range(0, N, 2 * h):
                for j in range(st, st + h):
                    scratch[j] ^= scratch[j + h]
            h *= 2
        match = True
        for j in range(N):
            if scratch[j] != x_hat[j]:
                match = False
                break
        if match and early_stop:
            ok = True
            break

    if not ok:
        # with early stopping disabled the flag still reports whether the
        # two sides agree after the final iteration
        ok = match
    return ok, it
