"""Max-log BCJR recursions for the 8-state recursive systematic code."""

import numpy as np

from .._accel import njit

NEG = -1.0e30


@njit
def maxlog_bcjr_kernel(
    lsys,
    lpar,
    lapr,
    k_info,
    next_state,
    par_out,
    term_in,
    alpha,
    beta,
    post,
):
    """Forward/backward max-log recursion over a trellis terminated to
    state 0 by three forced steps.

    ``lsys``/``lpar`` cover k_info + 3 steps, ``lapr`` only the k_info
    information steps. Fills ``post`` with the information-bit posterior
    LLRs. alpha/beta are (k_info + 4, 8) scratch.
    """
    n_states = 8
    total = k_info + 3

    for s in range(n_states):
        alpha[0, s] = NEG
        beta[total, s] = NEG
    alpha[0, 0] = 0.0
    beta[total, 0] = 0.0

    for k in range(total):
        for s in range(n_states):
            alpha[k + 1, s] = NEG
        ls = lsys[k]
        lp = lpar[k]
        la = lapr[k] if k < k_info else 0.0
        for s in range(n_states):
            a = alpha[k, s]
            if a <= NEG * 0.5:
                continue
            if k < k_info:
                for b in range(2):
                    c = par_out[b, s]
                    ns = next_state[b, s]
                    g = 0.5 * (1 - 2 * b) * (ls + la) + 0.5 * (1 - 2 * c) * lp
                    if a + g > alpha[k + 1, ns]:
                        alpha[k + 1, ns] = a + g
            else:
                b = term_in[s]
                c = par_out[b, s]
                ns = next_state[b, s]
                g = 0.5 * (1 - 2 * b) * ls + 0.5 * (1 - 2 * c) * lp
                if a + g > alpha[k + 1, ns]:
                    alpha[k + 1, ns] = a + g
        m = NEG
        for s in range(n_states):
            if alpha[k + 1, s] > m:
                m = alpha[k + 1, s]
        for s in range(n_states):
            if alpha[k + 1, s] > NEG * 0.5:
                alpha[k + 1, s] -= m

    for k in range(total - 1, -1, -1):
        ls = lsys[k]
        lp = lpar[k]
        la = lapr[k] if k < k_info else 0.0
        for s in range(n_states):
            best = NEG
            if k < k_info:
                for b in range(2):
                    c = par_out[b, s]
                    ns = next_state[b, s]
                    g = 0.5 * (1 - 2 * b) * (ls + la) + 0.5 * (1 - 2 * c) * lp
                    v = g + beta[k + 1, ns]
                    if v > best:
                        best = v
            else:
                b = term_in[s]
                c = par_out[b, s]
                ns = next_state[b, s]
                g = 0.5 * (1 - 2 * b) * ls + 0.5 * (1 - 2 * c) * lp
                v = g + beta[k + 1, ns]
                if v > best:
                    best = v
            beta[k, s] = best
        m = NEG
        for s in range(n_states):
            if beta[k, s] > m:
                m = beta[k, s]
        for s in range(n_states):
            if beta[k, s] > NEG * 0.5:
                beta[k, s] -= m

    for k in range(k_info):
        ls = lsys[k]
        lp = lpar[k]
        la = lapr[k]
        m0 = NEG
        m1 = NEG
        for s in range(n_states):
            a = alpha[k, s]
            if a <= NEG * 0.5:
                continue
            for b in range(2):
                c = par_out[b, s]
                ns = next_state[b, s]
                g = 0.5 * (1 - 2 * b) * (ls + la) + 0.5 * (1 - 2 * c) * lp
                v = a + g + beta[k + 1, ns]
                if b == 0:
                    if v > m0:
                        m0 = v
                else:
                    if v > m1:
                        m1 = v
        post[k] = m0 - m1


@njit
def rsc_encode_kernel(bits, next_state, par_out, term_in, parity, tail_sys, tail_par):
    """Systematic-convolutional parity plus the three termination bit pairs."""
    s = 0
    for k in range(bits.size):
        b = bits[k]
        parity[k] = par_out[b, s]
        s = next_state[b, s]
    for t in range(3):
        b = term_in[s]
        tail_sys[t] = b
        tail_par[t] = par_out[b, s]
        s = next_state[b, s]
    return s
