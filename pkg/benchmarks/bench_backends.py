"""Compare the compiled kernels against their interpreted numpy fallbacks.

Run with the default backend (numba). Each kernel is timed on a
campaign-realistic workload; the fallback executes the identical source
through ``fn.py_func``. Usage:

    python benchmarks/bench_backends.py [--frames N]
"""

import argparse
import time

import numpy as np

from fecbench._accel import BACKEND, USE_NUMBA
from fecbench.core import ChannelSpec, RngStream, awgn_transmit, bpsk_modulate
from fecbench.ldpc import LAYERED_OMS, LdpcDecoderConfig, expand, load_matrix
from fecbench.polar import kernels as pk
from fecbench.polar import make_code, polar_encode
from fecbench.recipes import asset_root
from fecbench.turbo import NEXT_STATE, PAR_OUT, TERM_IN
from fecbench.turbo import kernels as tk


def timed(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def bench(name, make_call, compiled, fallback, reps, fallback_reps):
    make_call(compiled)()  # warm-up / JIT
    t_c = timed(make_call(compiled), reps)
    t_f = timed(make_call(fallback), fallback_reps)
    print(f"{name:34s} numba {t_c * 1e3:9.3f} ms   numpy {t_f * 1e3:9.3f} ms   x{t_f / t_c:8.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=20)
    args = ap.parse_args()

    if not USE_NUMBA:
        raise SystemExit(
            "benchmark needs the compiled backend; unset FECBENCH_BACKEND "
            f"(current backend: {BACKEND})"
        )
    print(f"backend: {BACKEND}; reps: {args.reps}\n")

    # successive decoding, N=4096
    code = make_code(n=12, k_payload=2048, design_snr_db=1.0, trials=20_000, seed=1)
    N = code.N
    chan = ChannelSpec(2.0, 0.5)
    gen = RngStream(1, 0).generator()
    pay = gen.integers(0, 2, 2048).astype(np.uint8)
    llr = awgn_transmit(bpsk_modulate(polar_encode(code, pay)), chan, gen)
    buf = np.zeros(2 * N - 1)
    ps = np.zeros(N - 1, dtype=np.uint8)
    img = np.zeros(2 * N - 1, dtype=np.uint8)
    u = np.zeros(N, dtype=np.uint8)

    def sc_call(fn):
        return lambda: fn(llr, code.frozen_mask, False, buf, ps, img, u)

    bench("sc_decode N=4096", sc_call, pk.sc_decode_kernel, pk.sc_decode_kernel.py_func,
          args.reps, 1)

    # list decoding, N=1024 L=8
    code_l = make_code(n=10, k_payload=512, design_snr_db=1.0, crc=True, trials=20_000, seed=1)
    Nl, L = code_l.N, 8
    llr_l = awgn_transmit(
        bpsk_modulate(polar_encode(code_l, gen.integers(0, 2, 512).astype(np.uint8))), chan, gen
    )
    lb = np.zeros((L, 2 * Nl - 1))
    lps = np.zeros((L, Nl - 1), dtype=np.uint8)
    limg = np.zeros((L, 2 * Nl - 1), dtype=np.uint8)
    lu = np.zeros((L, Nl), dtype=np.uint8)
    lpm = np.zeros(L)
    lcand = np.zeros(2 * L)
    lk0 = np.zeros(L, dtype=np.uint8)
    lk1 = np.zeros(L, dtype=np.uint8)
    lfree = np.zeros(L, dtype=np.int64)

    def scl_call(fn):
        return lambda: fn(llr_l, code_l.frozen_mask, L, False, lb, lps, limg, lu, lpm,
                          lcand, lk0, lk1, lfree)

    bench("scl_decode N=1024 L=8", scl_call, pk.scl_decode_kernel,
          pk.scl_decode_kernel.py_func, args.reps, 1)

    # iterative graph decoding, N=1024 I=10
    nb = code_l.n
    lmsg = np.zeros((nb + 1, Nl))
    rmsg = np.zeros((nb + 1, Nl))
    ub = np.zeros(Nl, dtype=np.uint8)
    xb = np.zeros(Nl, dtype=np.uint8)
    sb = np.zeros(Nl, dtype=np.uint8)

    def bp_call(fn):
        return lambda: fn(llr_l, code_l.frozen_mask, 10, False, False, lmsg, rmsg, ub, xb, sb)

    bench("bp_decode N=1024 I=10", bp_call, pk.bp_decode_kernel,
          pk.bp_decode_kernel.py_func, args.reps, 1)

    # layered min-sum on the N=1944 matrix
    from fecbench.ldpc import kernels as lk

    qc = load_matrix(asset_root() / "ldpc/80211n_r12_z81.txt", "base-exponent-text")
    H = expand(qc)
    llr_h = awgn_transmit(np.ones(H.n_cols), ChannelSpec(2.0, 0.5), gen)
    q = np.zeros(H.n_cols)
    rm = np.zeros(H.n_edges)
    hard = np.zeros(H.n_cols, dtype=np.uint8)

    def oms_call(fn):
        return lambda: fn(llr_h, H.row_ptr, H.col_idx, H.layer_ptr, 12, 0.5, False, q, rm, hard)

    bench("layered_oms N=1944 I=12", oms_call, lk.layered_oms_kernel,
          lk.layered_oms_kernel.py_func, args.reps, 1)

    # max-log trellis pass, K=6144
    k = 6144
    lsys = gen.normal(scale=2.0, size=k + 3)
    lpar = gen.normal(scale=2.0, size=k + 3)
    lapr = np.zeros(k)
    alpha = np.zeros((k + 4, 8))
    beta = np.zeros((k + 4, 8))
    post = np.zeros(k)

    def bcjr_call(fn):
        return lambda: fn(lsys, lpar, lapr, k, NEXT_STATE, PAR_OUT, TERM_IN, alpha, beta, post)

    bench("maxlog_bcjr K=6144", bcjr_call, tk.maxlog_bcjr_kernel,
          tk.maxlog_bcjr_kernel.py_func, args.reps, 1)


if __name__ == "__main__":
    main()
