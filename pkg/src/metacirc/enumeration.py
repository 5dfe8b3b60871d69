"""Bit-packed codeword enumeration kernels.

The exhaustive weight-profile sweep walks all 2^n - 1 nonzero F2
combinations of the generators in Gray-code order: one generator XOR and
one popcount per codeword.  popcount and count-trailing-zeros compile to
single machine instructions via LLVM intrinsics, so the inner loop is a
handful of instructions and a 2^29 sweep takes well under ten seconds on
one core.

The index space [1, 2^n) splits into contiguous ranges; each range seeds
its running codeword directly from the Gray code of its start index, so
ranges share nothing and the merged counts are identical for any range
count or thread count (integer addition is exact).

Lengths above 64 (sampling-only territory) use multi-word planes.
"""

from __future__ import annotations

import numpy as np
from llvmlite import ir
from numba import njit, prange, types
from numba.core import cgutils
from numba.extending import intrinsic

#: Hard ceiling for single-word exhaustive sweeps.
MAX_SWEEP_BITS = 63


@intrinsic
def popcount64(typingctx, x):
    """Population count of a uint64, lowered to llvm.ctpop (one instruction)."""
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        (val,) = args
        fn = builder.module.declare_intrinsic("llvm.ctpop", [ir.IntType(64)])
        return builder.call(fn, [val])

    return sig, codegen


@intrinsic
def cttz64(typingctx, x):
    """Count trailing zeros of a nonzero uint64, lowered to llvm.cttz."""
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        (val,) = args
        fnty = ir.FunctionType(ir.IntType(64), [ir.IntType(64), ir.IntType(1)])
        fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.cttz.i64")
        # Zero input would be undefined; callers only pass i >= 1.
        return builder.call(fn, [val, ir.Constant(ir.IntType(1), 1)])

    return sig, codegen


@njit(types.uint64(types.uint64), cache=True)
def splitmix64(x):
    """SplitMix64 mixer; the counter-mode source of all sampling randomness."""
    z = x + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(types.int64[:, :](types.uint64[:], types.uint64[:], types.int64, types.int64),
      parallel=True, cache=True)
def _sweep_counts(gen_a, gen_b, nbits, parts):
    """Weight counts over all nonzero combinations, split into `parts` ranges."""
    ngens = len(gen_a)
    total = np.int64(1) << np.int64(ngens)
    counts = np.zeros((parts, nbits + 1), dtype=np.int64)
    one = np.uint64(1)
    for p in prange(parts):
        start = np.int64(1) + (total - 1) * p // parts
        stop = np.int64(1) + (total - 1) * (p + 1) // parts
        if start >= stop:
            continue
        g = np.uint64(start) ^ (np.uint64(start) >> one)
        sa = np.uint64(0)
        sb = np.uint64(0)
        for j in range(ngens):
            if (g >> np.uint64(j)) & one:
                sa ^= gen_a[j]
                sb ^= gen_b[j]
        counts[p, popcount64(sa | sb)] += 1
        i = np.uint64(start)
        stop_u = np.uint64(stop)
        while True:
            i += one
            if i >= stop_u:
                break
            j = cttz64(i)
            sa ^= gen_a[j]
            sb ^= gen_b[j]
            counts[p, popcount64(sa | sb)] += 1
    return counts


@njit(types.Tuple((types.int64[:], types.int64, types.boolean))(
    types.uint64[:], types.uint64[:], types.int64, types.int64), cache=True)
def _sweep_counts_with_floor(gen_a, gen_b, nbits, floor):
    """Single-range sweep that stops once a nonzero weight below `floor` shows up.

    Returns (counts_so_far, min_weight_seen, completed).  With floor <= 1 the
    sweep always completes (weights are at least 1).
    """
    ngens = len(gen_a)
    total = np.uint64(1) << np.uint64(ngens)
    counts = np.zeros(nbits + 1, dtype=np.int64)
    one = np.uint64(1)
    floor_u = np.uint64(floor if floor > 0 else 0)
    min_w = np.uint64(nbits + 1)
    sa = np.uint64(0)
    sb = np.uint64(0)
    i = np.uint64(0)
    while True:
        i += one
        if i >= total:
            break
        j = cttz64(i)
        sa ^= gen_a[j]
        sb ^= gen_b[j]
        w = popcount64(sa | sb)
        counts[w] += 1
        if w < min_w:
            min_w = w
            if w < floor_u:
                return counts, np.int64(min_w), False
    return counts, np.int64(min_w), True


@njit(types.Tuple((types.int64[:], types.int64))(
    types.uint64[:, :], types.uint64[:, :], types.int64, types.uint64, types.int64),
    cache=True)
def _sampled_weights(gen_a, gen_b, nbits, seed, samples):
    """Histogram and minimum of `samples` random nonzero combinations.

    Sample t draws its coefficient bits from splitmix64 counters keyed by
    (seed, t) alone, so the result is independent of any batching.
    """
    ngens = gen_a.shape[0]
    nwords = gen_a.shape[1]
    ncoeff = (ngens + 63) // 64
    counts = np.zeros(nbits + 1, dtype=np.int64)
    coeff = np.empty(ncoeff, dtype=np.uint64)
    sa = np.empty(nwords, dtype=np.uint64)
    sb = np.empty(nwords, dtype=np.uint64)
    one = np.uint64(1)
    min_w = np.int64(nbits + 1)
    stride = np.uint64(ncoeff + 1)
    for t in range(samples):
        base = seed + np.uint64(t) * stride
        empty = True
        for c in range(ncoeff):
            word = splitmix64(base + np.uint64(c))
            if c == ncoeff - 1 and ngens % 64:
                word &= (one << np.uint64(ngens % 64)) - one
            coeff[c] = word
            if word != np.uint64(0):
                empty = False
        if empty:
            # All-zero draw would be the zero codeword; force one generator.
            coeff[0] = one
        for w in range(nwords):
            sa[w] = np.uint64(0)
            sb[w] = np.uint64(0)
        for j in range(ngens):
            if (coeff[j >> 6] >> np.uint64(j & 63)) & one:
                for w in range(nwords):
                    sa[w] ^= gen_a[j, w]
                    sb[w] ^= gen_b[j, w]
        wt = np.int64(0)
        for w in range(nwords):
            wt += np.int64(popcount64(sa[w] | sb[w]))
        counts[wt] += 1
        if wt < min_w:
            min_w = wt
    return counts, min_w


@njit(types.int64(types.uint64[:, :], types.uint64[:, :]), cache=True)
def _combo_min_weight(gen_a, gen_b):
    """Minimum weight over all combinations of one, two or three generators."""
    ngens = gen_a.shape[0]
    nwords = gen_a.shape[1]
    best = np.int64(64 * nwords + 1)
    for i in range(ngens):
        w1 = np.int64(0)
        for w in range(nwords):
            w1 += np.int64(popcount64(gen_a[i, w] | gen_b[i, w]))
        if w1 < best:
            best = w1
        for j in range(i + 1, ngens):
            w2 = np.int64(0)
            for w in range(nwords):
                a2 = gen_a[i, w] ^ gen_a[j, w]
                b2 = gen_b[i, w] ^ gen_b[j, w]
                w2 += np.int64(popcount64(a2 | b2))
            if w2 < best:
                best = w2
            for k in range(j + 1, ngens):
                w3 = np.int64(0)
                for w in range(nwords):
                    a3 = gen_a[i, w] ^ gen_a[j, w] ^ gen_a[k, w]
                    b3 = gen_b[i, w] ^ gen_b[j, w] ^ gen_b[k, w]
                    w3 += np.int64(popcount64(a3 | b3))
                if w3 < best:
                    best = w3
    return best


def gray_code(i: int) -> int:
    """Gray code of index i; combination enumerated at sweep step i."""
    return i ^ (i >> 1)


def pack_single_word(planes: list[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    """Pack (a, b) integer plane pairs into parallel uint64 arrays."""
    gen_a = np.array([a for a, _ in planes], dtype=np.uint64)
    gen_b = np.array([b for _, b in planes], dtype=np.uint64)
    return gen_a, gen_b


def pack_words(planes: list[tuple[int, int]], nbits: int) -> tuple[np.ndarray, np.ndarray]:
    """Pack plane pairs into (ngens, nwords) little-endian word arrays."""
    nwords = (nbits + 63) // 64
    ngens = len(planes)
    gen_a = np.zeros((ngens, nwords), dtype=np.uint64)
    gen_b = np.zeros((ngens, nwords), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, (a, b) in enumerate(planes):
        for w in range(nwords):
            gen_a[i, w] = (a >> (64 * w)) & mask
            gen_b[i, w] = (b >> (64 * w)) & mask
    return gen_a, gen_b


def sweep_weight_counts(planes: list[tuple[int, int]], nbits: int,
                        parts: int = 64) -> np.ndarray:
    """Exact weight counts of all nonzero combinations (zero word excluded)."""
    ngens = len(planes)
    if ngens > MAX_SWEEP_BITS:
        raise ValueError(f"exhaustive sweep supports at most {MAX_SWEEP_BITS} generators, got {ngens}")
    parts = max(1, min(parts, 1 << min(ngens, 16)))
    gen_a, gen_b = pack_single_word(planes)
    return _sweep_counts(gen_a, gen_b, nbits, parts).sum(axis=0)


def sweep_with_floor(planes: list[tuple[int, int]], nbits: int,
                     floor: int) -> tuple[np.ndarray, int, bool]:
    """Sweep aborting at the first nonzero weight below `floor`."""
    ngens = len(planes)
    if ngens > MAX_SWEEP_BITS:
        raise ValueError(f"exhaustive sweep supports at most {MAX_SWEEP_BITS} generators, got {ngens}")
    gen_a, gen_b = pack_single_word(planes)
    counts, min_w, completed = _sweep_counts_with_floor(gen_a, gen_b, nbits, floor)
    return counts, int(min_w), bool(completed)


def sampled_weight_counts(planes: list[tuple[int, int]], nbits: int, seed: int,
                          samples: int) -> tuple[np.ndarray, int]:
    """Histogram and minimum weight of deterministic random combinations."""
    gen_a, gen_b = pack_words(planes, nbits)
    counts, min_w = _sampled_weights(gen_a, gen_b, nbits,
                                     np.uint64(seed & ((1 << 64) - 1)), samples)
    return counts, int(min_w)


def few_generator_min_weight(planes: list[tuple[int, int]], nbits: int) -> int:
    """Minimum weight over all 1-, 2- and 3-generator combinations."""
    gen_a, gen_b = pack_words(planes, nbits)
    return int(_combo_min_weight(gen_a, gen_b))


def warm_up() -> None:
    """Compile (or load cached) kernels on a toy input."""
    planes = [(0b1, 0b0), (0b0, 0b10)]
    sweep_weight_counts(planes, 2, parts=2)
    sweep_with_floor(planes, 2, 0)
    sampled_weight_counts(planes, 2, seed=1, samples=4)
    few_generator_min_weight(planes, 2)
