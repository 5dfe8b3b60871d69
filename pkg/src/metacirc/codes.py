"""Additive GF(4) codes derived from graphs, and their weight profiles.

The code of a graph is generated over F2 by the rows of the adjacency
matrix with the diagonal replaced by w.  Such codes are self-dual under the
trace inner product; this module checks that (with a certificate), splits
codes into even-weight and odd-weight classes, and computes minimum
distances and weight counts either exhaustively (Gray-code sweep, exact)
or by deterministic sampling (upper bounds, clearly labelled).
"""

from __future__ import annotations

import enum
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import numba

from . import enumeration
from .gf4 import GF4Vector
from .graphs import MetacirculantSpec, SimpleGraph

DEFAULT_EXHAUSTIVE_LIMIT = 40
EXHAUSTIVE_LIMIT_ENV = "METACIRC_EXHAUSTIVE_LIMIT"

EXACT = "exact"
SAMPLED = "upper_bound_sampled"
PARTIAL = "partial"


class ExhaustiveLimitError(ValueError):
    """Exhaustive enumeration was requested beyond the configured length cap."""


class BudgetExceededError(ValueError):
    """Exhaustive enumeration would exceed the caller's iteration budget."""


def exhaustive_limit() -> int:
    """Length cap for exact sweeps; override via METACIRC_EXHAUSTIVE_LIMIT."""
    raw = os.environ.get(EXHAUSTIVE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_EXHAUSTIVE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{EXHAUSTIVE_LIMIT_ENV} must be an integer, got {raw!r}") from None


class TypeClass(enum.Enum):
    """Self-dual codes are type II when every codeword weight is even."""

    I = "I"
    II = "II"

    def __str__(self) -> str:
        return f"Type {self.value}"


@dataclass(frozen=True)
class AdditiveCode:
    """n generators of length n whose 2^n F2 combinations form the code."""

    generators: tuple[GF4Vector, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("a code needs at least one generator")
        n = self.generators[0].n
        if any(g.n != n for g in self.generators):
            raise ValueError("generators must all have the same length")
        if len(self.generators) != n:
            raise ValueError(
                f"expected {n} generators for length {n}, got {len(self.generators)}")

    @property
    def n(self) -> int:
        return self.generators[0].n

    def planes(self) -> list[tuple[int, int]]:
        return [(g.a, g.b) for g in self.generators]

    def generator_rows(self) -> list[str]:
        return [g.to_symbols() for g in self.generators]


def graph_code(g: SimpleGraph) -> AdditiveCode:
    """Code generated by the graph's adjacency rows with w on the diagonal."""
    gens = tuple(GF4Vector(g.n, 1 << i, g.rows[i]) for i in range(g.n))
    return AdditiveCode(gens)


@dataclass(frozen=True)
class SelfDualityCertificate:
    """Outcome of the self-duality check with any violations spelled out."""

    n: int
    rank: int
    violating_pairs: tuple[tuple[int, int], ...]

    @property
    def is_self_dual(self) -> bool:
        return self.rank == self.n and not self.violating_pairs

    def __bool__(self) -> bool:
        return self.is_self_dual


def _f2_rank(vectors: list[int]) -> int:
    basis: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                rank += 1
                break
    return rank


def verify_self_dual(code: AdditiveCode) -> SelfDualityCertificate:
    """Check pairwise trace orthogonality and F2 independence of the generators.

    A length-n additive code is self-dual exactly when its n generators are
    independent over F2 and pairwise trace-orthogonal (self-orthogonality
    of single generators is automatic in characteristic 2 but checked
    anyway so a certificate never lies).
    """
    gens = code.generators
    bad = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            if gens[i].trace_inner(gens[j]) != 0:
                bad.append((i, j))
    n = code.n
    rank = _f2_rank([(g.a << n) | g.b for g in gens])
    return SelfDualityCertificate(n=n, rank=rank, violating_pairs=tuple(bad))


def type_class_from_degrees(g: SimpleGraph) -> TypeClass:
    """Even-weight class of a graph code: type II iff every degree is odd."""
    return TypeClass.II if all(d % 2 == 1 for d in g.degrees()) else TypeClass.I


def type_class_from_spec(spec: MetacirculantSpec) -> TypeClass:
    """Type of the bordered metacirculant code straight from the parameters.

    With D = |S0| + 1 for odd m and D = |S0| + |S_{m/2}| + 1 for even m, the
    bordered code is type II iff D and n = m * ell are both odd.
    """
    sizes = [len(s) for s in spec.s_sets]
    if spec.m % 2 == 0:
        delta = sizes[0] + sizes[spec.m // 2] + 1
    else:
        delta = sizes[0] + 1
    if delta % 2 == 1 and (spec.m * spec.ell) % 2 == 1:
        return TypeClass.II
    return TypeClass.I


@dataclass(frozen=True)
class WeightProfile:
    """Weight distribution of a code, with provenance.

    kind "exact" means counts cover every codeword (including the zero
    word) and min_weight is the true minimum distance.  "upper_bound_sampled"
    means min_weight only bounds the distance from above and counts are the
    observed sample histogram.  "partial" is an exact sweep that stopped
    early; counts cover the enumerated prefix only.
    """

    n: int
    kind: str
    counts: dict[int, int]
    min_weight: int
    samples: Optional[int] = None
    seed: Optional[int] = None
    exhausted: bool = False
    runtime: Optional[float] = field(default=None, compare=False)

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def count_at(self, w: int) -> int:
        return self.counts.get(w, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def to_json_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "schema": 1,
            "n": self.n,
            "kind": self.kind,
            "d": self.min_weight,
            "counts": {str(w): c for w, c in sorted(self.counts.items())},
        }
        if self.samples is not None:
            out["samples"] = self.samples
        if self.seed is not None:
            out["seed"] = self.seed
        if self.exhausted:
            out["exhausted"] = True
        if include_runtime and self.runtime is not None:
            out["runtime"] = self.runtime
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeightProfile":
        return cls(
            n=int(data["n"]),
            kind=str(data["kind"]),
            counts={int(w): int(c) for w, c in data["counts"].items()},
            min_weight=int(data["d"]),
            samples=data.get("samples"),
            seed=data.get("seed"),
            exhausted=bool(data.get("exhausted", False)),
            runtime=data.get("runtime"),
        )


def _apply_threads(threads: Optional[int]) -> None:
    if threads is not None:
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def _counts_to_dict(counts, include_zero_word: bool) -> dict[int, int]:
    out = {w: int(c) for w, c in enumerate(counts) if c}
    if include_zero_word:
        out[0] = out.get(0, 0) + 1
    return out


_PROFILE_CACHE: dict[AdditiveCode, WeightProfile] = {}


def exact_weight_profile(code: AdditiveCode, budget: Optional[int] = None,
                         threads: Optional[int] = None, parts: int = 64,
                         use_cache: bool = True) -> WeightProfile:
    """Full weight distribution by Gray-code sweep over all 2^n - 1 states.

    Refuses lengths above the exhaustive limit and sweeps larger than the
    given iteration budget; never returns a partial result.
    """
    if use_cache and code in _PROFILE_CACHE:
        return _PROFILE_CACHE[code]
    n = code.n
    limit = exhaustive_limit()
    if n > limit:
        raise ExhaustiveLimitError(
            f"n = {n} exceeds the exhaustive limit {limit} "
            f"(override with {EXHAUSTIVE_LIMIT_ENV} or use the sampled engine)")
    if n > enumeration.MAX_SWEEP_BITS:
        raise ExhaustiveLimitError(
            f"n = {n} exceeds the single-word sweep ceiling {enumeration.MAX_SWEEP_BITS}")
    states = (1 << n) - 1
    if budget is not None and states > budget:
        raise BudgetExceededError(
            f"2^{n} - 1 = {states} codeword states exceed the budget of {budget} iterations")
    _apply_threads(threads)
    t0 = time.perf_counter()
    counts = enumeration.sweep_weight_counts(code.planes(), n, parts=parts)
    runtime = time.perf_counter() - t0
    cdict = _counts_to_dict(counts, include_zero_word=True)
    min_w = min(w for w in cdict if w > 0)
    profile = WeightProfile(n=n, kind=EXACT, counts=cdict, min_weight=min_w,
                            runtime=runtime)
    if use_cache:
        _PROFILE_CACHE[code] = profile
    return profile


def profile_with_floor(code: AdditiveCode, floor: int) -> WeightProfile:
    """Exact sweep that gives up as soon as a weight below `floor` appears.

    Returns an exact profile when no such codeword exists, otherwise a
    partial profile whose min_weight already witnesses distance < floor.
    """
    n = code.n
    limit = exhaustive_limit()
    if n > limit:
        raise ExhaustiveLimitError(
            f"n = {n} exceeds the exhaustive limit {limit}")
    t0 = time.perf_counter()
    counts, min_w, completed = enumeration.sweep_with_floor(code.planes(), n, floor)
    runtime = time.perf_counter() - t0
    if completed:
        cdict = _counts_to_dict(counts, include_zero_word=True)
        return WeightProfile(n=n, kind=EXACT, counts=cdict, min_weight=min_w,
                             runtime=runtime)
    cdict = _counts_to_dict(counts, include_zero_word=False)
    return WeightProfile(n=n, kind=PARTIAL, counts=cdict, min_weight=min_w,
                         runtime=runtime)


def weight_count_at(code: AdditiveCode, w: int, budget: Optional[int] = None,
                    threads: Optional[int] = None) -> int:
    """Number of codewords of weight w, from the (cached) exact sweep."""
    return exact_weight_profile(code, budget=budget, threads=threads).count_at(w)


def sampled_weight_bound(code: AdditiveCode, samples: int, seed: int) -> WeightProfile:
    """Upper bound on the minimum distance from cheap combinations plus sampling.

    Takes the minimum over every 1-, 2- and 3-generator combination and
    `samples` deterministic random combinations.  When the sample budget
    covers the whole nonzero code (and the length permits), the sweep runs
    exhaustively instead and the bound is the exact distance (flagged via
    ``exhausted``); the kind stays "upper_bound_sampled" either way.
    """
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    n = code.n
    planes = code.planes()
    t0 = time.perf_counter()
    if n <= enumeration.MAX_SWEEP_BITS and samples >= (1 << n) - 1:
        counts = enumeration.sweep_weight_counts(planes, n)
        cdict = _counts_to_dict(counts, include_zero_word=False)
        min_w = min(cdict)
        return WeightProfile(n=n, kind=SAMPLED, counts=cdict, min_weight=min_w,
                             samples=samples, seed=seed, exhausted=True,
                             runtime=time.perf_counter() - t0)
    combo = enumeration.few_generator_min_weight(planes, n)
    counts, sample_min = enumeration.sampled_weight_counts(planes, n, seed, samples)
    cdict = _counts_to_dict(counts, include_zero_word=False)
    return WeightProfile(n=n, kind=SAMPLED, counts=cdict,
                         min_weight=min(combo, sample_min),
                         samples=samples, seed=seed,
                         runtime=time.perf_counter() - t0)


@dataclass(frozen=True)
class InequivalenceWitness:
    """Proof that two codes are inequivalent: an invariant that differs."""

    invariant: str  # "length" or "weight_count"
    weight: Optional[int]
    left: int
    right: int

    def describe(self) -> str:
        if self.invariant == "length":
            return f"lengths differ: {self.left} != {self.right}"
        return f"A_{self.weight} differs: {self.left} != {self.right}"


def inequivalence_witness(a: WeightProfile, b: WeightProfile) -> Optional[InequivalenceWitness]:
    """Witness of inequivalence from exact weight profiles, or None.

    Equal enumerators are inconclusive (the enumerator is an equivalence
    invariant, not a complete one).
    """
    if a.n != b.n:
        return InequivalenceWitness(invariant="length", weight=None, left=a.n, right=b.n)
    if a.kind != EXACT or b.kind != EXACT:
        raise ValueError(
            f"inequivalence needs exact profiles, got kinds {a.kind!r} and {b.kind!r}")
    for w in sorted(set(a.counts) | set(b.counts)):
        ca, cb = a.count_at(w), b.count_at(w)
        if ca != cb:
            return InequivalenceWitness(invariant="weight_count", weight=w, left=ca, right=cb)
    return None
