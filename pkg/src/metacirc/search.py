"""Seeded randomized search for high-distance bordered metacirculant codes.

Candidate parameter sets are sampled so that the closure conditions hold by
construction: every connection set is grown as an orbit closure of random
seed elements, so no draw is wasted on invalid candidates.  Each trial's
randomness derives from (seed, trial index) alone, which makes runs
bit-reproducible, resumable from checkpoints, and safely parallelizable
over trials.

A cheap screen rejects candidates whose one-, two- or three-generator
combinations are already lighter than the filter weight (such combinations
are codewords, so this never rejects a candidate whose true distance
clears the filter).  Survivors get the configured distance engine: the
exact engine sweeps with an early abort below the filter weight, the
sampled engine produces clearly-labelled upper bounds.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from . import formats
from .codes import (
    EXACT,
    SAMPLED,
    WeightProfile,
    exhaustive_limit,
    graph_code,
    profile_with_floor,
    sampled_weight_bound,
)
from .enumeration import few_generator_min_weight, splitmix64
from .graphs import MetacirculantSpec, border, build_metacirculant

log = logging.getLogger(__name__)

CHECKPOINT_MAGIC = "# metacirc search checkpoint v1"


class CheckpointError(RuntimeError):
    """Checkpoint could not be written or read; partial results attached."""

    def __init__(self, message: str, records: Optional[list] = None):
        self.records = records or []
        super().__init__(message)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run; the whole config is fingerprinted."""

    n: int  # target code length (bordered: graph has n - 1 vertices)
    trials: int
    seed: int
    bordered: bool = True
    factorizations: Optional[tuple[tuple[int, int], ...]] = None
    alpha_policy: str = "random"  # "random" or "all"
    density: tuple[float, float] = (0.2, 0.6)
    filter_weight: int = 1
    engine: str = EXACT  # "exact" or "upper_bound_sampled"
    samples: int = 10_000  # sampled engine budget per candidate
    top_k: int = 10
    checkpoint_every: int = 1000

    def graph_order(self) -> int:
        return self.n - 1 if self.bordered else self.n

    def resolved_factorizations(self) -> tuple[tuple[int, int], ...]:
        if self.factorizations is not None:
            return self.factorizations
        v = self.graph_order()
        pairs = [(m, v // m) for m in range(1, v + 1) if v % m == 0]
        return tuple(sorted(pairs))

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError(f"target length must be at least 2, got {self.n}")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.alpha_policy not in ("random", "all"):
            raise ValueError(f"unknown alpha policy {self.alpha_policy!r}")
        if self.engine not in (EXACT, SAMPLED):
            raise ValueError(f"unknown distance engine {self.engine!r}")
        lo, hi = self.density
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError(f"density range must satisfy 0 <= lo <= hi <= 1, got {self.density}")
        v = self.graph_order()
        for m, ell in self.resolved_factorizations():
            if m * ell != v:
                raise ValueError(f"factorization {m}x{ell} does not multiply to {v}")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "bordered": self.bordered,
            "factorizations": [list(p) for p in self.resolved_factorizations()],
            "alpha_policy": self.alpha_policy,
            "density": list(self.density),
            "filter_weight": self.filter_weight,
            "engine": self.engine,
            "samples": self.samples,
            "top_k": self.top_k,
            "checkpoint_every": self.checkpoint_every,
        }

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def parse_search_config(text: str) -> SearchConfig:
    """Parse a key = value search config file."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise formats.ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    try:
        n = int(values.pop("n"))
        trials = int(values.pop("trials"))
        seed = int(values.pop("seed"))
    except KeyError as exc:
        raise formats.ParseError(f"missing required key {exc.args[0]!r}") from None
    cfg = SearchConfig(n=n, trials=trials, seed=seed)
    if "bordered" in values:
        cfg = replace(cfg, bordered=values.pop("bordered").lower() in ("1", "true", "yes"))
    if "factorizations" in values:
        pairs = []
        for tok in values.pop("factorizations").split():
            m_str, _, ell_str = tok.partition("x")
            pairs.append((int(m_str), int(ell_str)))
        cfg = replace(cfg, factorizations=tuple(pairs))
    if "alpha_policy" in values:
        cfg = replace(cfg, alpha_policy=values.pop("alpha_policy"))
    if "density" in values:
        lo, hi = (float(x) for x in values.pop("density").split())
        cfg = replace(cfg, density=(lo, hi))
    if "filter_weight" in values:
        cfg = replace(cfg, filter_weight=int(values.pop("filter_weight")))
    if "engine" in values:
        engine = values.pop("engine")
        cfg = replace(cfg, engine={"exact": EXACT, "sampled": SAMPLED}.get(engine, engine))
    if "samples" in values:
        cfg = replace(cfg, samples=int(values.pop("samples")))
    if "top_k" in values:
        cfg = replace(cfg, top_k=int(values.pop("top_k")))
    if "checkpoint_every" in values:
        cfg = replace(cfg, checkpoint_every=int(values.pop("checkpoint_every")))
    if values:
        raise formats.ParseError(f"unknown keys: {', '.join(sorted(values))}")
    cfg.validate()
    return cfg


def format_search_config(cfg: SearchConfig) -> str:
    d = cfg.to_json_dict()
    lines = [
        f"n = {d['n']}",
        f"trials = {d['trials']}",
        f"seed = {d['seed']}",
        f"bordered = {str(d['bordered']).lower()}",
        "factorizations = " + " ".join(f"{m}x{ell}" for m, ell in d["factorizations"]),
        f"alpha_policy = {d['alpha_policy']}",
        f"density = {d['density'][0]} {d['density'][1]}",
        f"filter_weight = {d['filter_weight']}",
        f"engine = {'sampled' if d['engine'] == SAMPLED else 'exact'}",
        f"samples = {d['samples']}",
        f"top_k = {d['top_k']}",
        f"checkpoint_every = {d['checkpoint_every']}",
    ]
    return "\n".join(lines) + "\n"


# -- deterministic per-trial randomness ----------------------------------------

_MASK64 = (1 << 64) - 1


class _TrialRng:
    """Tiny deterministic PRNG: splitmix64 in counter mode, keyed per trial."""

    def __init__(self, seed: int, trial: int, stream: int = 0):
        base = (seed * 0x9E3779B97F4A7C15 + trial * 0xC2B2AE3D27D4EB4F + stream) & _MASK64
        self._key = np.uint64(base)
        self._counter = 0

    def next_u64(self) -> int:
        value = int(splitmix64(self._key + np.uint64(self._counter)))
        self._counter += 1
        return value

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * (self.next_u64() / 2**64)


def orbit_closure(seed_elements: Iterable[int], multiplier: int, ell: int,
                  negate: bool = False) -> frozenset[int]:
    """Smallest superset closed under x -> multiplier*x (negated if asked).

    Closing under x -> -multiplier*x also forces closure under the square
    multiplier^2, which is how half-block connection sets pick up both of
    their closure conditions at once.
    """
    if ell < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(multiplier % ell if ell > 1 else 0, ell) != 1:
        raise ValueError(f"multiplier {multiplier} is not a unit modulo {ell}")
    step = (-multiplier) % ell if negate else multiplier % ell
    out: set[int] = set()
    for x in seed_elements:
        x %= ell
        while x not in out:
            out.add(x)
            x = (x * step) % ell
    return frozenset(out)


def sample_spec(cfg: SearchConfig, trial: int) -> MetacirculantSpec:
    """Deterministic valid candidate for (cfg.seed, trial).

    Sets are grown by unioning orbit closures of random elements until the
    density target is met, so conditions on S0, the middle set and the rest
    hold by construction.
    """
    rng = _TrialRng(cfg.seed, trial)
    m, ell = rng.choice(cfg.resolved_factorizations())
    units = [u for u in range(1, ell) if math.gcd(u, ell) == 1] or [0]
    if cfg.alpha_policy == "all":
        alpha = units[trial % len(units)]
    else:
        alpha = rng.choice(units)
    lo, hi = cfg.density
    s_sets: list[frozenset[int]] = []
    for k in range(m // 2 + 1):
        target = round(rng.uniform(lo, hi) * ell)
        if k == 0:
            pool = list(range(1, ell))
            mult, negate = 1, True
        elif m % 2 == 0 and k == m // 2:
            pool = list(range(ell))
            mult, negate = pow(alpha, m // 2, ell), True
        else:
            pool = list(range(ell))
            mult, negate = pow(alpha, m, ell), False
        chosen: set[int] = set()
        while len(chosen) < target and len(chosen) < len(pool):
            x = rng.choice(pool)
            if x in chosen:
                continue
            closed = orbit_closure([x], mult, ell, negate=negate)
            if k == 0 and 0 in closed:
                log.debug("trial %d: dropping 0 from S0 closure", trial)
                closed -= {0}
            chosen |= closed
        s_sets.append(frozenset(chosen))
    return MetacirculantSpec(m, ell, alpha, tuple(s_sets))


# -- evaluation ----------------------------------------------------------------

@dataclass(frozen=True)
class Rejection:
    """Why a candidate was dropped before ranking."""

    reason: str  # "filter", "exhaustive limit", "invalid spec"
    detail: str = ""


@dataclass(frozen=True)
class SearchRecord:
    """A surviving candidate with its distance result and ranking key.

    The wall-clock timestamp is informational only and deliberately left
    out of serialized artifacts so that identical runs produce identical
    bytes.
    """

    spec: MetacirculantSpec
    profile: WeightProfile
    trial: int
    timestamp: float = field(compare=False, default=0.0)

    @property
    def distance(self) -> int:
        return self.profile.min_weight

    def rank_key(self) -> tuple:
        # Higher distance first, then fewer minimum-weight words, then the
        # lexicographically smallest parameter set.
        return (-self.profile.min_weight,
                self.profile.count_at(self.profile.min_weight),
                self.spec.sort_key())

    def to_json_dict(self) -> dict:
        return {
            "trial": self.trial,
            "spec": formats.spec_to_json_dict(self.spec),
            "profile": self.profile.to_json_dict(include_runtime=False),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SearchRecord":
        return cls(
            spec=formats.spec_from_json_dict(data["spec"]),
            profile=WeightProfile.from_json_dict(data["profile"]),
            trial=int(data["trial"]),
        )


def evaluate(spec: MetacirculantSpec, cfg: SearchConfig,
             trial: int = 0) -> Union[SearchRecord, Rejection]:
    """Screen one candidate and, if it survives, measure its distance."""
    violations = spec.violations()
    if violations:
        return Rejection("invalid spec", "; ".join(violations))
    g = build_metacirculant(spec)
    if cfg.bordered:
        g = border(g)
    code = graph_code(g)
    bound = few_generator_min_weight(code.planes(), code.n)
    if bound < cfg.filter_weight:
        return Rejection("filter", f"a few-generator combination has weight {bound}")
    if cfg.engine == EXACT:
        if code.n > exhaustive_limit():
            return Rejection("exhaustive limit",
                             f"n = {code.n} exceeds the exhaustive limit {exhaustive_limit()}")
        profile = profile_with_floor(code, cfg.filter_weight)
        if profile.kind != EXACT:
            return Rejection("filter",
                             f"sweep found a codeword of weight {profile.min_weight}")
    else:
        profile = sampled_weight_bound(code, cfg.samples,
                                       seed=_TrialRng(cfg.seed, trial, stream=1).next_u64())
        if profile.min_weight < cfg.filter_weight:
            return Rejection("filter",
                             f"sampling found a codeword of weight {profile.min_weight}")
    return SearchRecord(spec=spec, profile=profile, trial=trial, timestamp=time.time())


def _merge_top(records: list[SearchRecord], new: SearchRecord, top_k: int) -> list[SearchRecord]:
    if any(r.spec == new.spec for r in records):
        return records
    records = sorted(records + [new], key=SearchRecord.rank_key)
    return records[:top_k]


def write_checkpoint(path: Union[str, Path], cfg: SearchConfig, next_trial: int,
                     records: list[SearchRecord]) -> None:
    lines = [CHECKPOINT_MAGIC,
             f"fingerprint = {cfg.fingerprint()}",
             f"next_trial = {next_trial}"]
    for rec in records:
        lines.append(json.dumps(rec.to_json_dict(), sort_keys=True))
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise CheckpointError(f"cannot write checkpoint {path}: {exc}", records) from exc


def read_checkpoint(path: Union[str, Path], cfg: SearchConfig) -> tuple[int, list[SearchRecord]]:
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CHECKPOINT_MAGIC:
        raise CheckpointError(f"{path} is not a search checkpoint")
    header = dict(ln.partition(" = ")[::2] for ln in lines[1:3])
    if header.get("fingerprint") != cfg.fingerprint():
        raise CheckpointError(
            f"checkpoint {path} belongs to a different search config "
            f"(fingerprint {header.get('fingerprint')} != {cfg.fingerprint()})")
    next_trial = int(header["next_trial"])
    records = [SearchRecord.from_json_dict(json.loads(ln)) for ln in lines[3:]]
    return next_trial, records


def run_search(cfg: SearchConfig, checkpoint_path: Optional[Union[str, Path]] = None,
               resume: bool = False, progress_every: int = 0) -> list[SearchRecord]:
    """Run the configured number of trials and return the ranked top-K.

    Trials are independent (randomness is keyed by trial index), so this
    loop could fan out over workers; records merge by their total ranking
    order either way.  A resumable checkpoint is written every
    ``cfg.checkpoint_every`` trials when a path is given.
    """
    cfg.validate()
    start = 0
    best: list[SearchRecord] = []
    if resume:
        if checkpoint_path is None:
            raise ValueError("resume requested but no checkpoint path given")
        start, best = read_checkpoint(checkpoint_path, cfg)
        log.info("resuming at trial %d with %d records", start, len(best))
    rejections: dict[str, int] = {}
    for trial in range(start, cfg.trials):
        spec = sample_spec(cfg, trial)
        outcome = evaluate(spec, cfg, trial)
        if isinstance(outcome, Rejection):
            rejections[outcome.reason] = rejections.get(outcome.reason, 0) + 1
        else:
            best = _merge_top(best, outcome, cfg.top_k)
            log.info("trial %d: kept %s with d=%d (%s)", trial, spec,
                     outcome.distance, outcome.profile.kind)
        done = trial + 1
        if progress_every and done % progress_every == 0:
            log.info("progress: %d/%d trials, %d kept, rejections %s",
                     done, cfg.trials, len(best), rejections)
        if checkpoint_path is not None and cfg.checkpoint_every > 0 \
                and done % cfg.checkpoint_every == 0:
            write_checkpoint(checkpoint_path, cfg, done, best)
    if checkpoint_path is not None:
        write_checkpoint(checkpoint_path, cfg, cfg.trials, best)
    log.info("search done: %d kept, rejections %s", len(best), rejections)
    return best


def write_results_jsonl(path: Union[str, Path], records: list[SearchRecord]) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json_dict(), sort_keys=True) + "\n")
