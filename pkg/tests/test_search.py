import json

import pytest

from metacirc.codes import EXACT, SAMPLED, exact_weight_profile, graph_code
from metacirc.formats import ParseError
from metacirc.graphs import MetacirculantSpec, border, build_metacirculant
from metacirc.search import (
    CheckpointError,
    Rejection,
    SearchConfig,
    SearchRecord,
    evaluate,
    format_search_config,
    orbit_closure,
    parse_search_config,
    read_checkpoint,
    run_search,
    sample_spec,
    write_checkpoint,
)

G28_SPEC = MetacirculantSpec.make(2, 14, 13, {5, 6, 8, 9}, {0, 1, 3, 6, 7, 9, 11})


class TestOrbitClosure:
    def test_identity_multiplier(self):
        assert orbit_closure({1}, 1, 14) == {1}

    def test_negation_closure(self):
        assert orbit_closure({5}, 1, 14, negate=True) == {5, 9}

    def test_half_block_closure(self):
        # multiplier 5^5 mod 8 = 5, negated map x -> 3x mod 8
        closed = orbit_closure({2}, 5, 8, negate=True)
        assert {2, 6} <= closed
        # closure under the negated map implies closure under its square
        assert {(25 * x) % 8 for x in closed} == set(closed)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError, match="unit"):
            orbit_closure({1}, 2, 8)

    def test_closure_is_minimal_superset(self):
        s = orbit_closure({3}, 3, 13)
        assert 3 in s
        assert {(3 * x) % 13 for x in s} == set(s)


class TestSampleSpec:
    def test_deterministic(self):
        cfg = SearchConfig(n=29, trials=0, seed=99)
        assert sample_spec(cfg, 0) == sample_spec(cfg, 0)
        assert sample_spec(cfg, 0) != sample_spec(cfg, 1)

    def test_density_zero_gives_empty_sets(self):
        cfg = SearchConfig(n=29, trials=0, seed=5, density=(0.0, 0.0))
        spec = sample_spec(cfg, 3)
        assert all(len(s) == 0 for s in spec.s_sets)
        assert spec.is_valid()

    def test_ten_thousand_specs_all_valid(self):
        cfg = SearchConfig(n=29, trials=0, seed=1, factorizations=((2, 14),),
                           density=(0.0, 1.0))
        for t in range(10_000):
            spec = sample_spec(cfg, t)
            assert spec.violations() == [], str(spec)

    def test_all_factorizations_valid(self):
        cfg = SearchConfig(n=25, trials=0, seed=8, density=(0.0, 1.0))
        seen = set()
        for t in range(300):
            spec = sample_spec(cfg, t)
            assert spec.violations() == []
            seen.add((spec.m, spec.ell))
        assert len(seen) > 1

    def test_alpha_policy_all_cycles_units(self):
        cfg = SearchConfig(n=15, trials=0, seed=2, factorizations=((2, 7),),
                           alpha_policy="all")
        alphas = {sample_spec(cfg, t).alpha for t in range(12)}
        assert alphas == {1, 2, 3, 4, 5, 6}


class TestEvaluate:
    def test_g28_exact_record(self):
        cfg = SearchConfig(n=29, trials=0, seed=0, filter_weight=9)
        rec = evaluate(G28_SPEC, cfg, trial=0)
        assert isinstance(rec, SearchRecord)
        assert rec.distance == 10
        assert rec.profile.kind == EXACT

    def test_light_generator_rejected_by_filter(self):
        spec = MetacirculantSpec.make(1, 2, 1, {1})
        cfg = SearchConfig(n=3, trials=0, seed=0, filter_weight=5)
        out = evaluate(spec, cfg)
        assert isinstance(out, Rejection) and out.reason == "filter"

    def test_hexacode_survives_filter_four(self, hexacode_spec):
        cfg = SearchConfig(n=6, trials=0, seed=0, bordered=False, filter_weight=4)
        rec = evaluate(hexacode_spec, cfg)
        assert isinstance(rec, SearchRecord)
        assert rec.distance == 4

    def test_exhaustive_limit_rejection(self, monkeypatch):
        monkeypatch.setenv("METACIRC_EXHAUSTIVE_LIMIT", "10")
        cfg = SearchConfig(n=29, trials=0, seed=0, filter_weight=1)
        out = evaluate(G28_SPEC, cfg)
        assert isinstance(out, Rejection) and out.reason == "exhaustive limit"

    def test_sampled_engine_record(self):
        cfg = SearchConfig(n=29, trials=0, seed=0, filter_weight=5,
                           engine=SAMPLED, samples=500)
        rec = evaluate(G28_SPEC, cfg)
        assert isinstance(rec, SearchRecord)
        assert rec.profile.kind == SAMPLED
        assert rec.distance >= 10

    def test_filter_never_rejects_good_specs(self):
        # Any candidate whose true distance clears the filter must survive.
        cfg = SearchConfig(n=18, trials=0, seed=21, density=(0.1, 0.9))
        checked = 0
        for t in range(60):
            spec = sample_spec(cfg, t)
            code = graph_code(border(build_metacirculant(spec)))
            true_d = exact_weight_profile(code).min_weight
            fcfg = SearchConfig(n=18, trials=0, seed=21, filter_weight=true_d)
            out = evaluate(spec, fcfg, trial=t)
            assert isinstance(out, SearchRecord), str(spec)
            assert out.distance == true_d
            checked += 1
        assert checked == 60


class TestRunSearch:
    def test_zero_trials(self):
        cfg = SearchConfig(n=13, trials=0, seed=1)
        assert run_search(cfg) == []

    def test_deterministic_repeat(self):
        cfg = SearchConfig(n=13, trials=150, seed=4, filter_weight=3, top_k=5)
        a = run_search(cfg)
        b = run_search(cfg)
        assert [r.to_json_dict() for r in a] == [r.to_json_dict() for r in b]
        assert len(a) > 0

    def test_ranking_order(self):
        cfg = SearchConfig(n=13, trials=200, seed=4, filter_weight=3, top_k=8)
        records = run_search(cfg)
        keys = [r.rank_key() for r in records]
        assert keys == sorted(keys)
        distances = [r.distance for r in records]
        assert distances == sorted(distances, reverse=True)

    def test_resume_matches_uninterrupted(self, tmp_path):
        ckpt = tmp_path / "search.ckpt"
        cfg = SearchConfig(n=13, trials=120, seed=9, filter_weight=3,
                           top_k=4, checkpoint_every=50)
        full = run_search(cfg)
        # Emulate an interrupted run: trials share their randomness with the
        # full run, so a 50-trial prefix plus a checkpoint is exactly the
        # state the full run would have written mid-flight.
        prefix = run_search(SearchConfig(n=13, trials=50, seed=9,
                                         filter_weight=3, top_k=4))
        write_checkpoint(ckpt, cfg, 50, prefix)
        resumed = run_search(cfg, checkpoint_path=ckpt, resume=True)
        assert [r.to_json_dict() for r in resumed] == [r.to_json_dict() for r in full]

    def test_checkpoint_round_trip(self, tmp_path):
        ckpt = tmp_path / "s.ckpt"
        cfg = SearchConfig(n=13, trials=60, seed=2, filter_weight=3)
        records = run_search(cfg, checkpoint_path=ckpt)
        next_trial, loaded = read_checkpoint(ckpt, cfg)
        assert next_trial == 60
        assert [r.to_json_dict() for r in loaded] == [r.to_json_dict() for r in records]

    def test_checkpoint_fingerprint_guard(self, tmp_path):
        ckpt = tmp_path / "s.ckpt"
        cfg = SearchConfig(n=13, trials=30, seed=2, filter_weight=3)
        run_search(cfg, checkpoint_path=ckpt)
        other = SearchConfig(n=13, trials=30, seed=3, filter_weight=3)
        with pytest.raises(CheckpointError, match="different search config"):
            read_checkpoint(ckpt, other)

    def test_checkpoint_write_failure_preserves_records(self):
        cfg = SearchConfig(n=13, trials=40, seed=4, filter_weight=3,
                           checkpoint_every=20)
        with pytest.raises(CheckpointError) as exc:
            run_search(cfg, checkpoint_path="/nonexistent-dir/x.ckpt")
        assert isinstance(exc.value.records, list)


class TestConfigFiles:
    def test_round_trip(self):
        cfg = SearchConfig(n=29, trials=1000, seed=42, factorizations=((2, 14),),
                           density=(0.25, 0.55), filter_weight=9, top_k=3)
        assert parse_search_config(format_search_config(cfg)) == \
            SearchConfig(**{**cfg.__dict__, "factorizations": ((2, 14),)})

    def test_missing_required_key(self):
        with pytest.raises(ParseError, match="missing required key"):
            parse_search_config("n = 29\ntrials = 10\n")

    def test_unknown_key(self):
        with pytest.raises(ParseError, match="unknown keys"):
            parse_search_config("n = 29\ntrials = 10\nseed = 1\nwat = 2\n")

    def test_bad_factorization_rejected(self):
        with pytest.raises(ValueError, match="does not multiply"):
            parse_search_config(
                "n = 29\ntrials = 1\nseed = 1\nfactorizations = 3x5\n")


class TestRecordSerialization:
    def test_json_round_trip(self):
        cfg = SearchConfig(n=13, trials=0, seed=1, filter_weight=1)
        rec = evaluate(sample_spec(cfg, 0), cfg, trial=0)
        assert isinstance(rec, SearchRecord)
        blob = json.dumps(rec.to_json_dict(), sort_keys=True)
        back = SearchRecord.from_json_dict(json.loads(blob))
        assert back.spec == rec.spec
        assert back.profile == rec.profile
        assert back.trial == rec.trial
