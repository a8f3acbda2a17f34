"""End-to-end checks of the python bindings. Runnable directly or via pytest."""

import math

import abcmeta


def small_config(**kw):
    cfg = abcmeta.AbcConfig()
    cfg.n_simul = kw.get("n_simul", 2000)
    cfg.acceptance_pct = kw.get("acceptance_pct", 1.0)
    cfg.seed = kw.get("seed", 1234)
    cfg.chunk_size = kw.get("chunk_size", 500)
    cfg.threads = kw.get("threads", 0)
    return cfg


def test_parse_and_classify():
    s = abcmeta.parse_summary(n=500, q1=-1.4, median=-0.2, q3=0.95)
    assert s.scenario == abcmeta.Scenario.S2
    assert s.n == 500
    assert s.q1 == -1.4
    assert s.min is None
    assert not s.degenerate
    assert not abcmeta.required_positive(s)


def test_parse_errors_are_typed():
    try:
        abcmeta.parse_summary(n=2, min=1.0, median=2.0, max=3.0)
    except abcmeta.AbcmetaError as e:
        assert "BadSampleSize" in str(e)
    else:
        raise AssertionError("expected AbcmetaError")


def test_run_abc_normal():
    s = abcmeta.parse_summary(n=500, q1=-1.4, median=-0.2, q3=0.95)
    r = abcmeta.run_abc(s, abcmeta.DistributionSpec.normal(), small_config())
    assert r.family == abcmeta.Family.normal
    assert r.retained == 20
    assert -1.0 < r.est_mean < 0.6
    assert 0.5 < r.est_sd < 3.5
    assert r.selection_probability is None


def test_run_abc_is_deterministic():
    s = abcmeta.parse_summary(n=500, min=1.0, median=3.5, max=9.0)
    spec = abcmeta.DistributionSpec.weibull()
    a = abcmeta.run_abc(s, spec, small_config(threads=1))
    b = abcmeta.run_abc(s, spec, small_config(threads=4))
    assert a.est_mean == b.est_mean
    assert a.est_sd == b.est_sd


def test_selection_and_shift():
    raw = abcmeta.parse_summary(n=100, min=-9.65, median=-5.59, max=39.25)
    shifted = abcmeta.apply_shift(raw, 10.0)
    assert shifted.min == -9.65 + 10.0  # same rounding as the library
    r = abcmeta.run_selection(shifted, small_config(n_simul=4000))
    assert r.family in (
        abcmeta.Family.normal,
        abcmeta.Family.lognormal,
        abcmeta.Family.exponential,
        abcmeta.Family.weibull,
    )
    assert r.selection_probability is not None
    assert 0.0 < r.selection_probability <= 1.0
    back = abcmeta.unshift_result(r, 10.0)
    assert back.est_mean == r.est_mean - 10.0
    assert back.est_sd == r.est_sd


def test_summary_and_moments_of_sample():
    sample = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]
    five = abcmeta.summary_of(sample)
    assert five.min == 2.0
    assert five.max == 9.0
    mean, sd = abcmeta.moments_of(sample)
    assert mean == 5.0
    assert math.isclose(sd, math.sqrt(32.0 / 7.0), rel_tol=1e-12)


def test_study_seed_derivation():
    a = abcmeta.derive_study_seed(1234, "alpha")
    assert a == abcmeta.derive_study_seed(1234, "alpha")
    assert a != abcmeta.derive_study_seed(1234, "beta")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for fn in tests:
        fn()
        print(f"ok {fn.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
