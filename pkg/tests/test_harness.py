from __future__ import annotations

import pytest

from zsindex.enumgen import EnumFilter
from zsindex.harness import (
    DEFAULT_ORDER,
    STRATEGIES,
    VerificationReport,
    WaterfallConfig,
    brute_force_transcript,
    find_min_index_at_least,
    first_audit_moduli,
    lemma29_audit,
    run_strategy,
    sweep,
    verify_instance,
    verify_modulus,
)
from zsindex.canon import normalize
from zsindex.zseq import ResidueSeq
from conftest import FIXTURES


@pytest.mark.parametrize("n", sorted(FIXTURES))
def test_fixtures_verify(n):
    rec = verify_instance(ResidueSeq.of(n, FIXTURES[n]))
    assert rec.index == 1 and rec.pattern == "A1"
    assert rec.strategy == "Lemma22_1"
    assert rec.certificate.validate() and not rec.unsound
    assert rec.diagnostics["s"] == rec.normalized.s


def test_counterexample_flag():
    rec = verify_instance(ResidueSeq.of(6, (1, 3, 4, 4)))
    assert rec.index == 2 and rec.counterexample
    assert rec.strategy is None and rec.certificate is None


def test_verify_instance_rejects_non_minimal():
    with pytest.raises(ValueError):
        verify_instance(ResidueSeq.of(25, (5, 20, 3, 22)))


def test_single_strategy_order():
    S = ResidueSeq.of(1235, FIXTURES[1235])
    rec = verify_instance(S, WaterfallConfig(order=("Notice1",)))
    assert rec.strategy == "Notice1" and rec.certificate.kind == "three_n"
    rec = verify_instance(S, WaterfallConfig(order=()))
    assert rec.strategy == "OracleOnly"


def test_config_validation():
    with pytest.raises(ValueError):
        WaterfallConfig(order=("Nope",))
    with pytest.raises(ValueError):
        WaterfallConfig(notice_cap=0)


def test_run_strategy_without_normal_form():
    S = ResidueSeq.of(25, (1, 1, 1, 22))
    cert, note = run_strategy("Lemma22_1", S, normalize(S))
    assert cert is None and "no normal form" in note


def test_verify_modulus_totals():
    rep = verify_modulus(25)
    assert (rep.instances, rep.orbits) == (624, 32)
    assert sum(rep.index_histogram.values()) == rep.instances
    assert sum(rep.strategy_histogram.values()) == rep.orbits
    assert rep.violations == [] and rep.max_index == 1


def test_report_round_trip():
    rep = verify_modulus(35)
    d = rep.to_dict(timing=True)
    back = VerificationReport.from_dict(d)
    assert back == rep
    assert "elapsed_ms" not in rep.to_dict()


def test_sweep_off_hypothesis_has_violations():
    reports = sweep(8, 30, include_all_n=True)
    bad = [r.n for r in reports if r.violations]
    assert bad and all(r.max_index <= 2 for r in reports)
    for r in reports:
        for v in r.violations:
            assert v["kind"] == "index_ge_2"


def test_sweep_parallel_matches_serial():
    a = [r.to_dict() for r in sweep(5, 60)]
    b = [r.to_dict() for r in sweep(5, 60, jobs=3)]
    assert a == b


def test_sweep_filter_and_bounds():
    reports = sweep(100, 110, EnumFilter(pattern="TwoPrimeOrFewer"))
    assert [r.n for r in reports] == [101, 103, 107, 109]
    with pytest.raises(ValueError):
        sweep(4, 10)


def test_find_min_index():
    assert find_min_index_at_least(35, 2) is None
    assert find_min_index_at_least(6, 2).terms == (1, 3, 4, 4)
    for n in (8, 12, 20):
        assert find_min_index_at_least(n, 3) is None
    with pytest.raises(ValueError):
        find_min_index_at_least(8, 4)


def test_audit():
    assert first_audit_moduli(1000, 5) == [1001, 1015, 1045, 1085, 1105]
    r = lemma29_audit([1001])
    assert r.findings == [] and r.examined[1001] > 0
    assert lemma29_audit([]).findings == []
    with pytest.raises(ValueError):
        lemma29_audit([1003])  # 17 * 59


def test_transcript():
    t = brute_force_transcript(ResidueSeq.of(6, (1, 3, 4, 4)))
    assert t["index"] == 2 and len(t["proper_subset_sums"]) == 14
    assert all(s["sum_mod_n"] != 0 for s in t["proper_subset_sums"])
    assert [u["unit"] for u in t["units"]] == [1, 5]


def test_strategy_names():
    assert STRATEGIES[-1] == "OracleOnly" and "OracleOnly" not in DEFAULT_ORDER


def test_no_unsound_certificates_off_hypothesis():
    for r in sweep(5, 48, include_all_n=True):
        assert all(v["kind"] == "index_ge_2" for v in r.violations)
