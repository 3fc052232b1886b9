from fractions import Fraction

import pytest

from bipareto import (
    Front,
    GenSpec,
    ParetoPoint,
    desk_families,
    generate_instance,
    paper_families,
    quality_metrics,
    run_suite,
)
from bipareto import bench as bench_module
from bipareto.bench import (
    RECORDS_HEADER,
    format_fraction_decimal,
    format_p_range_table,
    format_records_csv,
    write_report,
)


def tiny_families(seed=5, count=4):
    return [GenSpec((3, 6), (1, 9), (1, 9), seed, count)]


def test_genspec_validation():
    with pytest.raises(ValueError, match="n range"):
        GenSpec((0, 5), (1, 9), (1, 9), 1, 1)
    with pytest.raises(ValueError, match="p range"):
        GenSpec((1, 5), (9, 1), (1, 9), 1, 1)
    with pytest.raises(ValueError, match="q range"):
        GenSpec((1, 5), (1, 9), (0, 9), 1, 1)
    with pytest.raises(ValueError, match="seed"):
        GenSpec((1, 5), (1, 9), (1, 9), -1, 1)
    with pytest.raises(ValueError, match="count"):
        GenSpec((1, 5), (1, 9), (1, 9), 1, 0)
    assert GenSpec((5, 25), (1, 20), (1, 20), 1, 1).family == "n5-25"


def test_generate_instance_is_deterministic():
    spec = GenSpec((5, 25), (1, 20), (1, 20), 7, 3)
    assert generate_instance(spec, 0) == generate_instance(spec, 0)
    assert generate_instance(spec, 1) == generate_instance(spec, 1)
    # distinct indices give distinct streams
    drawn = {generate_instance(spec, i) for i in range(6)}
    assert len(drawn) == 6
    with pytest.raises(ValueError, match="index"):
        generate_instance(spec, -1)


def test_generate_instance_respects_ranges():
    spec = GenSpec((5, 25), (1, 20), (1, 20), 11, 1)
    for index in range(50):
        inst = generate_instance(spec, index)
        assert 5 <= inst.n <= 25
        for job in inst.jobs:
            assert 1 <= job.p <= 20
            assert 1 <= job.q <= 20


def test_generate_instance_degenerate_ranges():
    spec = GenSpec((3, 3), (1, 1), (1, 1), 0, 1)
    inst = generate_instance(spec, 0)
    assert [(j.p, j.q) for j in inst.jobs] == [(1, 1)] * 3


def test_quality_metrics():
    exact = Front((ParetoPoint(5, 9), ParetoPoint(6, 7)))
    assert quality_metrics(exact, exact) == (Fraction(1), Fraction(1))
    assert quality_metrics(exact, Front((ParetoPoint(5, 9),))) == (
        Fraction(1),
        Fraction(9, 7),
    )
    with pytest.raises(ValueError, match="nonempty"):
        quality_metrics(exact, Front(()))


def test_run_suite_records():
    eps_list = [Fraction(3, 10), Fraction(9, 10)]
    records = run_suite(tiny_families(), eps_list, 1)
    assert len(records) == 4
    assert [r.index for r in records] == [0, 1, 2, 3]
    for record in records:
        assert record.error is None
        assert record.family == "n3-6"
        assert len(record.eps_results) == 2
        for res, eps in zip(record.eps_results, eps_list):
            assert res.eps == eps
            assert res.ratio_c <= 1 + eps
            assert res.ratio_l <= 1 + eps
    with pytest.raises(ValueError, match="repeats"):
        run_suite(tiny_families(), eps_list, 0)


def test_run_suite_is_deterministic_outside_timings():
    eps_list = [Fraction(3, 10)]
    a = run_suite(tiny_families(), eps_list, 1)
    b = run_suite(tiny_families(), eps_list, 1)
    strip = lambda r: (r.family, r.seed, r.index, r.n, r.dp_front_size, r.error,
                       [(e.eps, e.front_size, e.ratio_c, e.ratio_l) for e in r.eps_results])
    assert [strip(r) for r in a] == [strip(r) for r in b]


def test_run_suite_records_failures_and_continues(monkeypatch):
    calls = {"k": 0}
    real = bench_module.solve_exact

    def flaky(inst, **kwargs):
        calls["k"] += 1
        if calls["k"] == 1:
            raise RuntimeError("synthetic solver failure")
        return real(inst, **kwargs)

    monkeypatch.setattr(bench_module, "solve_exact", flaky)
    records = run_suite(tiny_families(count=3), [Fraction(3, 10)], 1)
    assert len(records) == 3
    assert records[0].error == "RuntimeError: synthetic solver failure"
    assert records[0].dp_front_size is None
    assert records[1].error is None and records[2].error is None


def test_records_csv_shape():
    records = run_suite(tiny_families(count=2), [Fraction(3, 10), Fraction(9, 10)], 1)
    text = format_records_csv(records)
    lines = text.splitlines()
    assert lines[0] == RECORDS_HEADER
    assert lines[0].startswith(
        "family,seed,index,n,p_lo,p_hi,q_lo,q_hi,dp_front,dp_ms,"
        "eps,fptas_front,fptas_ms,ratio_c,ratio_l"
    )
    assert len(lines) == 1 + 2 * 2  # one row per (instance, eps)
    width = len(RECORDS_HEADER.split(","))
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == width
        assert cells[10] in ("3/10", "9/10")
        eps = Fraction(cells[10])
        for exact_cell in (cells[15], cells[16]):
            num, den = exact_cell.split("/")
            assert Fraction(int(num), int(den)) <= 1 + eps


def test_failed_record_emits_blank_metric_columns():
    record = bench_module.RunRecord(
        family="n3-6", seed=5, index=0, n=4,
        p_range=(1, 9), q_range=(1, 9), error="RuntimeError: boom",
    )
    lines = format_records_csv([record]).splitlines()
    cells = lines[1].split(",")
    assert len(cells) == len(RECORDS_HEADER.split(","))
    assert cells[:8] == ["n3-6", "5", "0", "4", "1", "9", "1", "9"]
    assert all(cell == "" for cell in cells[8:])


def test_format_fraction_decimal():
    assert format_fraction_decimal(Fraction(1)) == "1.000000"
    assert format_fraction_decimal(Fraction(9, 7)) == "1.285714"
    assert format_fraction_decimal(Fraction(0)) == "0.000000"
    assert format_fraction_decimal(Fraction(25, 10**7)) == "0.000003"  # half rounds up
    with pytest.raises(ValueError):
        format_fraction_decimal(Fraction(-1))


def test_aggregate_table_groups_by_key():
    records = run_suite(
        [
            GenSpec((3, 5), (1, 9), (1, 9), 5, 2),
            GenSpec((3, 5), (1, 20), (1, 9), 5, 2),
        ],
        [Fraction(3, 10)],
        1,
    )
    lines = format_p_range_table(records).splitlines()
    assert lines[0].startswith("p_range,eps,instances,")
    assert [line.split(",")[:3] for line in lines[1:]] == [
        ["1-9", "3/10", "2"],
        ["1-20", "3/10", "2"],
    ]


def test_write_report(tmp_path):
    records = run_suite(tiny_families(count=2), [Fraction(3, 10)], 1)
    paths = write_report(records, tmp_path / "report")
    names = sorted(p.name for p in paths)
    assert names == ["by_family.csv", "by_p_range.csv", "by_q_range.csv", "records.csv"]
    for path in paths:
        assert path.read_text().endswith("\n")


def test_presets():
    desk = desk_families(1)
    assert len(desk) == 9
    assert sum(s.count for s in desk) == 108
    assert {s.n_range for s in desk} == {(5, 25)}
    paper = paper_families(1)
    assert len(paper) == 45
    assert sum(s.count for s in paper) == 675
    assert {s.n_range for s in paper} == {
        (5, 25), (26, 50), (51, 75), (76, 100), (100, 200)
    }
    for spec in desk + paper:
        assert spec.p_range in ((1, 20), (1, 100), (1, 1000))
        assert spec.q_range in ((1, 20), (1, 100), (1, 1000))
