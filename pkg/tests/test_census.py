"""Range scans: counts, records, checkpointing, CSV/list output."""

from __future__ import annotations

import json
import os

import pytest

from bpsw import census
from bpsw.census import (
    CSV_HEADER,
    DESK_SCALE_CEILING,
    first_k,
    method_comparison,
    overlap_report,
    scan_range,
    write_list_files,
)
from bpsw.fermat import is_epsp_condition, is_prp, is_sprp
from bpsw.kinds import CENSUS_KINDS
from bpsw.lucas import euler_q_check, is_slprp, is_vprp, ladder_with_half, lucas_ladder
from bpsw.params import select_params

BOUND = 20000


def classify_by_hand(n: int) -> set[str]:
    """Re-derive the flag set for one composite n with the scalar classifiers."""
    flags = set()
    if is_prp(n, 2).is_probable_prime:
        flags.add("psp2")
        if is_epsp_condition(n, 2).is_probable_prime:
            flags.add("epsp2")
        if is_sprp(n, 2).is_probable_prime:
            flags.add("spsp2")
    sel = select_params(n, "A*")
    if sel.ok:
        params = sel.params
        triple, q_half = ladder_with_half(n, params)
        if triple.u == 0:
            flags.add("lpsp")
        strong = is_slprp(n, params)
        if strong.classification.is_probable_prime:
            flags.add("slpsp")
        if triple.v == 2 * params.q % n:
            flags.add("vpsp")
        if euler_q_check(n, params, q_half).is_probable_prime:
            flags.add("euler_q_psp")
    elif not sel.is_composite:
        flags.add("error")
    return flags


@pytest.fixture(scope="module")
def small_scan():
    return scan_range(3, BOUND, "A*")


class TestScanCorrectness:
    def test_records_match_scalar_classifiers(self, small_scan, prime_flags_1e6):
        by_n = {r.n: r.flags for r in small_scan.records}
        for n in range(3, BOUND, 2):
            if prime_flags_1e6[n]:
                assert n not in by_n, f"prime {n} was flagged"
                continue
            expected = classify_by_hand(n)
            got = set(by_n.get(n, frozenset()))
            assert got == expected, f"n={n}: {got} != {expected}"

    def test_counts_are_cumulative_and_consistent(self, small_scan):
        table = small_scan.table
        assert list(table.bounds) == [10, 100, 1000, 10000, BOUND]
        for kind in CENSUS_KINDS:
            per_bound = [row.get(kind, 0) for row in table.counts]
            assert per_bound == sorted(per_bound)
            assert per_bound[-1] == sum(
                1 for r in small_scan.records if kind in r.flags
            )

    def test_params_attached_to_lucas_kinds(self, small_scan):
        for r in small_scan.records:
            if {"lpsp", "slpsp", "vpsp", "euler_q_psp"} & set(r.flags):
                assert r.params is not None
                assert select_params(r.n, "A*").params.to_dict() == r.params
            else:
                assert r.params is None

    def test_python_backend_matches(self):
        res_py = scan_range(3, 3000, "A*", backend="python")
        res_cy = scan_range(3, 3000, "A*", backend="cython")
        assert [(r.n, r.flags) for r in res_py.records] == [
            (r.n, r.flags) for r in res_cy.records
        ]

    def test_workers_do_not_change_results(self):
        serial = scan_range(3, 30000, "A*", chunk=1 << 12, workers=1)
        parallel = scan_range(3, 30000, "A*", chunk=1 << 12, workers=2)
        assert [(r.n, r.flags) for r in serial.records] == [
            (r.n, r.flags) for r in parallel.records
        ]

    def test_kind_subset_only_counts_those(self):
        res = scan_range(3, BOUND, "A*", ("spsp2",))
        assert all(r.flags <= {"spsp2"} for r in res.records)
        assert res.ns_with("spsp2") == [2047, 3277, 4033, 4681, 8321, 15841]

    def test_input_validation(self):
        with pytest.raises(ValueError):
            scan_range(2, 100)  # lo must be >= 3 and odd ranges only
        with pytest.raises(ValueError):
            scan_range(100, 50)
        with pytest.raises(ValueError):
            scan_range(3, DESK_SCALE_CEILING * 10)
        with pytest.raises(ValueError):
            scan_range(3, 100, "Z")


class TestCheckpoint:
    def test_resume_reproduces_full_scan(self, tmp_path):
        ck = tmp_path / "progress.json"
        full = scan_range(3, BOUND, "A*", chunk=1 << 11)
        once = scan_range(3, BOUND, "A*", chunk=1 << 11, checkpoint=str(ck))
        assert ck.exists()
        state = json.loads(ck.read_text())
        assert state["next_index"] > 0
        # resume with the finished checkpoint: no rescanning, same answer
        again = scan_range(3, BOUND, "A*", chunk=1 << 11, checkpoint=str(ck))
        for res in (once, again):
            assert [(r.n, r.flags) for r in res.records] == [
                (r.n, r.flags) for r in full.records
            ]

    def test_partial_checkpoint_resumes_midway(self, tmp_path):
        ck = tmp_path / "progress.json"
        finished = scan_range(3, BOUND, "A*", chunk=1 << 11, checkpoint=str(ck))
        state = json.loads(ck.read_text())
        # rewind the cursor halfway and drop the hits found past that point
        half = state["next_index"] // 2
        kept = [h for h in state["hits"] if h[0] < 3 + (1 << 11) * half]
        state["next_index"] = half
        state["hits"] = kept
        ck.write_text(json.dumps(state))
        resumed = scan_range(3, BOUND, "A*", chunk=1 << 11, checkpoint=str(ck))
        assert [(r.n, r.flags) for r in resumed.records] == [
            (r.n, r.flags) for r in finished.records
        ]

    def test_mismatched_checkpoint_is_rejected(self, tmp_path):
        ck = tmp_path / "progress.json"
        scan_range(3, BOUND, "A*", chunk=1 << 11, checkpoint=str(ck))
        with pytest.raises(ValueError):
            scan_range(3, BOUND, "B", chunk=1 << 11, checkpoint=str(ck))


class TestOutputs:
    def test_csv_shape(self, small_scan):
        text = small_scan.table.to_csv_text()
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[0] == "bound,method,psp2,spsp2,epsp2,lpsp,slpsp,vpsp"
        first = lines[1].split(",")
        assert first[0] == "10" and first[1] == "A*"
        assert len(lines) == 1 + len(small_scan.table.bounds)

    def test_list_files(self, small_scan, tmp_path):
        write_list_files(small_scan, str(tmp_path))
        psp_file = tmp_path / "psp2.txt"
        ns = [int(line) for line in psp_file.read_text().splitlines()]
        assert ns == small_scan.ns_with("psp2")
        assert ns[:3] == [341, 561, 645]

    def test_first_k(self):
        assert first_k("psp2", 3) == [341, 561, 645]
        assert first_k("slpsp", 2) == [5459, 5777]
        with pytest.raises(ValueError):
            first_k("nope", 3)

    def test_overlap_report(self):
        # 913 is a vpsp but NOT an lpsp, so every default combo is empty here
        report = overlap_report(BOUND)
        assert report[("psp2", "lpsp")] == []
        assert report[("spsp2", "slpsp")] == []
        assert report[("lpsp", "vpsp")] == []
        assert report[("spsp2", "slpsp", "vpsp")] == []

    def test_method_comparison_rows(self):
        rows = method_comparison(BOUND, ("A*", "B", "D"))
        by_method = {r.method: r for r in rows}
        assert set(by_method) == {"A*", "B", "D"}
        star = by_method["A*"]
        assert star.vpsp_q_unit + star.vpsp_q_other == 1  # 913 only
        # method D fixes Q=2, so 2Q=4 is never +-2 mod n for n > 6
        d_row = by_method["D"]
        assert d_row.vpsp_q_unit == 0
