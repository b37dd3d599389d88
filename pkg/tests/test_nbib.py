import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from densescreen import build_corpus, parse_nbib, to_study, write_nbib
from densescreen.errors import InvalidPmid, MalformedLine, MissingField
from densescreen.nbib import RawRecord

FIXTURES = Path(__file__).parent / "fixtures"


def test_empty_input():
    assert parse_nbib("") == []


def test_single_record():
    text = "PMID- 123\nTI  - A study\nAB  - Abstract text.\nAU  - Smith J\n"
    records = parse_nbib(text)
    assert len(records) == 1
    assert records[0].tags == [
        ("PMID", "123"),
        ("TI", "A study"),
        ("AB", "Abstract text."),
        ("AU", "Smith J"),
    ]


def test_continuation_join():
    records = parse_nbib("AB  - First part\n      second part\n")
    assert records[0].tags == [("AB", "First part second part")]


def test_crlf_and_bom():
    records = parse_nbib("﻿PMID- 5\r\nTI  - T\r\n")
    assert records[0].tags == [("PMID", "5"), ("TI", "T")]


def test_malformed_line():
    with pytest.raises(MalformedLine) as exc:
        parse_nbib("PMID- 1\nnot a field line\n")
    assert exc.value.line_no == 2


def test_continuation_without_record():
    with pytest.raises(MalformedLine):
        parse_nbib("      floating continuation\n")


def test_blank_lines_split_records():
    records = parse_nbib("PMID- 1\nTI  - A\n\n\nPMID- 2\nTI  - B\n")
    assert len(records) == 2


def test_to_study_direct_mapping():
    rec = RawRecord([("PMID", "123"), ("TI", "T"), ("AB", "A"), ("AU", "X Y")])
    s = to_study(rec)
    assert (s.pmid, s.title, s.abstract, s.authors) == ("123", "T", "A", ["X Y"])


def test_to_study_missing_pmid():
    with pytest.raises(MissingField):
        to_study(RawRecord([("TI", "T")]))


def test_to_study_missing_title():
    with pytest.raises(MissingField):
        to_study(RawRecord([("PMID", "1")]))


def test_to_study_invalid_pmid():
    with pytest.raises(InvalidPmid):
        to_study(RawRecord([("PMID", "12x"), ("TI", "T")]))


def test_to_study_fau_fallback():
    rec = RawRecord([("PMID", "1"), ("TI", "T"), ("FAU", "Smith, John")])
    assert to_study(rec).authors == ["Smith, John"]
    rec = RawRecord([("PMID", "1"), ("TI", "T"), ("AU", "Smith J"), ("FAU", "Smith, John")])
    assert to_study(rec).authors == ["Smith J"]


def test_to_study_multiple_ab_concatenated():
    rec = RawRecord([("PMID", "1"), ("TI", "T"), ("AB", "Part one."), ("AB", "Part two.")])
    assert to_study(rec).abstract == "Part one. Part two."


def test_build_corpus_duplicate_keeps_first():
    recs = [
        RawRecord([("PMID", "1"), ("TI", "first")]),
        RawRecord([("PMID", "1"), ("TI", "second")]),
    ]
    studies, report = build_corpus(recs)
    assert len(studies) == 1
    assert studies[0].title == "first"
    assert ("1", "duplicate_pmid_dropped") in report.warnings
    assert report.accepted + len(report.rejected) == report.total_records


def test_build_corpus_empty():
    studies, report = build_corpus([])
    assert studies == [] and report.total_records == 0 and report.accepted == 0


def test_build_corpus_missing_abstract_warned_not_rejected():
    studies, report = build_corpus([RawRecord([("PMID", "1"), ("TI", "T")])])
    assert len(studies) == 1
    assert ("1", "missing_abstract") in report.warnings
    assert ("1", "missing_authors") in report.warnings


def test_golden_three_records():
    text = (FIXTURES / "three_records.nbib").read_text(encoding="utf-8")
    studies, report = build_corpus(parse_nbib(text))
    payload = {
        "studies": [s.to_dict() for s in studies],
        "report": report.to_dict(),
    }
    got = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    expected = (FIXTURES / "three_records_expected.json").read_text(encoding="utf-8")
    assert got == expected


def test_roundtrip_via_writer():
    text = (FIXTURES / "three_records.nbib").read_text(encoding="utf-8")
    once = parse_nbib(text)
    again = parse_nbib(write_nbib(once))
    assert [r.tags for r in once] == [r.tags for r in again]


_tag = st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789", min_size=1, max_size=4)
_value = st.text(
    alphabet=st.characters(blacklist_characters="\n\r", blacklist_categories=("Cs",)),
    min_size=0,
    max_size=30,
).map(lambda v: " ".join(v.split()))


@given(st.lists(st.lists(st.tuples(_tag, _value), min_size=1, max_size=8), max_size=6))
def test_writer_roundtrip_property(tag_soup):
    records = [RawRecord(list(tags)) for tags in tag_soup]
    reparsed = parse_nbib(write_nbib(records))
    expected = [[(t, v) for t, v in r.tags] for r in records]
    assert [r.tags for r in reparsed] == expected


@given(st.lists(st.lists(st.tuples(_tag, _value), min_size=1, max_size=6), max_size=8))
def test_accepted_studies_satisfy_invariants(tag_soup):
    records = [RawRecord(list(tags)) for tags in tag_soup]
    studies, report = build_corpus(records)
    assert report.accepted + len(report.rejected) == report.total_records
    pmids = [s.pmid for s in studies]
    assert len(set(pmids)) == len(pmids)
    for s in studies:
        assert s.pmid.isdigit() and int(s.pmid) > 0
        assert s.title.strip()
