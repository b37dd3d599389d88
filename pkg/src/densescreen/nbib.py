"""Parser for PubMed nbib (MEDLINE tag format) exports.

Records are blank-line separated. Each field line is a tag left-padded to
4 characters, a `- ` separator at columns 5-6, then the value. Lines that
start with exactly 6 spaces continue the previous value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InvalidPmid, MalformedLine, MissingField

_TAG_RE = re.compile(r"^[A-Z0-9]{1,4}$")


@dataclass
class RawRecord:
    """One nbib record as an ordered list of (tag, value) pairs."""

    tags: list[tuple[str, str]] = field(default_factory=list)

    def first(self, tag: str) -> str | None:
        for t, v in self.tags:
            if t == tag:
                return v
        return None

    def all(self, tag: str) -> list[str]:
        return [v for t, v in self.tags if t == tag]


@dataclass
class Study:
    pmid: str
    title: str
    abstract: str
    authors: list[str]

    def to_dict(self) -> dict:
        return {
            "pmid": self.pmid,
            "title": self.title,
            "abstract": self.abstract,
            "authors": list(self.authors),
        }


@dataclass
class CorpusReport:
    total_records: int = 0
    accepted: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_records": self.total_records,
            "accepted": self.accepted,
            "rejected": [list(r) for r in self.rejected],
            "warnings": [list(w) for w in self.warnings],
        }


def parse_nbib(text: str) -> list[RawRecord]:
    """Split nbib text into records of (tag, value) pairs.

    Accepts CRLF or LF line endings and strips a leading BOM. Raises
    MalformedLine for a non-blank line that is neither a tagged field
    nor a 6-space continuation.
    """
    if text.startswith("﻿"):
        text = text[1:]
    records: list[RawRecord] = []
    current: RawRecord | None = None
    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            if current is not None and current.tags:
                records.append(current)
            current = None
            continue
        if line.startswith("      ") and not line[6:7].isspace():
            # continuation of the previous value, joined with one space
            if current is None or not current.tags:
                raise MalformedLine(line_no, line)
            tag, value = current.tags[-1]
            current.tags[-1] = (tag, value + " " + line[6:].strip())
            continue
        tag = line[:4].rstrip()
        if line[4:6] != "- " or not _TAG_RE.match(tag):
            raise MalformedLine(line_no, line)
        if current is None:
            current = RawRecord()
        current.tags.append((tag, line[6:].strip()))
    if current is not None and current.tags:
        records.append(current)
    return records


def write_nbib(records: list[RawRecord]) -> str:
    """Re-emit records in canonical form (4-char padded tags, one blank
    line between records). Used by round-trip tests."""
    chunks = []
    for rec in records:
        lines = [f"{tag:<4}- {value}" for tag, value in rec.tags]
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


def to_study(record: RawRecord) -> Study:
    """Map a RawRecord to a validated Study.

    pmid from the first PMID tag, title from the first TI tag, abstract
    from all AB values concatenated, authors from AU values in order
    (FAU fills a position only when the record carries no AU tags).
    """
    pmid = record.first("PMID")
    if pmid is None:
        raise MissingField("PMID")
    if not pmid.isdigit() or int(pmid) <= 0:
        raise InvalidPmid(pmid)
    title = record.first("TI")
    if title is None or not title.strip():
        raise MissingField("TI")
    abstract = " ".join(record.all("AB")).strip()
    authors = record.all("AU")
    if not authors:
        authors = record.all("FAU")
    return Study(pmid=pmid, title=title.strip(), abstract=abstract, authors=authors)


def build_corpus(records: list[RawRecord]) -> tuple[list[Study], CorpusReport]:
    """Convert records to Studies, keeping the first occurrence of each
    pmid and recording rejects and warnings instead of raising."""
    report = CorpusReport(total_records=len(records))
    studies: list[Study] = []
    seen: set[str] = set()
    for idx, rec in enumerate(records):
        try:
            study = to_study(rec)
        except (MissingField, InvalidPmid) as exc:
            report.rejected.append((idx, str(exc)))
            continue
        if study.pmid in seen:
            report.rejected.append((idx, f"duplicate pmid {study.pmid}"))
            report.warnings.append((study.pmid, "duplicate_pmid_dropped"))
            continue
        seen.add(study.pmid)
        studies.append(study)
        if not study.abstract:
            report.warnings.append((study.pmid, "missing_abstract"))
        if not study.authors:
            report.warnings.append((study.pmid, "missing_authors"))
    report.accepted = len(studies)
    return studies, report
