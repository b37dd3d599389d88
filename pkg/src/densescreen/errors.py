"""Exception types shared across the library."""


class DenseScreenError(Exception):
    """Base class for all library errors."""


class MalformedLine(DenseScreenError):
    def __init__(self, line_no: int, line: str = ""):
        self.line_no = line_no
        self.line = line
        super().__init__(f"malformed nbib line {line_no}: {line!r}")


class MissingField(DenseScreenError):
    def __init__(self, field: str):
        self.field = field
        super().__init__(f"record is missing required field {field}")


class InvalidPmid(DenseScreenError):
    def __init__(self, value: str):
        self.value = value
        super().__init__(f"PMID is not a positive integer: {value!r}")


class InvalidQuery(DenseScreenError):
    pass


class EmptyText(DenseScreenError):
    pass


class RemoteUnavailable(DenseScreenError):
    def __init__(self, status: int | None, detail: str = ""):
        self.status = status
        super().__init__(f"remote encoder unavailable (status={status}) {detail}".rstrip())


class DimMismatch(DenseScreenError):
    pass


class CountMismatch(DimMismatch):
    pass


class DuplicatePmid(DenseScreenError):
    def __init__(self, pmid: str):
        self.pmid = pmid
        super().__init__(f"duplicate pmid in index: {pmid}")


class UnknownPmid(DenseScreenError):
    def __init__(self, pmid: str):
        self.pmid = pmid
        super().__init__(f"pmid not present: {pmid}")


class EncodeFailed(DenseScreenError):
    """Wraps an encode error with the pmid of the offending study."""

    def __init__(self, pmid: str, cause: Exception):
        self.pmid = pmid
        self.cause = cause
        super().__init__(f"encoding failed for pmid {pmid}: {cause}")


class WrongState(DenseScreenError):
    pass


class NotOnCurrentPage(DenseScreenError):
    def __init__(self, pmid: str):
        self.pmid = pmid
        super().__init__(f"pmid {pmid} is not on the current page")


class PageIncomplete(DenseScreenError):
    def __init__(self, missing: list[str]):
        self.missing = missing
        super().__init__(f"page incomplete; unjudged pmids: {missing}")


class UnknownTopic(DenseScreenError):
    def __init__(self, topic: str):
        self.topic = topic
        super().__init__(f"topic not present in qrels: {topic}")


class EmptyCorpus(DenseScreenError):
    pass
