"""Shared exception types for the pipeline.

Each maps to a distinct CLI exit code; see cli.EXIT_CODES.
"""


class DocpipeError(Exception):
    """Base class for all pipeline errors."""


class UnsupportedFormat(DocpipeError):
    pass


class CorruptImage(DocpipeError):
    pass


class GridMismatch(DocpipeError):
    pass


class SchemaError(DocpipeError):
    pass


class UnknownBlobId(DocpipeError):
    pass


class OutOfBounds(DocpipeError):
    pass


class FormatError(DocpipeError):
    pass


class DimensionMismatch(DocpipeError):
    pass


class EmptyClass(DocpipeError):
    pass


class EmptyOriginal(DocpipeError):
    pass


class SingleClass(DocpipeError):
    pass


class EmptyCorpus(DocpipeError):
    pass


class EmptyTestSet(DocpipeError):
    pass


class UnlabeledBlob(DocpipeError):
    def __init__(self, ids):
        self.ids = list(ids)
        super().__init__(f"unlabeled blobs: {self.ids}")
