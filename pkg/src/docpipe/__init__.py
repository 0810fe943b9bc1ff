"""docpipe: scanned-page OCR pipeline with diff scoring and Naive Bayes
text classification, plus a local blob-review service."""

__version__ = "0.1.0"
