"""Generate messy, provenance-labelled spreadsheets from RDF graphs."""

__version__ = "0.1.0"
