"""Python bindings for the chasegraph library."""

from ._chasegraph import *  # noqa: F401,F403
from ._chasegraph import (
    Error,
    parse_document,
    run_cli,
)


def load(path):
    """Parse a rule file from disk."""
    with open(path, encoding="utf-8") as f:
        return parse_document(f.read())


__all__ = ["Error", "load", "parse_document", "run_cli"]
