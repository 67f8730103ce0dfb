"""Tamper analysis and evidence protection for Copland attestation phrases."""

import json

from ._copland import Graph, ParseError, Phrase, UnknownEvent

__all__ = ["Graph", "ParseError", "Phrase", "UnknownEvent", "parse", "graph_json", "protect"]


def parse(text):
    return Phrase.parse(text)


def graph_json(text):
    """The data flow graph of a phrase as a dict, in the CLI's JSON schema."""
    return json.loads(Phrase.parse(text).graph().to_json())


def protect(text):
    """Canonical text of the protected version of a phrase."""
    return str(Phrase.parse(text).protect())
