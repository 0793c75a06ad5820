"""Bundled recursive-descent parsers written against the tracing API.

Each subject is a recognizer: it validates its input through
``TrackedSession.char_at`` and raises ``Reject`` on the first offending
position.  Subjects never build result values, so grammar mining has no data
flow to lean on, only control flow and character accesses.
"""

from __future__ import annotations

import dataclasses
import json
from importlib import resources
from typing import Callable

from ..tracing import TrackedSession


class Reject(Exception):
    """Parse rejection at a position (an input problem, not a crash)."""

    def __init__(self, position: int):
        super().__init__(f"rejected at position {position}")
        self.position = position


class SubjectFault(Exception):
    """A subject crashed in a way that is not a parse rejection."""


@dataclasses.dataclass
class Subject:
    name: str
    entry: Callable[[TrackedSession], None]
    seeds: list[str]
    golden: str | None = None  # golden grammar resource name
    description: str = ""

    @property
    def has_golden(self) -> bool:
        return self.golden is not None

    def golden_grammar(self):
        from ..grammar import Grammar

        if self.golden is None:
            raise ValueError(f"subject {self.name} has no golden grammar")
        data = resources.files("tracegram.subjects").joinpath("golden", self.golden)
        return Grammar.from_json(json.loads(data.read_text()))


def run(subject: Subject, text: str) -> TrackedSession:
    """Run a subject on one input, returning the sealed session."""
    session = TrackedSession(text)
    try:
        subject.entry(session)
    except Reject as rej:
        return session.finish(False, rej.position)
    except Exception as exc:
        raise SubjectFault(f"{subject.name} crashed on {text!r}: {exc!r}") from exc
    return session.finish(True)


def accepts(subject: Subject, text: str) -> bool:
    return run(subject, text).status == "accepted"


_REGISTRY: dict[str, Subject] = {}


def register(subject: Subject) -> Subject:
    _REGISTRY[subject.name] = subject
    return subject


def get(name: str) -> Subject:
    if name not in _REGISTRY:
        known = ", ".join(sorted(_REGISTRY))
        raise KeyError(f"unknown subject {name!r} (known: {known})")
    return _REGISTRY[name]


def list_subjects() -> list[Subject]:
    return [_REGISTRY[k] for k in sorted(_REGISTRY)]


from . import calc  # noqa: E402
from . import cgidecode  # noqa: E402
from . import microjson  # noqa: E402
from . import urlparse_lite  # noqa: E402
from . import netrc_lite  # noqa: E402
from . import mathexpr_lite  # noqa: E402
from . import combinator_json  # noqa: E402
from . import word_abc  # noqa: E402
