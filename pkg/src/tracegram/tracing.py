"""Record one parser execution: character accesses and dynamic control flow.

A parser under study runs against a TrackedSession.  Every read of an input
character goes through ``char_at`` and is logged together with the innermost
open flow event.  Method calls, loop iterations and conditional branches open
and close flow events; loop iterations and branches are "pseudo methods" that
behave like calls in the event tree.
"""

from __future__ import annotations

import dataclasses
from contextlib import contextmanager


class _EndOfInput:
    """Sentinel returned by char_at for out-of-range indexes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EOF"


EOF = _EndOfInput()

METHOD = "method"
LOOP = "loop_iter"
BRANCH = "branch"

RUNNING = "running"
ACCEPTED = "accepted"
REJECTED = "rejected"


class InstrumentationError(Exception):
    """A subject misused the tracing API (not an input-validity problem)."""


@dataclasses.dataclass
class FlowEvent:
    id: int
    kind: str
    name: str = ""
    static_id: int = 0
    alt_id: int = 0
    parent_id: int | None = None
    can_skip: bool = False
    closed: bool = False


class TrackedSession:
    """One run of a parser over one input string.

    Append-only while running; immutable once ``finish`` seals it.  The access
    log keeps every read (including reads that a later event supersedes); the
    consumer of each index is decided downstream by the last-access rule.
    """

    def __init__(self, text: str):
        self.text = text
        self.accesses: list[tuple[int, int]] = []  # (index, call_id)
        self.events: list[FlowEvent] = []
        self.next_id = 1
        self.status = RUNNING
        self.reject_pos: int | None = None
        self._stack: list[int] = []

    @property
    def length(self) -> int:
        return len(self.text)

    def _check_running(self):
        if self.status != RUNNING:
            raise InstrumentationError("session is sealed")

    def char_at(self, index: int):
        """Return the character at index, logging the access.

        Out-of-range indexes return EOF and leave the log untouched, so
        length comparisons and end-of-input probes never create a consumer.
        """
        self._check_running()
        if index < 0 or index >= len(self.text):
            return EOF
        if not self._stack:
            raise InstrumentationError("character access outside any flow event")
        self.accesses.append((index, self._stack[-1]))
        return self.text[index]

    def _open(self, kind, name="", static_id=0, alt_id=0, can_skip=False) -> int:
        self._check_running()
        ev = FlowEvent(
            id=self.next_id,
            kind=kind,
            name=name,
            static_id=static_id,
            alt_id=alt_id,
            parent_id=self._stack[-1] if self._stack else None,
            can_skip=can_skip,
        )
        self.next_id += 1
        self.events.append(ev)
        self._stack.append(ev.id)
        return ev.id

    def _close(self, event_id: int):
        self._check_running()
        if not self._stack or self._stack[-1] != event_id:
            raise InstrumentationError(
                f"mismatched exit: expected {self._stack[-1] if self._stack else None}, got {event_id}"
            )
        self._stack.pop()
        self.events[event_id - 1].closed = True

    def enter_method(self, name: str) -> int:
        return self._open(METHOD, name=name)

    def exit_method(self, event_id: int):
        self._close(event_id)

    def enter_loop_iter(self, static_id: int) -> int:
        # alt_id 0 marks a not-yet-generalized iteration
        return self._open(LOOP, static_id=static_id, alt_id=0)

    def exit_loop_iter(self, event_id: int):
        self._close(event_id)

    def enter_branch(self, static_id: int, alt_id: int, can_skip: bool = False) -> int:
        return self._open(BRANCH, static_id=static_id, alt_id=alt_id, can_skip=can_skip)

    def exit_branch(self, event_id: int):
        self._close(event_id)

    @contextmanager
    def method(self, name: str):
        eid = self.enter_method(name)
        try:
            yield eid
        finally:
            if self.status == RUNNING:
                self.exit_method(eid)

    @contextmanager
    def loop_iter(self, static_id: int):
        eid = self.enter_loop_iter(static_id)
        try:
            yield eid
        finally:
            if self.status == RUNNING:
                self.exit_loop_iter(eid)

    @contextmanager
    def branch(self, static_id: int, alt_id: int, can_skip: bool = False):
        eid = self.enter_branch(static_id, alt_id, can_skip)
        try:
            yield eid
        finally:
            if self.status == RUNNING:
                self.exit_branch(eid)

    def finish(self, accepted: bool, position: int | None = None) -> "TrackedSession":
        self._check_running()
        if self._stack:
            raise InstrumentationError(f"finish with {len(self._stack)} open events")
        self.status = ACCEPTED if accepted else REJECTED
        self.reject_pos = None if accepted else position
        return self

    def event(self, event_id: int) -> FlowEvent:
        return self.events[event_id - 1]

    def dump(self) -> str:
        """Line-oriented debug view of the event and access logs."""
        lines = []
        for ev in self.events:
            lines.append(
                f"{ev.id} {ev.kind} {ev.name or '-'} "
                f"{ev.static_id}:{ev.alt_id} {ev.parent_id if ev.parent_id else 0}"
            )
        for index, call_id in self.accesses:
            lines.append(f"ACC {index} {call_id}")
        return "\n".join(lines)


def begin_session(text: str) -> TrackedSession:
    return TrackedSession(text)
