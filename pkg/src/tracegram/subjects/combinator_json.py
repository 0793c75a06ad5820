"""A tiny parser-combinator core and a number/list language built on it.

Combinators carry no useful function names, so named nonterminals come from
explicit labels attached to combinator values ("digit", "number", ...).
Choice backtracks PEG style: a failed alternative leaves its character
accesses in the log, and whoever reads those characters afterwards consumes
them.
"""

from __future__ import annotations

import itertools

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

_ids = itertools.count(1)


class Fail(Exception):
    def __init__(self, position):
        self.position = position


class Parser:
    def run(self, s: TrackedSession, i: int) -> int:
        raise NotImplementedError


class Char(Parser):
    def __init__(self, chars: str):
        self.chars = chars

    def run(self, s, i):
        c = s.char_at(i)
        if c is EOF or c not in self.chars:
            raise Fail(i)
        return i + 1


class Seq(Parser):
    def __init__(self, *parts):
        self.parts = parts

    def run(self, s, i):
        for p in self.parts:
            i = p.run(s, i)
        return i


class Choice(Parser):
    def __init__(self, *alts):
        self.static_id = next(_ids)
        self.alts = alts

    def run(self, s, i):
        for k, p in enumerate(self.alts, 1):
            eid = s.enter_branch(self.static_id, k)
            try:
                j = p.run(s, i)
            except Fail:
                s.exit_branch(eid)
                continue
            s.exit_branch(eid)
            return j
        raise Fail(i)


class Many(Parser):
    def __init__(self, p):
        self.static_id = next(_ids)
        self.p = p

    def run(self, s, i):
        while True:
            eid = s.enter_loop_iter(self.static_id)
            try:
                j = self.p.run(s, i)
            except Fail:
                s.exit_loop_iter(eid)
                return i
            s.exit_loop_iter(eid)
            if j == i:
                return i
            i = j


class Label(Parser):
    def __init__(self, name, p):
        self.name = name
        self.p = p

    def run(self, s, i):
        with s.method(self.name):
            return self.p.run(s, i)


class Forward(Parser):
    def __init__(self):
        self.p = None

    def run(self, s, i):
        return self.p.run(s, i)


digit = Label("digit", Char("0123456789"))
number = Label("number", Seq(digit, Many(digit)))

json_value = Forward()
json_list = Label(
    "json_list",
    Seq(
        Char("["),
        Choice(
            Seq(json_value, Many(Seq(Char(","), json_value)), Char("]")),
            Char("]"),
        ),
    ),
)
json_value.p = Label("json_value", Choice(number, json_list))


def main(s: TrackedSession):
    try:
        i = json_value.run(s, 0)
    except Fail as f:
        raise Reject(f.position)
    if i != s.length:
        raise Reject(i)


SEEDS = [
    "7",
    "23",
    "0",
    "120",
    "[]",
    "[1]",
    "[8]",
    "[1,2]",
    "[4,5,6]",
    "[[3],45,[]]",
    "[[1,2],[3]]",
    "[9,[],[0]]",
]

SUBJECT = register(
    Subject(
        name="combinator_json",
        entry=main,
        seeds=SEEDS,
        golden=None,
        description="numbers and nested lists via labeled parser combinators",
    )
)
