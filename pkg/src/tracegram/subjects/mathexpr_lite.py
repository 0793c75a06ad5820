"""Expression recognizer with single-letter constants and named functions.

Identifiers are scanned letter by letter through one shared loop; what a
finished name may be depends on what follows it (a call requires a known
function name, anything else must be a one-letter constant).  Letters in
function names are therefore locally swappable with constant letters, which
is exactly the situation where assuming transitive node compatibility
over-merges.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

FUNCS = ("exp", "sin")
DIGITS = "0123456789"


def parse_num(s: TrackedSession, i: int) -> int:
    with s.method("parse_num"):
        start = i
        while True:
            c = s.char_at(i)
            if c is EOF or c not in DIGITS:
                break
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
        if i == start:
            raise Reject(i)
        return i


def parse_name(s: TrackedSession, i: int):
    with s.method("parse_name"):
        start = i
        letters = []
        while True:
            c = s.char_at(i)
            if c is EOF or not ("a" <= c <= "z"):
                break
            with s.loop_iter(1):
                letters.append(s.char_at(i))
                i += 1
        if i == start:
            raise Reject(i)
        return i, "".join(letters)


def parse_atom(s: TrackedSession, i: int) -> int:
    with s.method("parse_atom"):
        c = s.char_at(i)
        if c is not EOF and c in DIGITS:
            with s.branch(1, 1):
                i = parse_num(s, i)
        elif c is not EOF and "a" <= c <= "z":
            with s.branch(1, 2):
                i, name = parse_name(s, i)
                if s.char_at(i) == "(":
                    with s.branch(2, 1):
                        if name not in FUNCS:
                            raise Reject(i)
                        s.char_at(i)
                        i = parse_expr(s, i + 1)
                        if s.char_at(i) != ")":
                            raise Reject(i)
                        i += 1
                else:
                    with s.branch(2, 2):
                        if len(name) != 1:
                            raise Reject(i)
        else:
            raise Reject(i)
        return i


def parse_expr(s: TrackedSession, i: int) -> int:
    with s.method("parse_expr"):
        i = parse_atom(s, i)
        while True:
            c = s.char_at(i)
            if c is EOF or c not in "+-*/":
                break
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
                i = parse_atom(s, i)
        return i


def main(s: TrackedSession):
    i = parse_expr(s, 0)
    if i != s.length:
        raise Reject(i)


# Seed order matters for the transitivity experiment: the constant 'e' comes
# first so it anchors the letter bucket, and 'a' is the only other constant.
SEEDS = [
    "e+1",
    "a*2",
    "e",
    "a",
    "9",
    "12+3",
    "7-4/2",
    "0*8",
    "56",
    "1+2+3",
    "exp(1)",
    "sin(2)",
    "exp(a)+e",
    "sin(e)*3",
    "exp(sin(1))",
    "e*a-4",
    "exp(12)-sin(e+1)",
    "5",
]

SUBJECT = register(
    Subject(
        name="mathexpr_lite",
        entry=main,
        seeds=SEEDS,
        golden=None,
        description="expressions with constants a-z and functions exp(), sin()",
    )
)
