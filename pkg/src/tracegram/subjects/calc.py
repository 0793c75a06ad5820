"""Textbook arithmetic-expression recognizer over a buffer and an index.

Grammar it accepts: chains of operands (numbers or parenthesized
subexpressions) joined by + - * /.  The operand/operator alternation is
enforced by the ``is_op`` flag, so a free-standing operator is rejected.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

DIGITS = "0123456789"


def digit(s: TrackedSession, i: int) -> bool:
    with s.method("digit"):
        c = s.char_at(i)
        return c is not EOF and c in DIGITS


def parse_num(s: TrackedSession, i: int) -> int:
    with s.method("parse_num"):
        while i != s.length and digit(s, i):
            with s.loop_iter(1):
                i += 1
        return i


def parse_paren(s: TrackedSession, i: int) -> int:
    with s.method("parse_paren"):
        if s.char_at(i) != "(":
            raise Reject(i)
        i = parse_expr(s, i + 1)
        if i == s.length:
            raise Reject(i)
        if s.char_at(i) != ")":
            raise Reject(i)
        return i + 1


def parse_expr(s: TrackedSession, i: int = 0) -> int:
    with s.method("parse_expr"):
        is_op = True
        while i < s.length:
            broke = False
            with s.loop_iter(1):
                c = s.char_at(i)
                if digit(s, i):
                    with s.branch(1, 1):
                        if not is_op:
                            raise Reject(i)
                        i = parse_num(s, i)
                        is_op = False
                elif s.char_at(i) in "+-*/":
                    with s.branch(1, 2):
                        if is_op:
                            raise Reject(i)
                        is_op = True
                        i += 1
                elif s.char_at(i) == "(":
                    with s.branch(1, 3):
                        if not is_op:
                            raise Reject(i)
                        i = parse_paren(s, i)
                        is_op = False
                elif s.char_at(i) == ")":
                    with s.branch(1, 4):
                        broke = True
                else:
                    raise Reject(i)
            if broke:
                break
        if is_op:
            raise Reject(i)
        return i


def main(s: TrackedSession):
    i = parse_expr(s, 0)
    if i != s.length:
        raise Reject(i)


SEEDS = [
    "9+3/4",
    "5",
    "0",
    "12",
    "345",
    "1+2",
    "1*2",
    "8-6",
    "7/2",
    "(1)",
    "(1+2)",
    "((3))",
    "1+2*3",
    "90",
    "678",
    "10-(2+3)",
    "4*(5+6)",
    "123456789",
    "0+1-2*3/4",
    "(9)",
    "2*(3/(4-5))",
    "88",
    "(12+34)",
    "1-1",
    "9/9",
    "5*5+5",
    "(1+2)*(3-4)/5",
    "60",
    "7",
    "(0)",
]

SUBJECT = register(
    Subject(
        name="calc",
        entry=main,
        seeds=SEEDS,
        golden="calc.json",
        description="recursive-descent arithmetic expressions (buffer + index)",
    )
)
