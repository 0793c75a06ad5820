"""Minimal JSON recognizer in the style of small hand-rolled JSON parsers.

Quirks are kept on purpose: numbers are any run of number characters (so
"1e5", "-.2" and even "+e+" all pass), a list may start with a stray comma,
and escape handling knows exactly the seven escapes \" \\/ \\b \\f \\n \\r \\t.
Whitespace is skipped by the structural parsers at separator positions, never
inside tokens.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

WS = " \t\n"
NUMCHARS = "0123456789+-.eE"
ESCAPES = '"/bfnrt'


def skip_ws(s: TrackedSession, i: int, sid: int) -> int:
    c = s.char_at(i)
    while c is not EOF and c in WS:
        with s.loop_iter(sid):
            s.char_at(i)
            i += 1
        c = s.char_at(i)
    return i


def _expect(s: TrackedSession, i: int, word: str) -> int:
    for k, ch in enumerate(word):
        if s.char_at(i + k) != ch:
            raise Reject(i + k)
    return i + len(word)


def decode_escape(s: TrackedSession, i: int) -> int:
    with s.method("decode_escape"):
        c = s.char_at(i)
        if c is EOF or c not in ESCAPES:
            raise Reject(i)
        return i + 1


def json_string(s: TrackedSession, i: int) -> int:
    # i points just past the opening quote
    with s.method("json_string"):
        while True:
            c = s.char_at(i)
            if c is EOF:
                raise Reject(i)
            if c == '"':
                s.char_at(i)
                return i + 1
            with s.loop_iter(1):
                if s.char_at(i) == "\\":
                    with s.branch(1, 1):
                        s.char_at(i)
                        i = decode_escape(s, i + 1)
                else:
                    with s.branch(1, 2):
                        c2 = s.char_at(i)
                        if not (" " <= c2 <= "~"):
                            raise Reject(i)
                        i += 1


def json_number(s: TrackedSession, i: int) -> int:
    with s.method("json_number"):
        start = i
        while True:
            c = s.char_at(i)
            if c is EOF or c not in NUMCHARS:
                break
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
        if i == start:
            raise Reject(i)
        return i


def json_list(s: TrackedSession, i: int) -> int:
    # i points just past the '['
    with s.method("json_list"):
        i = skip_ws(s, i, 1)
        c = s.char_at(i)
        if c == "]":
            with s.branch(1, 1):
                s.char_at(i)
                return i + 1
        else:
            with s.branch(1, 2):
                if s.char_at(i) == ",":
                    # stray leading comma, accepted by the original parser
                    with s.branch(2, 1, can_skip=True):
                        s.char_at(i)
                        i = skip_ws(s, i + 1, 2)
                while True:
                    with s.loop_iter(3):
                        i = json_raw(s, i)
                        i = skip_ws(s, i, 4)
                        c2 = s.char_at(i)
                        if c2 == ",":
                            with s.branch(3, 1):
                                s.char_at(i)
                                i = skip_ws(s, i + 1, 5)
                        elif c2 == "]":
                            with s.branch(3, 2):
                                s.char_at(i)
                                return i + 1
                        else:
                            raise Reject(i)


def json_dict(s: TrackedSession, i: int) -> int:
    # i points just past the '{'
    with s.method("json_dict"):
        i = skip_ws(s, i, 1)
        c = s.char_at(i)
        if c == "}":
            with s.branch(1, 1):
                s.char_at(i)
                return i + 1
        else:
            with s.branch(1, 2):
                while True:
                    with s.loop_iter(2):
                        if s.char_at(i) != '"':
                            raise Reject(i)
                        i = json_string(s, i + 1)
                        i = skip_ws(s, i, 3)
                        if s.char_at(i) != ":":
                            raise Reject(i)
                        i = skip_ws(s, i + 1, 4)
                        i = json_raw(s, i)
                        i = skip_ws(s, i, 5)
                        c2 = s.char_at(i)
                        if c2 == ",":
                            with s.branch(2, 1):
                                s.char_at(i)
                                i = skip_ws(s, i + 1, 6)
                        elif c2 == "}":
                            with s.branch(2, 2):
                                s.char_at(i)
                                return i + 1
                        else:
                            raise Reject(i)


def json_raw(s: TrackedSession, i: int) -> int:
    with s.method("json_raw"):
        c = s.char_at(i)
        if c == '"':
            with s.branch(1, 1):
                s.char_at(i)
                i = json_string(s, i + 1)
        elif c == "[":
            with s.branch(1, 2):
                s.char_at(i)
                i = json_list(s, i + 1)
        elif c == "{":
            with s.branch(1, 3):
                s.char_at(i)
                i = json_dict(s, i + 1)
        elif c == "t":
            with s.branch(1, 4):
                i = _expect(s, i, "true")
        elif c == "f":
            with s.branch(1, 5):
                i = _expect(s, i, "false")
        elif c == "n":
            with s.branch(1, 6):
                i = _expect(s, i, "null")
        elif c is not EOF and c in NUMCHARS:
            with s.branch(1, 7):
                i = json_number(s, i)
        else:
            raise Reject(i)
        return i


def main(s: TrackedSession):
    with s.method("json_parse"):
        i = skip_ws(s, 0, 1)
        i = json_raw(s, i)
        i = skip_ws(s, i, 2)
    if i != s.length:
        raise Reject(i)


_STR1 = "".join(c for c in (chr(o) for o in range(0x20, 0x50)) if c != '"')
_STR2 = "".join(c for c in (chr(o) for o in range(0x50, 0x7F)) if c != "\\")

SEEDS = [
    "1",
    "7",
    "77",
    "-1.5e+2",
    "3E4",
    "1234567890",
    "true",
    "false",
    "null",
    '""',
    '"a"',
    '"ab"',
    f'"{_STR1}"',
    f'"{_STR2}"',
    '"' + r"\"\/\b\f\n\r\t" + '"',
    "[]",
    "[1]",
    "[1,2]",
    "[1,2,3]",
    "[,1]",
    "[,1,2]",
    "[,1,2,3]",
    "[[2],[3],[]]",
    "{}",
    '{"a":1}',
    '{"a":1,"b":2}',
    '{"a":1,"b":2,"c":3}',
    '{"k":{"n":[null,false,{"x":[]}]}}',
    # whitespace witnesses: three spaces per slot, so repetition mining sees
    # an unambiguous run and nullability can then make it optional
    "[   ]",
    "[   ,   1   ]",
    "[   1   ,   2   ]",
    "{   }",
    '{   "a"   :   1   }',
    '{   "a"   :   1   ,   "b"   :   2   }',
    "   1   ",
    "   [   7   ]   ",
    "[\n]",
    "\n[\n1\n]\n",
]

SUBJECT = register(
    Subject(
        name="microjson",
        entry=main,
        seeds=SEEDS,
        golden="microjson.json",
        description="minimal JSON recognizer (strings, numbers, lists, dicts)",
    )
)
