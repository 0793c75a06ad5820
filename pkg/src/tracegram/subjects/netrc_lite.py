"""Token-and-line oriented netrc-style recognizer, no separate lexing stage.

Entries: ``machine NAME login NAME password NAME``, ``default login NAME
password NAME``, and ``macdef NAME`` followed by raw lines up to a blank
line.  Tokens are separated by single spaces, entries end with a newline.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

NAME_CHARS = "abcdefghijklmnopqrstuvwxyz0123456789."
LINE_CHARS = "abcdefghijklmnopqrstuvwxyz0123456789 "


def _expect(s: TrackedSession, i: int, word: str) -> int:
    for k, ch in enumerate(word):
        if s.char_at(i + k) != ch:
            raise Reject(i + k)
    return i + len(word)


def parse_name(s: TrackedSession, i: int) -> int:
    with s.method("parse_name"):
        start = i
        while True:
            c = s.char_at(i)
            if c is EOF or c not in NAME_CHARS:
                break
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
        if i == start:
            raise Reject(i)
        return i


def macdef_line(s: TrackedSession, i: int) -> int:
    with s.method("macdef_line"):
        start = i
        while True:
            c = s.char_at(i)
            if c is EOF or c not in LINE_CHARS:
                break
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
        if i == start:
            raise Reject(i)
        if s.char_at(i) != "\n":
            raise Reject(i)
        return i + 1


def machine_entry(s: TrackedSession, i: int) -> int:
    with s.method("machine_entry"):
        i = _expect(s, i, "machine ")
        i = parse_name(s, i)
        i = _expect(s, i, " login ")
        i = parse_name(s, i)
        i = _expect(s, i, " password ")
        i = parse_name(s, i)
        i = _expect(s, i, "\n")
        return i


def default_entry(s: TrackedSession, i: int) -> int:
    with s.method("default_entry"):
        i = _expect(s, i, "default login ")
        i = parse_name(s, i)
        i = _expect(s, i, " password ")
        i = parse_name(s, i)
        i = _expect(s, i, "\n")
        return i


def macdef_entry(s: TrackedSession, i: int) -> int:
    with s.method("macdef_entry"):
        i = _expect(s, i, "macdef ")
        i = parse_name(s, i)
        i = _expect(s, i, "\n")
        while s.char_at(i) != "\n":
            with s.loop_iter(1):
                i = macdef_line(s, i)
        i = _expect(s, i, "\n")
        return i


def parse_netrc(s: TrackedSession):
    with s.method("parse_netrc"):
        i = 0
        while i < s.length:
            with s.loop_iter(1):
                c = s.char_at(i)
                if c == "d":
                    with s.branch(1, 1):
                        i = default_entry(s, i)
                elif c == "m" and s.char_at(i + 3) == "h":
                    with s.branch(1, 2):
                        i = machine_entry(s, i)
                elif c == "m":
                    with s.branch(1, 3):
                        i = macdef_entry(s, i)
                else:
                    raise Reject(i)


def main(s: TrackedSession):
    parse_netrc(s)


SEEDS = [
    "",
    "machine m0 login u0 password p0\n",
    "machine a login b password c\n",
    "machine host.a login u.1 password p9\nmachine h2 login u2 password p2\n"
    "machine h3 login u3 password p3\n",
    "default login u password p\n",
    "machine m login u password p\ndefault login d password q\n",
    "macdef m1\ndo a b\nrun c9\n\n",
    "macdef x\n\n",
    "macdef y\nstep one\n\nmachine z login l password w\n",
    "machine m.x.y login u password p0123456789.z\n",
    "machine abcdefghijklm login nopqrstuv password wxyz\n",
    "macdef all\nabcdefghijklmnopqrstuvwxyz 0123456789\n\n",
]

SUBJECT = register(
    Subject(
        name="netrc_lite",
        entry=main,
        seeds=SEEDS,
        golden="netrc_lite.json",
        description="netrc-style machine/login/password/macdef recognizer",
    )
)
