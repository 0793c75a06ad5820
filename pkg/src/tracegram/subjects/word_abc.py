"""Three-word toy language {a, b, ac} for exercising compatibility learning.

Every letter is read through one shared ``letter`` method, so all letter
nodes land in a single bucket; which letters are legal where is decided by
the word procedures on the returned values.  Compatibility of letter nodes
across words is therefore a genuinely non-transitive relation: 'a' and 'b'
are interchangeable as whole words, but only 'a' may start 'ac'.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register


def letter(s: TrackedSession, i: int) -> str:
    with s.method("letter"):
        c = s.char_at(i)
        if c is EOF or not ("a" <= c <= "z"):
            raise Reject(i)
        return c


def word1(s: TrackedSession) -> int:
    with s.method("word1"):
        if letter(s, 0) != "a":
            raise Reject(0)
        return 1


def word2(s: TrackedSession) -> int:
    with s.method("word2"):
        if letter(s, 0) != "b":
            raise Reject(0)
        return 1


def word3(s: TrackedSession) -> int:
    with s.method("word3"):
        if letter(s, 0) != "a":
            raise Reject(0)
        if letter(s, 1) != "c":
            raise Reject(1)
        return 2


def start(s: TrackedSession) -> int:
    with s.method("START"):
        c = s.char_at(0)
        if c == "b":
            return word2(s)
        if c == "a":
            if s.char_at(1) is EOF:
                return word1(s)
            return word3(s)
        raise Reject(0)


def main(s: TrackedSession):
    if start(s) != s.length:
        raise Reject(s.length)


SUBJECT = register(
    Subject(
        name="word_abc",
        entry=main,
        seeds=["a", "b", "ac"],
        description="toy word language showing non-transitive node compatibility",
    )
)
