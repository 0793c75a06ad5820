"""CGI percent-decoding recognizer: a plain state machine, no recursion.

Accepts any sequence of printable characters where '+' stands for space and
'%' must be followed by two hex digits.  '%' with a bad escape or any
non-printable byte rejects.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

HEX = "0123456789abcdefABCDEF"


def hexdigit(s: TrackedSession, i: int):
    with s.method("hexdigit"):
        c = s.char_at(i)
        if c is EOF or c not in HEX:
            raise Reject(i)


def cgi_decode(s: TrackedSession):
    with s.method("cgi_decode"):
        i = 0
        while i < s.length:
            with s.loop_iter(1):
                if s.char_at(i) == "+":
                    with s.branch(1, 1):
                        s.char_at(i)
                        i += 1
                elif s.char_at(i) == "%":
                    with s.branch(1, 2):
                        s.char_at(i)
                        hexdigit(s, i + 1)
                        hexdigit(s, i + 2)
                        i += 3
                else:
                    with s.branch(1, 3):
                        c = s.char_at(i)
                        if c is EOF or not (" " <= c <= "~"):
                            raise Reject(i)
                        i += 1
        return i


def main(s: TrackedSession):
    cgi_decode(s)


# Every plain printable character, split over a few seeds; '%' always starts
# an escape and '+' has its own branch, so both are excluded from "plain".
_PLAIN = "".join(c for c in (chr(o) for o in range(0x20, 0x7F)) if c not in "%+")

SEEDS = [
    "",
    "+",
    "a+b",
    "abc",
    _PLAIN[:31],
    _PLAIN[31:62],
    _PLAIN[62:],
    "%00%11%22%33%44%55%66%77%88%99",
    "%aa%bb%cc%dd%ee%ff",
    "%AA%BB%CC%DD%EE%FF",
    "%0a%1b%2c%3d%4e%5f",
    "%A0%B1%C2%D3%E4%F5",
    "name+last%20x",
    "%2B+%25",
]

SUBJECT = register(
    Subject(
        name="cgidecode",
        entry=main,
        seeds=SEEDS,
        golden="cgidecode.json",
        description="state-machine percent decoder",
    )
)
