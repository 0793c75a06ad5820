"""Ad-hoc URL splitter that scans for delimiters over the whole input first.

The fragment is located (and validated) before anything to its left is
parsed, then the query, then the scheme; consumption order is therefore not
left to right.  This mirrors split-style URL parsing and is kept on purpose:
mined grammars for it are expected to lose recall.

Accepted shape: [scheme ':'] ['//' netloc] path ['?' query] ['#' fragment]
with path mandatory and '/'-led.
"""

from __future__ import annotations

from ..tracing import EOF, TrackedSession
from . import Reject, Subject, register

SCHEME_CHARS = "abcdefghijklmnopqrstuvwxyz"
NETLOC_CHARS = SCHEME_CHARS + "0123456789."
SEG_CHARS = SCHEME_CHARS + "0123456789."
QUERY_CHARS = SCHEME_CHARS + "0123456789=&"
FRAG_CHARS = SCHEME_CHARS + "0123456789"


def _scan(s: TrackedSession, name: str, delim: str, lo: int, hi: int) -> int:
    with s.method(name):
        for i in range(lo, hi):
            if s.char_at(i) == delim:
                return i
        return -1


def _run(s, name, chars, lo, hi, require_one=True):
    with s.method(name):
        if require_one and lo == hi:
            raise Reject(lo)
        i = lo
        while i < hi:
            with s.loop_iter(1):
                c = s.char_at(i)
                if c is EOF or c not in chars:
                    raise Reject(i)
                i += 1


def parse_fragment(s: TrackedSession, pos: int, end: int):
    with s.method("parse_fragment"):
        s.char_at(pos)  # the '#'
        _run(s, "fragment_chars", FRAG_CHARS, pos + 1, end)


def parse_query(s: TrackedSession, pos: int, end: int):
    with s.method("parse_query"):
        s.char_at(pos)  # the '?'
        _run(s, "query_chars", QUERY_CHARS, pos + 1, end)


def parse_scheme(s: TrackedSession, lo: int, colon: int):
    with s.method("parse_scheme"):
        if lo == colon:
            raise Reject(lo)
        i = lo
        while i < colon:
            with s.loop_iter(1):
                c = s.char_at(i)
                if c is EOF or c not in SCHEME_CHARS:
                    raise Reject(i)
                i += 1
        s.char_at(colon)  # the ':'


def parse_netloc(s: TrackedSession, lo: int, hi: int) -> int:
    with s.method("parse_netloc"):
        s.char_at(lo)
        s.char_at(lo + 1)  # the '//'
        i = lo + 2
        while i < hi and s.char_at(i) in NETLOC_CHARS:
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
        if i == lo + 2:
            raise Reject(i)
        return i


def parse_seg(s: TrackedSession, i: int, hi: int) -> int:
    with s.method("parse_seg"):
        start = i
        while i < hi:
            c = s.char_at(i)
            if c is EOF or c not in SEG_CHARS:
                break
            with s.loop_iter(1):
                s.char_at(i)
                i += 1
        if i == start:
            raise Reject(i)
        return i


def parse_path(s: TrackedSession, lo: int, hi: int):
    with s.method("parse_path"):
        if s.char_at(lo) != "/":
            raise Reject(lo)
        i = lo + 1
        if i < hi:
            i = parse_seg(s, i, hi)
            while i < hi:
                with s.loop_iter(1):
                    if s.char_at(i) != "/":
                        raise Reject(i)
                    i = parse_seg(s, i + 1, hi)


def parse_url(s: TrackedSession):
    with s.method("parse_url"):
        n = s.length
        if n == 0:
            raise Reject(0)
        end = n
        fpos = _scan(s, "find_fragment", "#", 0, end)
        if fpos >= 0:
            with s.branch(1, 1):
                parse_fragment(s, fpos, end)
                end = fpos
        else:
            with s.branch(1, 2):
                pass
        qpos = _scan(s, "find_query", "?", 0, end)
        if qpos >= 0:
            with s.branch(2, 1):
                parse_query(s, qpos, end)
                end = qpos
        else:
            with s.branch(2, 2):
                pass
        cpos = _scan(s, "find_scheme", ":", 0, end)
        start = 0
        if cpos >= 0:
            with s.branch(3, 1):
                parse_scheme(s, 0, cpos)
                start = cpos + 1
        else:
            with s.branch(3, 2):
                pass
        if start + 1 < end and s.char_at(start) == "/" and s.char_at(start + 1) == "/":
            with s.branch(4, 1):
                start = parse_netloc(s, start, end)
        else:
            with s.branch(4, 2):
                pass
        parse_path(s, start, end)


def main(s: TrackedSession):
    parse_url(s)


# Presence combinations of (scheme, netloc, query, fragment) around the
# mandatory path.  Two of the sixteen are deliberately absent from the seeds:
# scheme+query+fragment without netloc, and netloc+fragment alone.
SEEDS = [
    "s:/p#f1",
    "/",
    "/a",
    "/x/y/z.html",
    "/abcdefghijklmnopqrstuvwxyz/0123456789.q",
    "s:/a",
    "http:/x",
    "abcdefghijklm:/c",
    "nopqrstuvwxyz:/d",
    "ftp:/d?k=v&n=m",
    "/p?abcdefghijklmnopqrstuvwxyz=0123456789&e0=w",
    "/p?x=1",
    "/p?a=1&bc=23",
    "http://host/p",
    "http://abcdefghijklmnopqrstuvwxyz.0123456789/p",
    "//ab/c",
    "//a.b.c/idx",
    "//d2.e/",
    "/p#frag",
    "/q#s0",
    "/f#abcdefghijklmnopqrstuvwxyz0123456789",
    "http://a.b/c/d?x=y#sec",
    "s://n/p#f",
    "//n2/p?q=1",
    "mailto:/m0",
    "/0123456789?e9=z8&q=0#h4",
    "http://h/p?a=b",
    "//h/p?x=0#y1",
    "/p?q=2#f2",
]

SUBJECT = register(
    Subject(
        name="urlparse_lite",
        entry=main,
        seeds=SEEDS,
        golden="urlparse_lite.json",
        description="ad-hoc URL splitter with out-of-order delimiter scans",
    )
)
