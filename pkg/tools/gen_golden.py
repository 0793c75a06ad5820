#!/usr/bin/env python3
"""Regenerate the golden grammar files under src/tracegram/subjects/golden/.

Each golden grammar is the hand-written reference for one bundled subject;
evaluation draws known-valid inputs from it.  Run from the repository root:

    python3 tools/gen_golden.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from tracegram.grammar import Alt, Grammar, Group, N, T  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "tracegram" / "subjects" / "golden"


def chars(cs):
    return [(T(c),) for c in cs]


def calc():
    return Grammar(
        "START",
        {
            "START": [(Group((N("expr"), N("op")), "*"), N("expr"))],
            "expr": [(N("num"),), (N("paren"),)],
            "paren": [(T("("), N("expr"), T(")"))],
            "num": [(Group((N("digit"),), "+"),)],
            "digit": chars("0123456789"),
            "op": chars("+-*/"),
        },
    )


def cgidecode():
    plain = "".join(c for c in (chr(o) for o in range(0x20, 0x7F)) if c not in "%+")
    return Grammar(
        "START",
        {
            "START": [(Group((N("item"),), "*"),)],
            "item": [(N("plain"),), (T("+"),), (T("%"), N("hex"), N("hex"))],
            "plain": chars(plain),
            "hex": chars("0123456789abcdefABCDEF"),
        },
    )


def microjson():
    strchar = "".join(c for c in (chr(o) for o in range(0x20, 0x7F)) if c not in '"\\')
    word = lambda w: tuple(T(c) for c in w)  # noqa: E731
    return Grammar(
        "START",
        {
            "START": [(N("ws"), N("json_raw"), N("ws"))],
            "json_raw": [
                (T('"'), N("json_string'")),
                (T("["), N("json_list'")),
                (T("{"), N("json_dict'")),
                (N("json_number'"),),
                word("true"),
                word("false"),
                word("null"),
            ],
            "json_number'": [
                (Group((N("json_number"),), "+"),),
                (Group((N("json_number"),), "+"), T("e"), Group((N("json_number"),), "+")),
            ],
            "json_number": chars("+-.0123456789Ee"),
            "json_string'": [(Group((N("json_string"),), "*"), T('"'))],
            "json_string": chars(strchar) + [(T("\\"), N("decode_escape"))],
            "decode_escape": chars('"/bfnrt'),
            "json_list'": [
                (N("ws"), T("]")),
                (N("ws"), N("list_items")),
                (N("ws"), T(","), N("ws"), N("list_items")),
            ],
            "list_items": [
                (
                    N("json_raw"),
                    N("ws"),
                    Group((T(","), N("ws"), N("json_raw"), N("ws")), "*"),
                    T("]"),
                )
            ],
            "json_dict'": [(N("ws"), T("}")), (N("ws"), N("dict_pairs"))],
            "dict_pairs": [
                (
                    Group(
                        (
                            T('"'),
                            N("json_string'"),
                            N("ws"),
                            T(":"),
                            N("ws"),
                            N("json_raw"),
                            N("ws"),
                            T(","),
                            N("ws"),
                        ),
                        "*",
                    ),
                    T('"'),
                    N("json_string'"),
                    N("ws"),
                    T(":"),
                    N("ws"),
                    N("json_raw"),
                    N("ws"),
                    T("}"),
                )
            ],
            "ws": [(Group((T(" "),), "*"),)],
        },
    )


def urlparse_lite():
    lower = "abcdefghijklmnopqrstuvwxyz"
    return Grammar(
        "START",
        {
            "START": [
                (N("scheme_part"), N("netloc_part"), N("path"), N("query_part"), N("frag_part"))
            ],
            "scheme_part": [(), (Group((N("lower"),), "+"), T(":"))],
            "netloc_part": [(), (T("/"), T("/"), Group((N("nchar"),), "+"))],
            "path": [(T("/"),), (T("/"), N("seg"), Group((T("/"), N("seg")), "*"))],
            "seg": [(Group((N("pchar"),), "+"),)],
            "query_part": [(), (T("?"), Group((N("qchar"),), "+"))],
            "frag_part": [(), (T("#"), Group((N("fchar"),), "+"))],
            "lower": chars(lower),
            "nchar": chars(lower + "0123456789."),
            "pchar": chars(lower + "0123456789."),
            "qchar": chars(lower + "0123456789=&"),
            "fchar": chars(lower + "0123456789"),
        },
    )


def netrc_lite():
    lower = "abcdefghijklmnopqrstuvwxyz"
    word = lambda w: tuple(T(c) for c in w)  # noqa: E731
    return Grammar(
        "START",
        {
            "START": [(Group((N("entry"),), "*"),)],
            "entry": [(N("machine"),), (N("default"),), (N("macdef"),)],
            "machine": [
                word("machine ")
                + (N("name"),)
                + word(" login ")
                + (N("name"),)
                + word(" password ")
                + (N("name"), T("\n"))
            ],
            "default": [
                word("default login ") + (N("name"),) + word(" password ") + (N("name"), T("\n"))
            ],
            "macdef": [
                word("macdef ")
                + (N("name"), T("\n"), Group((N("line"), T("\n")), "*"), T("\n"))
            ],
            "name": [(Group((N("namechar"),), "+"),)],
            "line": [(Group((N("linechar"),), "+"),)],
            "namechar": chars(lower + "0123456789."),
            "linechar": chars(lower + "0123456789 "),
        },
    )


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in [
        ("calc", calc),
        ("cgidecode", cgidecode),
        ("microjson", microjson),
        ("urlparse_lite", urlparse_lite),
        ("netrc_lite", netrc_lite),
    ]:
        g = build()
        g.validate()
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(g.to_json(), indent=1) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
