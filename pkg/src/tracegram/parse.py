"""Recognition of strings against grammars: desugar to a plain CFG, Earley.

Regular right-hand sides are lowered to fresh nonterminals (`X* ->
<X.starN>`), then an Earley recognizer with the standard nullable-prediction
fix answers membership.  Recognition is boolean; derivation search over the
bounded language is provided separately as an independent oracle for tests.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict

from .grammar import Alt, Grammar, GrammarError, Group, N, T


@dataclasses.dataclass
class PlainGrammar:
    """Terminals are 1-character strings, nonterminals are '<...>' keys."""

    start: str
    rules: dict[str, list[tuple[str, ...]]]


def _is_nt(sym: str) -> bool:
    return len(sym) > 1


def desugar(grammar: Grammar) -> PlainGrammar:
    rules: dict[str, list[tuple[str, ...]]] = {}
    fresh = defaultdict(int)

    def key(name: str) -> str:
        return f"<{name}>"

    def lower_seq(owner: str, seq) -> tuple[str, ...]:
        out = []
        for sym in seq:
            if isinstance(sym, T):
                out.append(sym.ch)
            elif isinstance(sym, N):
                out.append(key(sym.name))
            elif isinstance(sym, Group):
                body = lower_seq(owner, sym.body)
                if sym.q == "?":
                    fresh[owner] += 1
                    k = f"<{owner}.opt{fresh[owner]}>"
                    rules[k] = [(), body]
                    out.append(k)
                else:
                    fresh[owner] += 1
                    k = f"<{owner}.star{fresh[owner]}>"
                    rules[k] = [(), body + (k,)]
                    if sym.q == "+":
                        out.extend(body)
                    out.append(k)
            elif isinstance(sym, Alt):
                fresh[owner] += 1
                k = f"<{owner}.alt{fresh[owner]}>"
                rules[k] = [lower_seq(owner, arm) for arm in sym.arms]
                out.append(k)
            else:
                raise GrammarError(f"unknown symbol {sym!r}")
        return tuple(out)

    for nt, rs in grammar.rules.items():
        lowered = [lower_seq(nt, rule) for rule in rs]
        rules.setdefault(key(nt), []).extend(lowered)
    return PlainGrammar(start=key(grammar.start), rules=rules)


def nullable_set(pg: PlainGrammar) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for nt, rs in pg.rules.items():
            if nt in nullable:
                continue
            for rule in rs:
                if all(_is_nt(s) and s in nullable for s in rule):
                    nullable.add(nt)
                    changed = True
                    break
    return nullable


class Recognizer:
    """Earley recognizer; reusable across many strings of one grammar."""

    def __init__(self, pg: PlainGrammar):
        self.pg = pg
        self.nullable = nullable_set(pg)
        self.rules = {nt: [tuple(r) for r in rs] for nt, rs in pg.rules.items()}

    def accepts(self, text: str) -> bool:
        rules = self.rules
        nullable = self.nullable
        start = self.pg.start
        n = len(text)
        # item: (nt, rule_index, dot, origin)
        chart: list[set] = [set() for _ in range(n + 1)]
        expecting: list[dict] = [defaultdict(list) for _ in range(n + 1)]

        def add(pos, item, agenda):
            if item not in chart[pos]:
                chart[pos].add(item)
                agenda.append(item)

        agenda: list = []
        for r, _rule in enumerate(rules.get(start, [])):
            add(0, (start, r, 0, 0), agenda)

        for pos in range(n + 1):
            if pos > 0:
                agenda = list(chart[pos])
            k = 0
            work = agenda
            while k < len(work):
                nt, r, dot, origin = work[k]
                k += 1
                rule = rules[nt][r]
                if dot == len(rule):  # complete
                    for parent in expecting[origin].get(nt, []):
                        pnt, pr, pdot, porigin = parent
                        add(pos, (pnt, pr, pdot + 1, porigin), work)
                    continue
                sym = rule[dot]
                if _is_nt(sym):  # predict
                    expecting[pos][sym].append((nt, r, dot, origin))
                    for r2 in range(len(rules.get(sym, []))):
                        add(pos, (sym, r2, 0, pos), work)
                    if sym in nullable:  # magic completion for epsilon
                        add(pos, (nt, r, dot + 1, origin), work)
                elif pos < n and sym == text[pos]:  # scan
                    chart[pos + 1].add((nt, r, dot + 1, origin))

        return any(
            nt == start and dot == len(rules[start][r]) and origin == 0
            for (nt, r, dot, origin) in chart[n]
        )


def accepts(grammar: Grammar, text: str) -> bool:
    return Recognizer(desugar(grammar)).accepts(text)


def language_upto(pg: PlainGrammar, max_len: int) -> set[str]:
    """Every string of length <= max_len, by brute-force derivation search.

    Independent of the Earley path: monotone fixpoint over per-nonterminal
    string sets with concatenation capped at max_len.
    """
    lang: dict[str, set[str]] = {nt: set() for nt in pg.rules}
    changed = True
    while changed:
        changed = False
        for nt, rs in pg.rules.items():
            for rule in rs:
                parts = {""}
                for sym in rule:
                    pool = lang[sym] if _is_nt(sym) else {sym}
                    parts = {
                        a + b
                        for a in parts
                        for b in pool
                        if len(a) + len(b) <= max_len
                    }
                    if not parts:
                        break
                for s in parts:
                    if s not in lang[nt]:
                        lang[nt].add(s)
                        changed = True
    return lang[pg.start]
