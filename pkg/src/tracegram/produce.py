"""Turn a grammar into a deterministic string producer.

Expansion is depth-bounded: per-nonterminal minimum derivation heights are
precomputed and, near the budget, only choices that can still terminate are
allowed.  Coverage mode steers choices toward rule alternatives and
alternation arms not yet exercised in the batch.
"""

from __future__ import annotations

import dataclasses
import random

from .grammar import Alt, Grammar, GrammarError, Group, N, T

INF = float("inf")
_REP_CAP = 8


@dataclasses.dataclass
class ProducerConfig:
    seed: int = 0
    max_depth: int = 10
    count: int = 1
    coverage_mode: bool = True


def min_heights(grammar: Grammar) -> dict[str, float]:
    """Minimum expansion depth needed to finish each nonterminal."""
    h = {nt: INF for nt in grammar.rules}

    def seq_height(seq) -> float:
        worst = 0.0
        for sym in seq:
            worst = max(worst, _sym_height(sym, h))
        return worst

    changed = True
    while changed:
        changed = False
        for nt, rs in grammar.rules.items():
            best = min((1 + seq_height(rule) for rule in rs), default=INF)
            if best < h[nt]:
                h[nt] = best
                changed = True
    return h


def _sym_height(sym, h) -> float:
    if isinstance(sym, T):
        return 0.0
    if isinstance(sym, N):
        return h[sym.name]
    if isinstance(sym, Group):
        if sym.q in ("*", "?"):
            return 0.0
        return max((_sym_height(s, h) for s in sym.body), default=0.0)
    if isinstance(sym, Alt):
        return min((max((_sym_height(s, h) for s in arm), default=0.0) for arm in sym.arms), default=0.0)
    raise GrammarError(f"unknown symbol {sym!r}")


class _Producer:
    def __init__(self, grammar: Grammar, config: ProducerConfig):
        self.g = grammar
        self.cfg = config
        self.rng = random.Random(config.seed)
        self.h = min_heights(grammar)
        for nt, height in self.h.items():
            if height == INF:
                raise GrammarError(f"nonterminal <{nt}> has no terminating derivation")
        self.uncovered: set = set()
        if config.coverage_mode:
            self._collect_coverage_keys()

    def _collect_coverage_keys(self):
        def walk(sym, base):
            if isinstance(sym, Group):
                for k, s in enumerate(sym.body):
                    walk(s, base + (k,))
            elif isinstance(sym, Alt):
                for a, arm in enumerate(sym.arms):
                    self.uncovered.add(base + ("alt", a))
                    for k, s in enumerate(arm):
                        walk(s, base + ("alt", a, k))

        for nt, rs in self.g.rules.items():
            for r, rule in enumerate(rs):
                self.uncovered.add((nt, r))
                for k, sym in enumerate(rule):
                    walk(sym, (nt, r, k))

    def _choose(self, keys, allowed):
        """Pick an index among allowed, preferring uncovered keys."""
        fresh = [i for i in allowed if keys[i] in self.uncovered]
        pool = fresh if fresh else allowed
        pick = pool[0] if len(pool) == 1 else self.rng.choice(pool)
        self.uncovered.discard(keys[pick])
        return pick

    def produce(self) -> str:
        out: list[str] = []
        self._expand_nt(self.g.start, self.cfg.max_depth, out)
        return "".join(out)

    def _expand_nt(self, name: str, depth: int, out: list):
        rules = self.g.rules[name]
        heights = [1 + max((_sym_height(s, self.h) for s in rule), default=0.0) for rule in rules]
        allowed = [i for i in range(len(rules)) if heights[i] <= depth]
        if not allowed:
            best = min(range(len(rules)), key=lambda i: heights[i])
            allowed = [best]
        keys = [(name, i) for i in range(len(rules))]
        pick = self._choose(keys, allowed)
        for k, sym in enumerate(rules[pick]):
            self._expand_sym(sym, depth - 1, out, (name, pick, k))

    def _expand_sym(self, sym, depth: int, out: list, base):
        if isinstance(sym, T):
            out.append(sym.ch)
        elif isinstance(sym, N):
            self._expand_nt(sym.name, depth, out)
        elif isinstance(sym, Group):
            body_h = max((_sym_height(s, self.h) for s in sym.body), default=0.0)
            roomy = body_h <= depth
            if sym.q == "?":
                reps = self.rng.choice((0, 1)) if roomy else 0
            else:
                low = 1 if sym.q == "+" else 0
                if not roomy:
                    reps = low
                else:
                    reps = low
                    while reps < _REP_CAP and self.rng.random() < 0.5:
                        reps += 1
            for _ in range(reps):
                for k, s in enumerate(sym.body):
                    self._expand_sym(s, depth, out, base + (k,))
        elif isinstance(sym, Alt):
            heights = [max((_sym_height(s, self.h) for s in arm), default=0.0) for arm in sym.arms]
            allowed = [a for a in range(len(sym.arms)) if heights[a] <= depth]
            if not allowed:
                allowed = [min(range(len(sym.arms)), key=lambda a: heights[a])]
            keys = [base + ("alt", a) for a in range(len(sym.arms))]
            pick = self._choose(keys, allowed)
            for k, s in enumerate(sym.arms[pick]):
                self._expand_sym(s, depth, out, base + ("alt", pick, k))
        else:
            raise GrammarError(f"unknown symbol {sym!r}")


def generate(grammar: Grammar, config: ProducerConfig) -> list[str]:
    """Deterministic batch of strings derivable from the grammar."""
    grammar.validate()
    if config.max_depth < 1 or config.count < 1:
        raise GrammarError("max_depth and count must be at least 1")
    producer = _Producer(grammar, config)
    return [producer.produce() for _ in range(config.count)]


# newline-delimited files with non-printable characters escaped as \xNN

def escape_line(text: str) -> str:
    out = []
    for c in text:
        if c == "\\":
            out.append("\\x5c")
        elif " " <= c <= "~":
            out.append(c)
        else:
            out.append(f"\\x{ord(c):02x}")
    return "".join(out)


def unescape_line(line: str) -> str:
    out = []
    i = 0
    while i < len(line):
        if line[i] == "\\" and i + 3 < len(line) and line[i + 1] == "x":
            out.append(chr(int(line[i + 2 : i + 4], 16)))
            i += 4
        else:
            out.append(line[i])
            i += 1
    return "".join(out)


def write_lines(path, strings):
    import os

    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        for s in strings:
            fh.write(escape_line(s) + "\n")
    os.replace(tmp, path)


def read_lines(path) -> list[str]:
    with open(path) as fh:
        return [unescape_line(line.rstrip("\n")) for line in fh]
