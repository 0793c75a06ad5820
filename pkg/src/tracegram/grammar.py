"""Grammar extraction from generalized parse trees, and grammar transforms.

Rules have regular right-hand sides: terminals, nonterminal references,
quantified groups and alternations.  The pipeline order is extraction,
repetition mining, nullability application, compaction, and (optionally)
character-set rendering.
"""

from __future__ import annotations

import dataclasses
from collections import Counter, defaultdict

from .tracing import BRANCH, LOOP, METHOD
from .treebuild import Leaf, NodeLabel, iter_nodes


@dataclasses.dataclass(frozen=True)
class T:
    ch: str


@dataclasses.dataclass(frozen=True)
class N:
    name: str


@dataclasses.dataclass(frozen=True)
class Group:
    body: tuple
    q: str  # '*', '+', '?'


@dataclasses.dataclass(frozen=True)
class Alt:
    arms: tuple  # of symbol tuples


Rule = tuple  # of symbols


class GrammarError(Exception):
    pass


class Grammar:
    """start symbol + ordered map nonterminal -> ordered unique rules.

    ``origins`` carries the tree label each mined nonterminal came from; it
    exists only in-pipeline (not serialized) and feeds nullability decisions.
    """

    def __init__(self, start: str, rules: dict[str, list[Rule]], origins: dict[str, NodeLabel] | None = None):
        self.start = start
        self.rules = {nt: list(rs) for nt, rs in rules.items()}
        self.origins = origins or {}

    def __eq__(self, other):
        return (
            isinstance(other, Grammar)
            and self.start == other.start
            and self.rules == other.rules
        )

    def rule_count(self) -> int:
        return sum(len(rs) for rs in self.rules.values())

    def copy(self) -> "Grammar":
        return Grammar(self.start, {nt: list(rs) for nt, rs in self.rules.items()}, dict(self.origins))

    def validate(self):
        if self.start not in self.rules:
            raise GrammarError(f"start symbol {self.start!r} is undefined")
        for nt, rs in self.rules.items():
            if not rs:
                raise GrammarError(f"empty rule set for {nt!r}")
            for rule in rs:
                for ref in _refs_in_rule(rule):
                    if ref not in self.rules:
                        raise GrammarError(f"undefined nonterminal {ref!r} referenced from {nt!r}")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "start": f"<{self.start}>",
            "rules": {
                f"<{nt}>": [[_sym_to_json(sym) for sym in rule] for rule in rs]
                for nt, rs in self.rules.items()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "Grammar":
        rules = {
            _strip(nt): [tuple(_sym_from_json(s) for s in rule) for rule in rs]
            for nt, rs in data["rules"].items()
        }
        return cls(_strip(data["start"]), rules)

    # -- display ------------------------------------------------------------

    def render(self) -> str:
        lines = []
        for nt, rs in self.rules.items():
            alts = " | ".join(_render_rule(rule) for rule in rs)
            lines.append(f"<{nt}> ::= {alts}")
        return "\n".join(lines)


def _strip(name: str) -> str:
    return name[1:-1] if name.startswith("<") and name.endswith(">") else name


def _sym_to_json(sym):
    if isinstance(sym, T):
        return {"t": sym.ch}
    if isinstance(sym, N):
        return {"nt": f"<{sym.name}>"}
    if isinstance(sym, Group):
        return {"group": [_sym_to_json(s) for s in sym.body], "q": sym.q}
    if isinstance(sym, Alt):
        return {"alt": [[_sym_to_json(s) for s in arm] for arm in sym.arms]}
    raise GrammarError(f"unknown symbol {sym!r}")


def _sym_from_json(data):
    if "t" in data:
        return T(data["t"])
    if "nt" in data:
        return N(_strip(data["nt"]))
    if "group" in data:
        return Group(tuple(_sym_from_json(s) for s in data["group"]), data["q"])
    if "alt" in data:
        return Alt(tuple(tuple(_sym_from_json(s) for s in arm) for arm in data["alt"]))
    raise GrammarError(f"unknown symbol record {data!r}")


def _render_char(c: str) -> str:
    if c == "\n":
        return "\\n"
    if c == "\t":
        return "\\t"
    if c == "\r":
        return "\\r"
    if c == "'":
        return "\\'"
    if c == "\\":
        return "\\\\"
    if " " <= c <= "~":
        return c
    return f"\\x{ord(c):02x}"


def _render_charclass(chars: list[str]) -> str:
    points = sorted(set(ord(c) for c in chars))
    parts = []
    k = 0
    while k < len(points):
        j = k
        while j + 1 < len(points) and points[j + 1] == points[j] + 1:
            j += 1
        if j - k >= 2:
            parts.append(f"{_render_char(chr(points[k]))}-{_render_char(chr(points[j]))}")
        else:
            parts.extend(_render_char(chr(p)) for p in points[k : j + 1])
        k = j + 1
    return "[" + "".join(parts) + "]"


def _render_sym(sym) -> str:
    if isinstance(sym, T):
        return f"'{_render_char(sym.ch)}'"
    if isinstance(sym, N):
        return f"<{sym.name}>"
    if isinstance(sym, Group):
        return "(" + " ".join(_render_sym(s) for s in sym.body) + ")" + sym.q
    if isinstance(sym, Alt):
        if all(len(arm) == 1 and isinstance(arm[0], T) for arm in sym.arms):
            return _render_charclass([arm[0].ch for arm in sym.arms])
        return "(" + " | ".join(" ".join(_render_sym(s) for s in arm) or "ε" for arm in sym.arms) + ")"
    raise GrammarError(f"unknown symbol {sym!r}")


def _render_rule(rule: Rule) -> str:
    if not rule:
        return "ε"
    return " ".join(_render_sym(sym) for sym in rule)


# ---------------------------------------------------------------------------
# extraction

_KW = {LOOP: "w", BRANCH: "i"}


def _pseudo_chunk(kind: str, static_id: int, tag: str) -> str:
    return f"{_KW[kind]}{static_id}_{tag.replace(':', '_').replace('.', '_')}"


def nonterminal_names(labels) -> dict[NodeLabel, str]:
    """Deterministic, injective names: methods keep their bare name when the
    bucket has a single class, pseudo methods encode their stack chain."""
    method_suffixes = defaultdict(set)
    for lab in labels:
        if lab.kind == METHOD:
            method_suffixes[lab.name].add(lab.gen_suffix)
    names = {}
    for lab in labels:
        if lab.kind == METHOD:
            if len(method_suffixes[lab.name]) <= 1:
                names[lab] = lab.name
            else:
                names[lab] = f"{lab.name}.{lab.gen_suffix}"
        else:
            chunks = [_pseudo_chunk(k, sid, tag) for k, sid, tag in lab.stack]
            own_tag = str(lab.gen_suffix) if lab.kind == LOOP else (
                f"{lab.alt_id}" + (f"_{lab.gen_suffix}" if lab.gen_suffix > 1 else "")
            )
            chunks.append(_pseudo_chunk(lab.kind, lab.static_id, own_tag))
            names[lab] = lab.name + "." + ".".join(chunks)
    rev = defaultdict(list)
    for lab, name in names.items():
        rev[name].append(lab)
    for name, labs in rev.items():
        if len(labs) > 1:
            raise GrammarError(f"nonterminal name collision on {name!r}")
    return names


def extract_grammar(trees) -> Grammar:
    """One nonterminal per generalized label; each node contributes its
    children as one alternative, duplicates collapsing."""
    labels = set()
    for tree in trees:
        for _path, node in iter_nodes(tree):
            labels.add(node.label)
    names = nonterminal_names(labels)

    rules: dict[str, dict[Rule, None]] = {}
    origins: dict[str, NodeLabel] = {}

    def visit(node):
        name = names[node.label]
        origins[name] = node.label
        rule = []
        for child in node.children:
            if isinstance(child, Leaf):
                rule.append(T(child.char))
            else:
                rule.append(N(names[child.label]))
                visit(child)
        rules.setdefault(name, {})[tuple(rule)] = None

    starts = {names[tree.label] for tree in trees}
    if len(starts) != 1:
        raise GrammarError(f"corpus has multiple root nonterminals: {sorted(starts)}")
    for tree in trees:
        visit(tree)
    g = Grammar(starts.pop(), {nt: list(rs) for nt, rs in rules.items()}, origins)
    g.validate()
    return g


# ---------------------------------------------------------------------------
# repetition mining (modified prefix tree acceptor)

def seq_matches(pattern: Rule, plain: Rule, _memo=None) -> bool:
    """Does the plain symbol sequence belong to the regex the pattern spells?"""
    if _memo is None:
        _memo = {}
    key = (pattern, plain)
    if key in _memo:
        return _memo[key]
    if not pattern:
        result = not plain
    else:
        head, rest = pattern[0], pattern[1:]
        if isinstance(head, (T, N)):
            result = bool(plain) and plain[0] == head and seq_matches(rest, plain[1:], _memo)
        elif isinstance(head, Alt):
            result = any(seq_matches(arm + rest, plain, _memo) for arm in head.arms)
        elif isinstance(head, Group):
            if head.q == "?":
                result = seq_matches(rest, plain, _memo) or seq_matches(head.body + rest, plain, _memo)
            elif head.q == "*":
                result = seq_matches(rest, plain, _memo) or seq_matches(
                    head.body + (head,) + rest, plain, _memo
                )
            else:  # '+'
                result = seq_matches(head.body + (Group(head.body, "*"),) + rest, plain, _memo)
        else:
            raise GrammarError(f"unknown symbol {head!r}")
    _memo[key] = result
    return result


def _has_group(rule: Rule) -> bool:
    return any(isinstance(sym, (Group, Alt)) for sym in rule)


def _mine_rule(rule: Rule, siblings: list[Rule]) -> Rule:
    """Collapse adjacent block repetitions into (block)+ groups.

    Largest block first; a two-fold repetition is only trusted when the
    quantified rewrite also covers some other alternative of the same
    nonterminal, so coincidental doubles stay literal.
    """
    seq = list(rule)
    changed = True
    while changed:
        changed = False
        n = len(seq)
        for k in range(n // 2, 0, -1):
            for pos in range(0, n - 2 * k + 1):
                block = seq[pos : pos + k]
                reps = 1
                while seq[pos + reps * k : pos + (reps + 1) * k] == block:
                    reps += 1
                if reps < 2:
                    continue
                # reduce to the primitive period, then re-extend: nine
                # digits should come out as (digit)+, not (digit^3)+
                stretch = seq[pos : pos + reps * k]
                for p in range(1, k + 1):
                    if len(stretch) % p == 0 and stretch == stretch[:p] * (len(stretch) // p):
                        block = stretch[:p]
                        k = p
                        break
                reps = 1
                while seq[pos + reps * k : pos + (reps + 1) * k] == block:
                    reps += 1
                candidate = tuple(seq[:pos]) + (Group(tuple(block), "+"),) + tuple(seq[pos + reps * k :])
                # a two-fold repeat is only trusted when some other
                # alternative needs the new group to flex (it matches the
                # quantified form but not the literal one)
                literal = tuple(seq)
                corroborated = reps >= 3 or any(
                    other != rule
                    and not _has_group(other)
                    and seq_matches(candidate, other)
                    and not seq_matches(literal, other)
                    for other in siblings
                )
                if corroborated:
                    seq = list(candidate)
                    changed = True
                    break
            if changed:
                break
    return tuple(seq)


def _drop_absorbed(rules: list[Rule]) -> list[Rule]:
    """Drop plain alternatives that some quantified alternative covers."""
    kept = []
    for rule in rules:
        absorbed = not _has_group(rule) and any(
            other != rule and _has_group(other) and seq_matches(other, rule)
            for other in rules
        )
        if not absorbed:
            kept.append(rule)
    return kept


def detect_repetitions(grammar: Grammar) -> Grammar:
    """Merge repetition-witnessing alternatives into quantified rules, then
    drop alternatives an existing quantified rule already covers."""
    out = {}
    for nt, rs in grammar.rules.items():
        mined: dict[Rule, None] = {}
        for rule in rs:
            mined[_mine_rule(rule, rs)] = None
        out[nt] = _drop_absorbed(list(mined))
    g = Grammar(grammar.start, out, grammar.origins)
    g.validate()
    return g


# ---------------------------------------------------------------------------
# nullability application

def _loop_static(origin: NodeLabel | None):
    if origin is not None and origin.kind == LOOP:
        return (origin.name, origin.static_id)
    return None


def apply_nullability(grammar: Grammar, report) -> Grammar:
    """+ becomes * where every group item is a nullable loop; skippable
    branch nonterminals gain an explicit empty alternative."""

    def nullable_sym(sym) -> bool:
        return isinstance(sym, N) and _loop_static(grammar.origins.get(sym.name)) in report.nullable_loops

    def rewrite(sym):
        if isinstance(sym, Group):
            body = tuple(rewrite(s) for s in sym.body)
            q = sym.q
            if q == "+" and all(nullable_sym(s) for s in body):
                q = "*"
            return Group(body, q)
        if isinstance(sym, Alt):
            return Alt(tuple(tuple(rewrite(s) for s in arm) for arm in sym.arms))
        return sym

    out = {}
    for nt, rs in grammar.rules.items():
        new_rules = [tuple(rewrite(sym) for sym in rule) for rule in rs]
        origin = grammar.origins.get(nt)
        if (
            origin is not None
            and origin.kind == BRANCH
            and origin.key() in report.skippable_branches
            and () not in new_rules
        ):
            new_rules.append(())
        # weakening + to * can make plain alternatives redundant
        out[nt] = _drop_absorbed(list(dict.fromkeys(new_rules)))
    g = Grammar(grammar.start, out, grammar.origins)
    g.validate()
    return g


# ---------------------------------------------------------------------------
# compaction

def _refs_in_sym(sym):
    if isinstance(sym, N):
        yield sym.name
    elif isinstance(sym, Group):
        for s in sym.body:
            yield from _refs_in_sym(s)
    elif isinstance(sym, Alt):
        for arm in sym.arms:
            for s in arm:
                yield from _refs_in_sym(s)


def _refs_in_rule(rule: Rule):
    for sym in rule:
        yield from _refs_in_sym(sym)


def _splice(rule: Rule, name: str, seq: Rule) -> Rule:
    out = []
    for sym in rule:
        if isinstance(sym, N) and sym.name == name:
            out.extend(seq)
        elif isinstance(sym, Group):
            out.append(Group(_splice(sym.body, name, seq), sym.q))
        elif isinstance(sym, Alt):
            out.append(Alt(tuple(_splice(arm, name, seq) for arm in sym.arms)))
        else:
            out.append(sym)
    return tuple(out)


def _substitute(rules: dict[str, list[Rule]], name: str, seq: Rule):
    for nt in rules:
        rules[nt] = list(dict.fromkeys(_splice(rule, name, seq) for rule in rules[nt]))


def compact(grammar: Grammar) -> Grammar:
    """Fixpoint of the five verbosity-reducing transforms, followed by a
    sweep of keys no longer reachable from the start symbol.

    Keys that came from true parser methods are never inlined away: method
    names are the readable anchors of the grammar, and only pseudo-method
    (loop/branch) keys get summarized into the rules that use them.
    """
    rules = {nt: list(rs) for nt, rs in grammar.rules.items()}
    start = grammar.start

    def inlinable(nt: str) -> bool:
        origin = grammar.origins.get(nt)
        return nt != start and (origin is None or origin.kind != METHOD)

    def total():
        return sum(len(rs) for rs in rules.values())

    while True:
        before = total()

        # 1. single-rule single-token keys: inline the token everywhere
        for nt in list(rules):
            if not inlinable(nt):
                continue
            rs = rules[nt]
            if len(rs) == 1 and len(rs[0]) == 1 and isinstance(rs[0][0], (T, N)) and nt not in _refs_in_rule(rs[0]):
                token = rs[0]
                del rules[nt]
                _substitute(rules, nt, token)

        # 2. merge keys with identical rule sets (keep start, else methods,
        # else the first seen)
        def keep_rank(nt: str) -> tuple:
            origin = grammar.origins.get(nt)
            return (nt != start, origin is None or origin.kind != METHOD)

        groups: dict[frozenset, list[str]] = {}
        for nt in rules:
            groups.setdefault(frozenset(rules[nt]), []).append(nt)
        for sig, nts in groups.items():
            if len(nts) < 2:
                continue
            keep = min(nts, key=keep_rank)
            for nt in nts:
                if nt != keep and nt != start:
                    del rules[nt]
                    _substitute(rules, nt, (N(keep),))

        # 3. duplicate rules under one key
        for nt in rules:
            rules[nt] = list(dict.fromkeys(rules[nt]))

        # 4. rules equal to their own key
        for nt in rules:
            rules[nt] = [r for r in rules[nt] if r != (N(nt),)] or rules[nt]

        # 5. keys used once, defined by one rule: inline the rule
        counts = Counter()
        for rs in rules.values():
            for rule in rs:
                counts.update(_refs_in_rule(rule))
        for nt in list(rules):
            if not inlinable(nt) or counts[nt] != 1:
                continue
            rs = rules[nt]
            if len(rs) == 1 and nt not in _refs_in_rule(rs[0]):
                seq = rs[0]
                del rules[nt]
                _substitute(rules, nt, seq)

        if total() >= before:
            break

    # unreachable keys
    reachable = {start}
    frontier = [start]
    while frontier:
        nt = frontier.pop()
        for rule in rules.get(nt, []):
            for ref in _refs_in_rule(rule):
                if ref not in reachable:
                    reachable.add(ref)
                    frontier.append(ref)
    rules = {nt: rs for nt, rs in rules.items() if nt in reachable}

    g = Grammar(start, rules, grammar.origins)
    g.validate()
    return g


# ---------------------------------------------------------------------------
# character sets

def generalize_charsets(grammar: Grammar, on: bool = True) -> Grammar:
    """Fold keys whose rules are all single characters into one alternation
    (rendered as a character class); language unchanged."""
    if not on:
        return grammar
    out = {}
    for nt, rs in grammar.rules.items():
        if len(rs) >= 2 and all(len(r) == 1 and isinstance(r[0], T) for r in rs):
            arms = tuple((r[0],) for r in rs)
            out[nt] = [(Alt(arms),)]
        else:
            out[nt] = list(rs)
    g = Grammar(grammar.start, out, grammar.origins)
    g.validate()
    return g
