"""End-to-end mining: trace the corpus, generalize, extract, compact.

Every intermediate grammar stage is kept on the result so callers (tests,
the CLI manifest) can check the mined corpus is still covered at each step.
"""

from __future__ import annotations

import dataclasses

from . import subjects as subj
from .generalize import (
    FULL,
    TRANSITIVE,
    MembershipOracle,
    audit_transitivity,
    bucket_nodes,
    learn_loop_nullability,
    partition_bucket,
    relabel,
    verify_skippable_branches,
)
from .grammar import (
    Grammar,
    apply_nullability,
    compact,
    detect_repetitions,
    extract_grammar,
    generalize_charsets,
)
from .treebuild import build_tree, consumption_monotone


class CorpusError(Exception):
    """A mining seed the subject itself does not accept."""


@dataclasses.dataclass
class MineResult:
    grammar: Grammar
    stages: dict  # stage name -> (grammar, rule count)
    trees: list
    oracle: MembershipOracle
    report: dict

    def stage_grammar(self, name: str) -> Grammar:
        return self.stages[name][0]


STAGES = ("basic", "repetition", "nullability", "compacted", "charsets")


def mine_grammar(
    subject,
    corpus,
    mode: str = TRANSITIVE,
    charset_generalization: bool = True,
    oracle_budget: int = 5000,
    verify_branches: bool = False,
    audit_pairs: int = 12,
) -> MineResult:
    if isinstance(subject, str):
        subject = subj.get(subject)
    corpus = list(corpus)
    if not corpus:
        raise CorpusError("empty mining corpus")
    if mode not in (TRANSITIVE, FULL):
        raise ValueError(f"unknown compatibility mode {mode!r}")

    sessions = []
    for text in corpus:
        session = subj.run(subject, text)
        if session.status != "accepted":
            raise CorpusError(
                f"seed input {text!r} rejected by {subject.name} at position {session.reject_pos}"
            )
        sessions.append(session)

    out_of_order = []
    for text, session in zip(corpus, sessions):
        monotone, violations = consumption_monotone(session)
        if not monotone:
            out_of_order.append({"input": text, "index_pairs": violations})

    trees = [build_tree(s) for s in sessions]
    oracle = MembershipOracle(subject, budget=oracle_budget)
    for text in corpus:  # seed the cache so self-queries are free
        oracle.query(text)

    buckets = bucket_nodes(trees)
    for bucket in buckets:
        partition_bucket(trees, bucket, oracle, mode)
    trees = relabel(trees, buckets)

    false_merges = []
    if mode == TRANSITIVE and audit_pairs > 0:
        false_merges = audit_transitivity(trees, buckets, oracle, max_pairs=audit_pairs)

    nullability = learn_loop_nullability(trees, oracle)
    if verify_branches:
        nullability = verify_skippable_branches(trees, nullability, oracle)

    g_basic = extract_grammar(trees)
    g_rep = detect_repetitions(g_basic)
    g_null = apply_nullability(g_rep, nullability)
    g_comp = compact(g_null)
    g_final = generalize_charsets(g_comp, charset_generalization)

    stages = {
        "basic": (g_basic, g_basic.rule_count()),
        "repetition": (g_rep, g_rep.rule_count()),
        "nullability": (g_null, g_null.rule_count()),
        "compacted": (g_comp, g_comp.rule_count()),
        "charsets": (g_final, g_final.rule_count()),
    }
    report = {
        "subject": subject.name,
        "corpus_size": len(corpus),
        "mode": mode,
        "charset_generalization": charset_generalization,
        "oracle_calls": oracle.calls,
        "oracle_budget": oracle_budget,
        "budget_exhausted_events": oracle.exhausted,
        "buckets": [
            {
                "key": b.key,
                "members": len(b.members),
                "classes": len(b.classes or []),
                "checks": b.checks,
            }
            for b in buckets
        ],
        "false_merges": [
            {
                "bucket": m.bucket,
                "class": m.class_index,
                "text_a": m.text_a,
                "text_b": m.text_b,
            }
            for m in false_merges
        ],
        "out_of_order_scanning": {
            "detected": bool(out_of_order),
            "sessions_affected": len(out_of_order),
            "sessions_total": len(corpus),
            "examples": out_of_order[:3],
        },
        "nullable_loops": sorted(map(list, nullability.nullable_loops)),
        "skippable_branches": sorted(nullability.skippable_branches),
        "stage_rule_counts": {name: stages[name][1] for name in STAGES},
    }
    return MineResult(grammar=g_final, stages=stages, trees=trees, oracle=oracle, report=report)
