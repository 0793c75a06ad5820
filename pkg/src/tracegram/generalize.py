"""Active learning over parse trees: node compatibility, relabeling, nullability.

Nodes sharing a label are bucketed; membership queries against the subject
decide which of them are mutually replaceable.  Compatible groups get a
generalization suffix, loop suffixes propagate into the pseudo-method stacks
of their descendants, and loop nullability is learned by deleting iteration
runs and re-parsing.
"""

from __future__ import annotations

import dataclasses

from . import subjects as subj
from .tracing import BRANCH, LOOP, METHOD
from .treebuild import (
    Leaf,
    NodeLabel,
    ParseNode,
    build_tree,
    iter_nodes,
    node_at,
    signature,
    tree_text,
)

EMPTY_SIG = (METHOD, ())  # accepting run that consumed nothing: a bare entry node

TRANSITIVE = "transitive"
FULL = "full"


@dataclasses.dataclass
class Verdict:
    accepted: bool
    sig: tuple | None = None


class MembershipOracle:
    """The subject as an accept/reject (and tree shape) query service."""

    def __init__(self, subject, budget: int = 5000):
        self.subject = subject
        self.budget = budget
        self.calls = 0
        self.exhausted = 0
        self.cache: dict[str, Verdict] = {}

    def query(self, text: str) -> Verdict | None:
        """Run the subject on text; None means the budget is used up."""
        if text in self.cache:
            return self.cache[text]
        if self.calls >= self.budget:
            self.exhausted += 1
            return None
        self.calls += 1
        session = subj.run(self.subject, text)
        if session.status != "accepted":
            verdict = Verdict(False)
        else:
            verdict = Verdict(True, signature(build_tree(session)))
        self.cache[text] = verdict
        return verdict


def sig_with(tree: ParseNode, path, replacement_sig) -> tuple:
    """Signature of the tree with the node at path replaced."""
    if not path:
        return replacement_sig
    parts = []
    for k, child in enumerate(tree.children):
        if k == path[0]:
            parts.append(sig_with(child, path[1:], replacement_sig))
        else:
            parts.append(signature(child))
    return (tree.label.kind, tuple(parts))


@dataclasses.dataclass
class NodeBucket:
    key: str
    members: list  # (tree_index, path)
    classes: list | None = None  # list of member lists, first occurrence order
    checks: int = 0


def bucket_nodes(trees) -> list[NodeBucket]:
    """Group every non-leaf node of the corpus by its rendered label key."""
    buckets: dict[str, NodeBucket] = {}
    for t, tree in enumerate(trees):
        for path, node in iter_nodes(tree):
            key = node.label.key()
            if key not in buckets:
                buckets[key] = NodeBucket(key=key, members=[])
            buckets[key].members.append((t, path))
    return list(buckets.values())


def check_compatible(trees, ref_a, ref_b, oracle: MembershipOracle) -> bool:
    """Can the two nodes stand in for each other, both ways?

    Substituting one node's subtree at the other's position must give a
    string the subject accepts whose re-mined tree has the predicted shape.
    A budget-exhausted oracle answers incompatible.
    """
    ta, pa = ref_a
    tb, pb = ref_b
    node_a = node_at(trees[ta], pa)
    node_b = node_at(trees[tb], pb)
    if signature(node_a) == signature(node_b) and tree_text(node_a) == tree_text(node_b):
        return True
    for host_tree, host_path, host_node, guest in (
        (trees[tb], pb, node_b, node_a),
        (trees[ta], pa, node_a, node_b),
    ):
        host_text = tree_text(host_tree)
        candidate = (
            host_text[: host_node.start]
            + tree_text(guest)
            + host_text[host_node.end :]
        )
        expected = sig_with(host_tree, host_path, signature(guest))
        verdict = oracle.query(candidate)
        if verdict is None or not verdict.accepted or verdict.sig != expected:
            return False
    return True


def partition_bucket(trees, bucket: NodeBucket, oracle: MembershipOracle, mode: str = TRANSITIVE) -> NodeBucket:
    """Split a bucket into compatibility classes.

    transitive: each member is checked against one representative per class
    (linear, may over-merge because compatibility is not transitive).
    full: each member must be compatible with every member of the class it
    joins (quadratic, greedy maximal groups in first-occurrence order).
    """
    before = oracle.calls
    classes: list[list] = []
    for ref in bucket.members:
        placed = False
        for cls in classes:
            if mode == FULL:
                ok = all(check_compatible(trees, ref, other, oracle) for other in cls)
            else:
                ok = check_compatible(trees, ref, cls[0], oracle)
            if ok:
                cls.append(ref)
                placed = True
                break
        if not placed:
            classes.append([ref])
    bucket.classes = classes
    bucket.checks = oracle.calls - before
    return bucket


def relabel(trees, buckets) -> list:
    """Rewrite generalization suffixes from the class partition.

    Loop suffixes replace the 0 in ``while(1:0)``; the pseudo-method stacks
    of everything below a relabeled node, down to the next true method, are
    rebuilt so the new identity is visible there too.
    """
    suffix: dict[tuple, int] = {}
    for bucket in buckets:
        for c, cls in enumerate(bucket.classes or [bucket.members], start=1):
            for ref in cls:
                suffix[ref] = c

    def rebuild(t, node, path, frames):
        label = node.label
        new_suffix = suffix.get((t, path), label.gen_suffix)
        if label.kind == METHOD:
            # methods keep a bare identity; the pseudo stack only qualifies
            # loop/branch nodes
            new_label = dataclasses.replace(label, gen_suffix=new_suffix, stack=())
            child_frames = []
        else:
            new_label = dataclasses.replace(label, gen_suffix=new_suffix, stack=tuple(frames))
            child_frames = list(frames) + [(new_label.kind, new_label.static_id, _frame_tag(new_label))]
        children = []
        for k, child in enumerate(node.children):
            if isinstance(child, Leaf):
                children.append(child)
            else:
                children.append(rebuild(t, child, path + (k,), child_frames))
        return ParseNode(label=new_label, start=node.start, end=node.end, children=children)

    return [rebuild(t, tree, (), []) for t, tree in enumerate(trees)]


def _frame_tag(label: NodeLabel) -> str:
    if label.kind == LOOP:
        return str(label.gen_suffix)
    tag = str(label.alt_id)
    if label.gen_suffix > 1:
        tag += f".{label.gen_suffix}"
    return tag


# ---------------------------------------------------------------------------
# nullability

@dataclasses.dataclass
class NullabilityReport:
    nullable_loops: set  # of (method name, loop static id)
    skippable_branches: set  # of branch label keys


def _strip(node: ParseNode, drop: set) -> ParseNode | None:
    """Copy of the subtree without the children at the dropped positions,
    pruning nodes that end up owning no leaves."""
    children = []
    for k, child in enumerate(node.children):
        if id(child) in drop:
            continue
        if isinstance(child, Leaf):
            children.append(child)
        else:
            kept = _strip(child, drop)
            if kept is not None:
                children.append(kept)
    if not children:
        return None
    return ParseNode(label=node.label, start=node.start, end=node.end, children=children)


def _loop_runs(tree: ParseNode):
    """Maximal runs of consecutive same-loop children, per node."""
    for _path, node in iter_nodes(tree):
        run: list = []
        for child in list(node.children) + [None]:
            is_iter = (
                isinstance(child, ParseNode)
                and child.label.kind == LOOP
                and (not run or (child.label.name, child.label.static_id)
                     == (run[0].label.name, run[0].label.static_id))
            )
            if is_iter:
                run.append(child)
            else:
                if run:
                    yield (run[0].label.name, run[0].label.static_id), run
                run = [child] if isinstance(child, ParseNode) and child.label.kind == LOOP else []


def learn_loop_nullability(trees, oracle: MembershipOracle) -> NullabilityReport:
    """A loop is nullable iff deleting every run of its iterations, at every
    position in every tree, yields strings the subject accepts with the
    predicted structure.  Branch skippability is read off the static
    no-else flags."""
    runs_by_loop: dict[tuple, list] = {}
    for t, tree in enumerate(trees):
        for loop_key, run in _loop_runs(tree):
            runs_by_loop.setdefault(loop_key, []).append((t, run))

    nullable = set()
    for loop_key, runs in sorted(runs_by_loop.items()):
        ok = True
        for t, run in runs:
            tree = trees[t]
            text = tree_text(tree)
            lo, hi = run[0].start, run[-1].end
            candidate = text[:lo] + text[hi:]
            stripped = _strip(tree, {id(n) for n in run})
            expected = EMPTY_SIG if stripped is None else signature(stripped)
            verdict = oracle.query(candidate)
            if verdict is None or not verdict.accepted or verdict.sig != expected:
                ok = False
                break
        if ok:
            nullable.add(loop_key)

    skippable = set()
    for tree in trees:
        for _path, node in iter_nodes(tree):
            if node.label.kind == BRANCH and node.label.can_skip:
                skippable.add(node.label.key())
    return NullabilityReport(nullable_loops=nullable, skippable_branches=skippable)


def verify_skippable_branches(trees, report: NullabilityReport, oracle: MembershipOracle) -> NullabilityReport:
    """Actively confirm no-else branches really are skippable (optional)."""
    confirmed = set()
    for key in sorted(report.skippable_branches):
        ok = True
        for t, tree in enumerate(trees):
            for _path, node in iter_nodes(tree):
                for child in node.children:
                    if isinstance(child, ParseNode) and child.label.key() == key:
                        text = tree_text(tree)
                        candidate = text[: child.start] + text[child.end :]
                        stripped = _strip(tree, {id(child)})
                        expected = EMPTY_SIG if stripped is None else signature(stripped)
                        verdict = oracle.query(candidate)
                        if verdict is None or not verdict.accepted or verdict.sig != expected:
                            ok = False
            if not ok:
                break
        if ok:
            confirmed.add(key)
    return NullabilityReport(nullable_loops=report.nullable_loops, skippable_branches=confirmed)


# ---------------------------------------------------------------------------
# transitivity audit

@dataclasses.dataclass
class FalseMerge:
    bucket: str
    class_index: int
    member_a: tuple
    member_b: tuple
    text_a: str
    text_b: str


def audit_transitivity(trees, buckets, oracle: MembershipOracle, max_pairs: int = 12) -> list[FalseMerge]:
    """Probe pairs inside transitive-mode classes for incompatibility.

    The linear partition only compares members against representatives, so
    incompatible pairs can share a class; any found here are reported as
    false merges (they are exactly what --full-compat prevents).
    """
    merges = []
    for bucket in buckets:
        for c, cls in enumerate(bucket.classes or []):
            pairs = []
            for i in range(1, len(cls)):
                for j in range(i + 1, len(cls)):
                    pairs.append((cls[i], cls[j]))
            for ref_a, ref_b in pairs[:max_pairs]:
                if not check_compatible(trees, ref_a, ref_b, oracle):
                    merges.append(
                        FalseMerge(
                            bucket=bucket.key,
                            class_index=c + 1,
                            member_a=ref_a,
                            member_b=ref_b,
                            text_a=tree_text(node_at(trees[ref_a[0]], ref_a[1])),
                            text_b=tree_text(node_at(trees[ref_b[0]], ref_b[1])),
                        )
                    )
                    break  # one witness per class is enough
    return merges
