"""Turn a sealed accepted session into a non-generalized parse tree.

Ownership of each character goes to the last event that accessed it.  The
event tree (methods nested as called, pseudo methods included) then carries
the owned characters as leaves; events that end up owning nothing anywhere in
their subtree are dropped.  Sibling range overlaps, which only ill-behaved
parsers produce, are resolved in favor of the later accessor.
"""

from __future__ import annotations

import dataclasses
import json

from .tracing import ACCEPTED, BRANCH, LOOP, METHOD, TrackedSession

_KIND_WORD = {LOOP: "while", BRANCH: "if"}


@dataclasses.dataclass(frozen=True)
class NodeLabel:
    """Identity of a parse-tree node.

    ``stack`` holds one frame per pseudo-method ancestor up to the nearest
    true method, outermost first.  Each frame is (kind, static_id, tag) where
    the tag is the loop generalization suffix (0 before generalization) or
    the branch alternative (optionally ".suffix" after generalization).
    """

    kind: str
    name: str  # containing method for pseudo nodes, own name for methods
    static_id: int = 0
    alt_id: int = 0
    stack: tuple = ()
    gen_suffix: int = 0
    can_skip: bool = False  # branch only: conditional chain had no else arm

    def _own_tag(self) -> str:
        if self.kind == LOOP:
            return f"{self.static_id}:{self.gen_suffix}"
        tag = f"{self.static_id}:{self.alt_id}"
        if self.gen_suffix > 1:
            tag += f".{self.gen_suffix}"
        return tag

    def render(self) -> str:
        """Display form: method name bare, pseudos like ``while(1:0)``."""
        if self.kind == METHOD:
            if self.gen_suffix > 1:
                return f"{self.name}.{self.gen_suffix}"
            return self.name
        parts = [f"{sid}:{tag}" for _, sid, tag in self.stack]
        parts.append(self._own_tag())
        return f"{_KIND_WORD[self.kind]}({','.join(parts)})"

    def key(self) -> str:
        """Bucket key: the rendered label, method-qualified for pseudos.

        Static ids are per-method ordinals, so the containing method name is
        needed to keep same-looking pseudos of different methods apart.
        """
        if self.kind == METHOD:
            return self.render()
        return f"{self.name}:{self.render()}"


@dataclasses.dataclass
class Leaf:
    char: str
    index: int


@dataclasses.dataclass
class ParseNode:
    label: NodeLabel
    start: int
    end: int
    children: list  # ParseNode | Leaf, ordered by position

    def is_leaf(self):
        return False


def tree_text(node) -> str:
    """Concatenation of all leaf characters, in order."""
    if isinstance(node, Leaf):
        return node.char
    return "".join(tree_text(c) for c in node.children)


def signature(node):
    """Kind-and-shape fingerprint used for structural tree comparison.

    Generalization suffixes, names and spans are deliberately excluded: a
    re-mined tree of a candidate string must match the predicted tree in
    shape, not in the spelling of its labels.
    """
    if isinstance(node, Leaf):
        return "."
    return (node.label.kind, tuple(signature(c) for c in node.children))


def iter_nodes(tree, path=()):
    """Preorder (path, node) pairs over the non-leaf nodes."""
    yield path, tree
    for k, child in enumerate(tree.children):
        if isinstance(child, ParseNode):
            yield from iter_nodes(child, path + (k,))


def node_at(tree, path):
    node = tree
    for k in path:
        node = node.children[k]
    return node


def to_sexpr(node) -> str:
    """Nested s-expression text, e.g. ``(START (word1 (letter_a "a")))``."""
    if isinstance(node, Leaf):
        return json.dumps(node.char)
    inner = " ".join(to_sexpr(c) for c in node.children)
    return f"({node.label.render()} {inner})" if inner else f"({node.label.render()})"


def assign_consumers(session: TrackedSession) -> dict[int, int]:
    """Map each accessed index to the call id of its last access."""
    if session.status != ACCEPTED:
        raise ValueError("trees are built only from accepting runs")
    consumers: dict[int, int] = {}
    for index, call_id in session.accesses:
        consumers[index] = call_id
    return consumers


class _Draft:
    """Mutable node used while assembling and de-overlapping the call tree."""

    __slots__ = ("event", "own", "children")

    def __init__(self, event):
        self.event = event
        self.own: set[int] = set()
        self.children: list[_Draft] = []

    def indexes(self):
        out = set(self.own)
        for c in self.children:
            out |= c.indexes()
        return out

    def span(self):
        idx = self.indexes()
        return (min(idx), max(idx) + 1) if idx else None


def _prune(draft: _Draft) -> bool:
    """Drop subtrees that own nothing; True when the node survives."""
    draft.children = [c for c in draft.children if _prune(c)]
    return bool(draft.own or draft.children)


def _last_touch(draft: _Draft, lo: int, hi: int, when: dict[int, int]) -> int:
    """Latest access time of any owned index of the subtree inside [lo, hi)."""
    best = -1
    for i in draft.own:
        if lo <= i < hi:
            best = max(best, when[i])
    for c in draft.children:
        best = max(best, _last_touch(c, lo, hi, when))
    return best


def _surrender(draft: _Draft, lo: int, hi: int) -> set[int]:
    """Strip the subtree of every owned index in [lo, hi), returning them."""
    taken = {i for i in draft.own if lo <= i < hi}
    draft.own -= taken
    for c in draft.children:
        taken |= _surrender(c, lo, hi)
    draft.children = [c for c in draft.children if c.own or c.children]
    return taken


def resolve_overlaps(draft: _Draft, when: dict[int, int]) -> _Draft:
    """Make sibling index ranges disjoint, later accessor winning the overlap.

    The losing side gives up every index it owns inside the contested range;
    its sub-nodes contained in the range disappear with their characters
    reattached to the winner.  A child range fully containing another child
    that owns nothing to give up absorbs it outright, and a node-owned leaf
    falling inside a child's range is pushed down into that child, so every
    subtree ends up covering one contiguous slice of the input.
    """
    limit = (len(when) + len(draft.children) + 2) ** 2
    for _ in range(limit):
        spans = [(c, c.span()) for c in draft.children if c.span()]
        spans.sort(key=lambda cs: (cs[1][0], cs[0].event.id))
        conflict = None
        for (a, (alo, ahi)), (b, (blo, bhi)) in zip(spans, spans[1:]):
            if blo < ahi:
                conflict = (a, b, blo, min(ahi, bhi))
                break
        if conflict is None:
            break
        a, b, lo, hi = conflict
        winner, loser = (a, b) if _last_touch(a, lo, hi, when) >= _last_touch(b, lo, hi, when) else (b, a)
        taken = _surrender(loser, lo, hi)
        if taken:
            winner.own |= taken
        else:
            # the contested child has nothing inside the region to yield;
            # dissolve the inner child into the enclosing one
            inner, outer = (a, b) if b.span()[0] <= a.span()[0] and a.span()[1] <= b.span()[1] else (b, a)
            outer.own |= inner.indexes()
            draft.children.remove(inner)
        draft.children = [c for c in draft.children if c.own or c.children]
    else:
        raise RuntimeError("overlap resolution did not converge")
    # node-owned leaves strictly inside a child's range sink into that child
    for c in draft.children:
        lo, hi = c.span()
        inside = {i for i in draft.own if lo <= i < hi}
        if inside:
            draft.own -= inside
            c.own |= inside
    for c in draft.children:
        resolve_overlaps(c, when)
    return draft


def _label_for(session: TrackedSession, event) -> NodeLabel:
    frames = []
    method_name = event.name
    cur = event
    while cur.kind != METHOD:
        parent = session.event(cur.parent_id)
        if parent.kind == METHOD:
            method_name = parent.name
            break
        frames.append((parent.kind, parent.static_id, _frame_tag(parent)))
        cur = parent
    frames.reverse()
    if event.kind == METHOD:
        return NodeLabel(kind=METHOD, name=event.name)
    return NodeLabel(
        kind=event.kind,
        name=method_name,
        static_id=event.static_id,
        alt_id=event.alt_id,
        stack=tuple(frames),
        can_skip=event.can_skip,
    )


def _frame_tag(event) -> str:
    if event.kind == LOOP:
        return "0"
    return str(event.alt_id)


def _emit(draft: _Draft, session: TrackedSession, text: str) -> ParseNode:
    items = [Leaf(text[i], i) for i in sorted(draft.own)]
    for c in draft.children:
        items.append(_emit(c, session, text))
    items.sort(key=lambda it: it.index if isinstance(it, Leaf) else it.start)
    idx = [it.index if isinstance(it, Leaf) else it.start for it in items]
    assert idx == sorted(idx)
    start = min(it.index if isinstance(it, Leaf) else it.start for it in items)
    end = max(it.index + 1 if isinstance(it, Leaf) else it.end for it in items)
    return ParseNode(label=_label_for(session, draft.event), start=start, end=end, children=items)


def build_tree(session: TrackedSession) -> ParseNode:
    """Non-generalized parse tree of an accepting run.

    The concatenated leaves always reproduce the full input; indexes no event
    accessed (a defensive case only) are attached to the innermost node whose
    range already encloses them.
    """
    consumers = assign_consumers(session)
    when = {}
    for t, (index, _cid) in enumerate(session.accesses):
        when[index] = t

    drafts = {ev.id: _Draft(ev) for ev in session.events}
    roots = []
    for ev in session.events:
        if ev.parent_id is None:
            roots.append(drafts[ev.id])
        else:
            drafts[ev.parent_id].children.append(drafts[ev.id])
    for index, call_id in consumers.items():
        drafts[call_id].own.add(index)

    roots = [r for r in roots if _prune(r)]
    if not roots and not session.text:
        # an accepting run over empty input: the entry method with no leaves
        top = next(ev for ev in session.events if ev.parent_id is None)
        return ParseNode(label=_label_for(session, top), start=0, end=0, children=[])
    if len(roots) != 1:
        raise ValueError(f"expected one consuming root event, found {len(roots)}")
    root = roots[0]
    resolve_overlaps(root, when)

    # Defensive: indexes nobody accessed go to the innermost enclosing node.
    owned = root.indexes()
    for i in range(len(session.text)):
        if i not in owned:
            _interpolate(root, i)

    tree = _emit(root, session, session.text)
    if tree_text(tree) != session.text:
        raise RuntimeError("leaf reconstruction failed")
    return tree


def _interpolate(draft: _Draft, index: int):
    for c in draft.children:
        span = c.span()
        if span and span[0] <= index < span[1]:
            _interpolate(c, index)
            return
    draft.own.add(index)


def consumption_monotone(session: TrackedSession):
    """Whether characters were consumed left to right.

    Returns (monotone, violations) where each violation is a pair of indexes
    (i, j) with i < j whose last accesses happened in the opposite order.
    Out-of-order consumption is the signature of scan-ahead parsing and
    degrades mined-grammar quality.
    """
    last: dict[int, int] = {}
    for t, (index, _cid) in enumerate(session.accesses):
        last[index] = t
    order = sorted(last)
    violations = [
        (order[k], order[k + 1])
        for k in range(len(order) - 1)
        if last[order[k]] > last[order[k + 1]]
    ]
    return (not violations, violations[:5])
