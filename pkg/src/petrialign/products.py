"""Trace systems, synchronous products, and reachability graphs.

Product transition ids encode their component pair as "left|right" where the
missing side is the no-move symbol ">>"; component ids are prefixed "L:"/"R:"
so the two id spaces never collide.  `product_parts` decodes back to the
original component ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import BudgetExceeded
from .petri import (DEFAULT_STATE_BUDGET, AcceptingSystem, Label, Marking,
                    PetriNet, enabled_transitions, fire, is_token)

NO_MOVE = ">>"

_LEFT = "L:"
_RIGHT = "R:"


def trace_system(trace: Sequence[str]) -> AcceptingSystem:
    """Line-shaped accepting system whose language is exactly the given trace."""
    for a in trace:
        if not is_token(a):
            raise ValueError(f"trace letter must match [A-Za-z0-9_]+: {a!r}")
    n = len(trace)
    places = tuple(f"p{i}" for i in range(n + 1))
    transitions = tuple(f"t{i}" for i in range(1, n + 1))
    flow = []
    labels = {}
    for i in range(1, n + 1):
        flow.append((f"p{i - 1}", f"t{i}"))
        flow.append((f"t{i}", f"p{i}"))
        labels[f"t{i}"] = Label(trace[i - 1])
    net = PetriNet(places, transitions, flow, labels)
    return AcceptingSystem(net, Marking.of("p0"), Marking.of(f"p{n}"))


def _prefix_marking(marking: Marking, prefix: str) -> Marking:
    return Marking({prefix + p: n for p, n in marking.items()})


def encode_pair(left: str | None, right: str | None) -> str:
    lt = _LEFT + left if left is not None else NO_MOVE
    rt = _RIGHT + right if right is not None else NO_MOVE
    return f"{lt}|{rt}"


def product_parts(tid: str) -> tuple[str | None, str | None]:
    """Original (unprefixed) component ids of a product transition."""
    lt, rt = tid.split("|", 1)
    left = lt[len(_LEFT):] if lt != NO_MOVE else None
    right = rt[len(_RIGHT):] if rt != NO_MOVE else None
    return left, right


def synchronous_product(s1: AcceptingSystem, s2: AcceptingSystem) -> AcceptingSystem:
    """Synchronous product: label-matching pairs plus one-sided moves.

    The effective label of a pair transition is the shared label for
    synchronous pairs and the component label for one-sided moves.
    """
    n1, n2 = s1.net, s2.net
    places = tuple(_LEFT + p for p in n1.places) + tuple(_RIGHT + p for p in n2.places)
    transitions: list[str] = []
    labels: dict[str, Label] = {}
    flow: list[tuple[str, str]] = []

    def add(tid, label, pre, post):
        transitions.append(tid)
        labels[tid] = label
        for p in pre:
            flow.append((p, tid))
        for p in post:
            flow.append((tid, p))

    for t1 in n1.transitions:
        for t2 in n2.transitions:
            if n1.label(t1) == n2.label(t2):
                add(encode_pair(t1, t2), n1.label(t1),
                    [_LEFT + p for p in n1.preset(t1)] + [_RIGHT + p for p in n2.preset(t2)],
                    [_LEFT + p for p in n1.postset(t1)] + [_RIGHT + p for p in n2.postset(t2)])
    for t1 in n1.transitions:
        add(encode_pair(t1, None), n1.label(t1),
            [_LEFT + p for p in n1.preset(t1)],
            [_LEFT + p for p in n1.postset(t1)])
    for t2 in n2.transitions:
        add(encode_pair(None, t2), n2.label(t2),
            [_RIGHT + p for p in n2.preset(t2)],
            [_RIGHT + p for p in n2.postset(t2)])

    net = PetriNet(places, tuple(transitions), flow, labels)
    initial = _prefix_marking(s1.initial, _LEFT) + _prefix_marking(s2.initial, _RIGHT)
    final = _prefix_marking(s1.final, _LEFT) + _prefix_marking(s2.final, _RIGHT)
    return AcceptingSystem(net, initial, final)


@dataclass(frozen=True)
class ReachabilityGraph:
    """Rooted labeled digraph over reachable markings.

    Arc labels are transition ids of the generating system (encoded pair ids
    for products); `labels` maps each arc label to its effective Label.
    """

    root: Marking
    vertices: frozenset[Marking]
    arcs: tuple[tuple[Marking, str, Marking], ...]
    labels: Mapping[str, Label]

    def successors(self) -> dict[Marking, list[tuple[str, Marking]]]:
        adj: dict[Marking, list[tuple[str, Marking]]] = {m: [] for m in self.vertices}
        for src, t, dst in self.arcs:
            adj[src].append((t, dst))
        return adj

    def arc_set(self) -> frozenset[tuple[Marking, str, Marking]]:
        return frozenset(self.arcs)


def build_reachability_graph(sys: AcceptingSystem,
                             state_budget: int = DEFAULT_STATE_BUDGET) -> ReachabilityGraph:
    """Breadth-first closure of the firing rule from the initial marking."""
    if state_budget < 1:
        raise ValueError("state_budget must be >= 1")
    net = sys.net
    root = sys.initial
    seen = {root}
    queue = deque([root])
    arcs: list[tuple[Marking, str, Marking]] = []
    while queue:
        m = queue.popleft()
        for t in enabled_transitions(net, m):
            m2 = fire(net, m, t)
            arcs.append((m, t, m2))
            if m2 not in seen:
                seen.add(m2)
                if len(seen) > state_budget:
                    raise BudgetExceeded(len(seen))
                queue.append(m2)
    return ReachabilityGraph(root, frozenset(seen), tuple(arcs), dict(net.labels))


def product_of_reach_graphs(r1: ReachabilityGraph, r2: ReachabilityGraph) -> ReachabilityGraph:
    """Synchronous product of two reachability graphs.

    Vertices are the pairwise marking sums (with "L:"/"R:" prefixes matching
    `synchronous_product`), arcs combine label-matching component arcs and
    no-move-padded one-sided arcs.  The result equals
    build_reachability_graph(synchronous_product(s1, s2)).
    """
    left_m = {m: _prefix_marking(m, _LEFT) for m in r1.vertices}
    right_m = {m: _prefix_marking(m, _RIGHT) for m in r2.vertices}
    vertices = frozenset(left_m[a] + right_m[b] for a in r1.vertices for b in r2.vertices)
    root = left_m[r1.root] + right_m[r2.root]
    arcs: list[tuple[Marking, str, Marking]] = []
    labels: dict[str, Label] = {}
    for src1, t1, dst1 in r1.arcs:
        for src2, t2, dst2 in r2.arcs:
            if r1.labels[t1] == r2.labels[t2]:
                tid = encode_pair(t1, t2)
                labels[tid] = r1.labels[t1]
                arcs.append((left_m[src1] + right_m[src2], tid, left_m[dst1] + right_m[dst2]))
    for src1, t1, dst1 in r1.arcs:
        tid = encode_pair(t1, None)
        labels[tid] = r1.labels[t1]
        for b in r2.vertices:
            arcs.append((left_m[src1] + right_m[b], tid, left_m[dst1] + right_m[b]))
    for src2, t2, dst2 in r2.arcs:
        tid = encode_pair(None, t2)
        labels[tid] = r2.labels[t2]
        for a in r1.vertices:
            arcs.append((left_m[a] + right_m[src2], tid, left_m[a] + right_m[dst2]))
    return ReachabilityGraph(root, vertices, tuple(arcs), labels)
