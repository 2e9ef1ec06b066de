"""Constructive sequence shortening for bounded free-choice systems.

shorten_biased rearranges a biased firing sequence into no-repeat blocks with
shrinking support and deletes marking-invariant block runs, meeting the
b*k*(k+1)/2 length bound.  shorten_lbfc first searches for a replayable
permutation ordered by a conflict order derived from the input, splits it into
maximal biased segments, and shortens each segment, meeting the cubic bound
b*|T|*(|T|+1)*(|T|+2)/6.  Every rearrangement is verified by replay.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import (BoundAssumptionViolated, NotBiased, NotReplayable)
from .petri import (Marking, PetriNet, fire, fire_sequence, parikh,
                    parikh_dominated)


@dataclass(frozen=True)
class Cluster:
    """Maximal set of transitions sharing exactly the same pre-set."""

    preset: tuple[str, ...]
    members: tuple[str, ...]


def compute_clusters(net: PetriNet) -> tuple[Cluster, ...]:
    """Partition of the transitions by pre-set equality, in declaration order."""
    groups: dict[frozenset, list[str]] = {}
    order: list[frozenset] = []
    for t in net.transitions:
        key = frozenset(net.preset(t))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(t)
    return tuple(Cluster(tuple(sorted(key)), tuple(groups[key])) for key in order)


@dataclass(frozen=True)
class ConflictOrder:
    """Per-cluster total order; transitions are comparable iff they share a cluster."""

    cluster_of: dict[str, int]
    rank: dict[str, int]

    def comparable(self, t1: str, t2: str) -> bool:
        return self.cluster_of[t1] == self.cluster_of[t2]

    def precedes(self, t1: str, t2: str) -> bool:
        """Strict order: same cluster and strictly smaller rank."""
        return self.comparable(t1, t2) and self.rank[t1] < self.rank[t2]


def conflict_order_from_sequence(net: PetriNet, seq: Sequence[str]) -> ConflictOrder:
    """A conflict order agreeing with seq: within each cluster, occurring
    members are ranked by last occurrence (last fired = maximal), non-occurring
    members sit below them in lexicographic order."""
    last: dict[str, int] = {}
    for i, t in enumerate(seq):
        last[t] = i
    cluster_of: dict[str, int] = {}
    rank: dict[str, int] = {}
    for ci, cluster in enumerate(compute_clusters(net)):
        absent = sorted(t for t in cluster.members if t not in last)
        present = sorted((t for t in cluster.members if t in last),
                         key=lambda t: last[t])
        for r, t in enumerate(absent + present):
            cluster_of[t] = ci
            rank[t] = r
    return ConflictOrder(cluster_of, rank)


def is_biased(net: PetriNet, seq: Sequence[str]) -> bool:
    """True iff all distinct occurring transitions have pairwise disjoint pre-sets."""
    support = sorted(set(seq))
    presets = {t: frozenset(net.preset(t)) for t in support}
    for i in range(len(support)):
        for j in range(i + 1, len(support)):
            if presets[support[i]] & presets[support[j]]:
                return False
    return True


def _first_occurrence_blocks(seq: Sequence[str]) -> list[tuple[str, ...]]:
    """Decompose into blocks: each block is the first occurrences (in order) of
    the distinct transitions of the remainder.  Blocks have no repeats and
    non-increasing supports."""
    blocks = []
    rest = list(seq)
    while rest:
        taken = set()
        block = []
        remainder = []
        for t in rest:
            if t in taken:
                remainder.append(t)
            else:
                taken.add(t)
                block.append(t)
        blocks.append(tuple(block))
        rest = remainder
    return blocks


def shorten_biased(net: PetriNet, marking: Marking, seq: Sequence[str],
                   bound: int) -> tuple[str, ...]:
    """Shorten a biased firing sequence to length <= bound*k*(k+1)/2 where k is
    its support size, preserving the end marking and never firing a transition
    more often than the input did."""
    seq = tuple(seq)
    if not is_biased(net, seq):
        raise NotBiased("distinct transitions share pre-set places")
    try:
        goal = fire_sequence(net, marking, seq)
    except Exception as exc:
        raise NotReplayable(str(exc)) from exc
    if bound < 1:
        raise ValueError("bound must be >= 1")

    result: list[str] = []
    current = marking
    blocks = _first_occurrence_blocks(seq)
    while blocks:
        head_support = set(blocks[0])
        run = 1
        while run < len(blocks) and set(blocks[run]) == head_support:
            run += 1
        if run >= bound + 1:
            # With more than b equal-support no-repeat blocks, each block must
            # leave the marking unchanged in a b-bounded system; drop the run.
            probe = fire_sequence(net, current, blocks[0])
            if probe != current:
                raise BoundAssumptionViolated(
                    f"equal-support block changes the marking; "
                    f"system is not {bound}-bounded on this run")
            blocks = blocks[run:]
        else:
            for block in blocks[:run]:
                result.extend(block)
                current = fire_sequence(net, current, block)
            blocks = blocks[run:]

    if fire_sequence(net, marking, result) != goal:
        raise BoundAssumptionViolated("shortened sequence misses the end marking")
    k = len(set(seq))
    if len(result) > bound * k * (k + 1) // 2:
        raise BoundAssumptionViolated("length bound violated")
    if not parikh_dominated(parikh(result), parikh(seq)):
        raise BoundAssumptionViolated("Parikh domination violated")
    return tuple(result)


@dataclass(frozen=True)
class ShortenResult:
    sequence: tuple[str, ...]
    input_length: int
    output_length: int
    bound_value: int
    search_exhausted: bool = False


def _ordered_permutation(net: PetriNet, marking: Marking, seq: Sequence[str],
                         order: ConflictOrder, budget: int) -> tuple[str, ...] | None:
    """Backtracking search for a replayable permutation of seq that is ordered
    with respect to the conflict order.  Returns None when the budget runs out;
    dead (marking, remainder) states are memoized."""
    total = len(seq)
    counts = Counter(seq)
    items = sorted(counts)
    by_cluster: dict[int, list[str]] = {}
    for t in items:
        by_cluster.setdefault(order.cluster_of[t], []).append(t)
    failed: set[tuple[Marking, tuple[int, ...]]] = set()
    chosen: list[str] = []
    nodes = 0

    def key(m):
        return (m, tuple(counts[t] for t in items))

    def placeable(t) -> bool:
        # All strictly smaller cluster mates must be exhausted first.
        for u in by_cluster[order.cluster_of[t]]:
            if u != t and counts[u] > 0 and order.precedes(u, t):
                return False
        return True

    def rec(m) -> bool:
        nonlocal nodes
        if len(chosen) == total:
            return True
        state = key(m)
        if state in failed:
            return False
        nodes += 1
        if nodes > budget:
            return False
        for t in net.transitions:
            if counts[t] > 0 and placeable(t) and \
                    all(m[p] > 0 for p in net.preset(t)):
                counts[t] -= 1
                chosen.append(t)
                if rec(fire(net, m, t)):
                    return True
                chosen.pop()
                counts[t] += 1
        if nodes <= budget:
            failed.add(state)
        return False

    if rec(marking):
        return tuple(chosen)
    return None


def _split_biased_segments(net: PetriNet, seq: Sequence[str]) -> list[tuple[str, ...]]:
    """Split into maximal prefixes that are biased."""
    segments: list[tuple[str, ...]] = []
    current: list[str] = []
    presets: list[frozenset] = []
    support: set[str] = set()
    for t in seq:
        pre = frozenset(net.preset(t))
        if t not in support and any(pre & other for other in presets):
            segments.append(tuple(current))
            current = []
            presets = []
            support = set()
        if t not in support:
            support.add(t)
            presets.append(pre)
        current.append(t)
    if current:
        segments.append(tuple(current))
    return segments


def shorten_lbfc(net: PetriNet, marking: Marking, seq: Sequence[str], bound: int,
                 search_budget: int = 200_000) -> ShortenResult:
    """Shorten a firing sequence of a live b-bounded free-choice system to at
    most bound*|T|*(|T|+1)*(|T|+2)/6 steps with the same end marking and a
    dominated Parikh vector.

    The caller asserts the class preconditions; the construction itself is
    replay-verified, and when the ordered-permutation search exhausts its
    budget the original sequence is returned flagged."""
    seq = tuple(seq)
    t_count = len(net.transitions)
    bound_value = bound * t_count * (t_count + 1) * (t_count + 2) // 6
    try:
        goal = fire_sequence(net, marking, seq)
    except Exception as exc:
        raise NotReplayable(str(exc)) from exc
    if not seq:
        return ShortenResult((), 0, 0, bound_value)

    order = conflict_order_from_sequence(net, seq)
    permuted = _ordered_permutation(net, marking, seq, order, search_budget)
    if permuted is None:
        return ShortenResult(seq, len(seq), len(seq), bound_value,
                             search_exhausted=True)

    result: list[str] = []
    current = marking
    for segment in _split_biased_segments(net, permuted):
        shortened = shorten_biased(net, current, segment, bound)
        result.extend(shortened)
        current = fire_sequence(net, current, shortened)

    if current != goal:
        raise BoundAssumptionViolated("shortened sequence misses the end marking")
    if not parikh_dominated(parikh(result), parikh(seq)):
        raise BoundAssumptionViolated("Parikh domination violated")
    if len(result) > bound_value:
        raise BoundAssumptionViolated("length bound violated")
    return ShortenResult(tuple(result), len(seq), len(result), bound_value)
