"""Cost-minimal reachability search, the generic alignment solver, membership,
the exhaustive oracle, and the class-aware dispatcher.

All searches work on integer-scaled exact costs: the least common multiple of
the cost denominators turns every weight into a non-negative int, so heap and
DP arithmetic stay exact and fast; results are converted back to Fractions.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .classify import DEFAULT_B_MAX, behavioral_class, structural_class
from .costs import CostFunction, Move, standard_costs
from .errors import (BudgetExceeded, CapExhausted, NotEasySound, Unreachable)
from .petri import (DEFAULT_STATE_BUDGET, AcceptingSystem, Marking, PetriNet,
                    enabled_transitions, fire)
from .products import product_parts, synchronous_product, trace_system


@dataclass(frozen=True)
class AlignResult:
    alignment: tuple[Move, ...]
    cost: Fraction
    algorithm: str
    states_expanded: int
    lbfc_cap: int | None = None


@dataclass(frozen=True)
class Budgets:
    states: int = DEFAULT_STATE_BUDGET
    nodes: int = DEFAULT_STATE_BUDGET
    b_max: int = DEFAULT_B_MAX


def scale_weights(costs: Mapping[str, Fraction]) -> tuple[dict[str, int], int]:
    """Common-denominator integer weights plus the scale factor."""
    scale = math.lcm(*(Fraction(v).denominator for v in costs.values())) if costs else 1
    scaled = {}
    for t, v in costs.items():
        v = Fraction(v)
        if v < 0:
            raise ValueError(f"cost of {t!r} is negative")
        scaled[t] = int(v * scale)
    return scaled, scale


def dijkstra_least_cost(net: PetriNet, initial: Marking, weight: Mapping[str, int],
                        target: Marking, state_budget: int,
                        prio: Mapping[str, tuple] | None = None):
    """Least-cost firing sequence to the target over the reachable state space.

    Equal-cost frontier entries expand in (prio, insertion) order, which pins
    down a reproducible witness sequence.  Returns (cost, sequence, settled).
    """
    dist: dict[Marking, int] = {initial: 0}
    parent: dict[Marking, tuple[Marking, str] | None] = {initial: None}
    settled: set[Marking] = set()
    heap: list = [(0, (), 0, initial)]
    counter = 1
    while heap:
        cost, _, _, m = heapq.heappop(heap)
        if m in settled:
            continue
        settled.add(m)
        if len(settled) > state_budget:
            raise BudgetExceeded(len(settled))
        if m == target:
            seq = []
            cur = m
            while parent[cur] is not None:
                cur, t = parent[cur]
                seq.append(t)
            return cost, tuple(reversed(seq)), len(settled)
        for t in enabled_transitions(net, m):
            m2 = fire(net, m, t)
            if m2 in settled:
                continue
            nc = cost + weight[t]
            if m2 not in dist or nc < dist[m2]:
                dist[m2] = nc
                parent[m2] = (m, t)
                key = prio[t] if prio is not None else (0, t)
                heapq.heappush(heap, (nc, key, counter, m2))
                counter += 1
    raise Unreachable(f"marking {target!r} is not reachable")


def min_cost_reach(net: PetriNet, initial: Marking,
                   costs: Mapping[str, Fraction | int],
                   target: Marking,
                   state_budget: int = DEFAULT_STATE_BUDGET) -> tuple[Fraction, tuple[str, ...]]:
    """Least-cost firing sequence from `initial` to `target`.

    Transitions missing from `costs` count as free, so an all-empty mapping
    reduces the problem to plain reachability.
    """
    table = {t: Fraction(costs.get(t, 0)) for t in net.transitions}
    weight, scale = scale_weights(table)
    cost, seq, _ = dijkstra_least_cost(net, initial, weight, target, state_budget)
    return Fraction(cost, scale), seq


# Expansion preference among equal-cost product moves.
_KIND_SYNC, _KIND_MODEL, _KIND_LOG = 0, 1, 2


def _product_move_tables(trace: Sequence[str], product: AcceptingSystem,
                         c: CostFunction):
    """Per product transition: exact cost, tie-break priority, decoded move."""
    costs: dict[str, Fraction] = {}
    prio: dict[str, tuple] = {}
    moves: dict[str, Move] = {}
    tnet = product.net
    for tid in tnet.transitions:
        left, right = product_parts(tid)
        if left is not None and right is not None:
            letter = tnet.label(tid).name
            costs[tid] = c.sync(letter, right)
            prio[tid] = (_KIND_SYNC, right)
            moves[tid] = Move(letter, right)
        elif right is not None:
            costs[tid] = c.model(right)
            prio[tid] = (_KIND_MODEL, right)
            moves[tid] = Move(None, right)
        else:
            letter = tnet.label(tid).name
            costs[tid] = c.log(letter)
            prio[tid] = (_KIND_LOG, left)
            moves[tid] = Move(letter, None)
    return costs, prio, moves


def optimal_alignment(trace: Sequence[str], sys: AcceptingSystem,
                      c: CostFunction | None = None,
                      state_budget: int = DEFAULT_STATE_BUDGET) -> AlignResult:
    """Globally optimal alignment via least-cost search on the synchronous product.

    The final product marking is unreachable exactly when the model is not
    easy-sound, which surfaces as NotEasySound.
    """
    if c is None:
        c = standard_costs(sys)
    trace = tuple(trace)
    product = synchronous_product(trace_system(trace), sys)
    costs, prio, moves = _product_move_tables(trace, product, c)
    weight, scale = scale_weights(costs)
    try:
        cost, seq, settled = dijkstra_least_cost(
            product.net, product.initial, weight, product.final, state_budget, prio)
    except Unreachable as exc:
        raise NotEasySound("final marking unreachable; the model accepts no trace") from exc
    return AlignResult(tuple(moves[t] for t in seq), Fraction(cost, scale),
                       "generic", settled)


def membership(trace: Sequence[str], sys: AcceptingSystem,
               state_budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """Language membership: does a perfect (cost-0) alignment exist?

    Searches synchronous and silent model moves only, so easy-soundness of the
    model is not required for termination.
    """
    trace = tuple(trace)
    net = sys.net
    silents = [t for t in net.transitions if net.label(t).silent]
    by_letter: dict[str, list[str]] = {}
    for t in net.transitions:
        label = net.label(t)
        if not label.silent:
            by_letter.setdefault(label.name, []).append(t)
    goal = (len(trace), sys.final)
    start = (0, sys.initial)
    if start == goal:
        return True
    seen = {start}
    stack = [start]
    while stack:
        pos, m = stack.pop()
        nexts = []
        if pos < len(trace):
            for t in by_letter.get(trace[pos], ()):
                if all(m[p] > 0 for p in net.preset(t)):
                    nexts.append((pos + 1, fire(net, m, t)))
        for t in silents:
            if all(m[p] > 0 for p in net.preset(t)):
                nexts.append((pos, fire(net, m, t)))
        for state in nexts:
            if state == goal:
                return True
            if state not in seen:
                seen.add(state)
                if len(seen) > state_budget:
                    raise BudgetExceeded(len(seen), what="states")
                stack.append(state)
    return False


def lbfc_length_bound(t_count: int, b: int, trace_len: int) -> int:
    """Alignment-length cap for live b-bounded free-choice systems:
    (trace_len + 1) * (b * t * (t+1) * (t+2) / 6 + 1)."""
    if t_count < 0 or trace_len < 0:
        raise ValueError("counts must be non-negative")
    if b < 1:
        raise ValueError("bound must be >= 1")
    return (trace_len + 1) * (b * t_count * (t_count + 1) * (t_count + 2) // 6 + 1)


def brute_force_oracle(trace: Sequence[str], sys: AcceptingSystem,
                       c: CostFunction | None = None,
                       cost_cap: Fraction | None = None,
                       length_cap: int | None = None,
                       state_cap: int = 500_000) -> Fraction:
    """Exhaustive least-cost over move sequences of length <= length_cap and
    cost <= cost_cap, by bounded-horizon value iteration over
    (trace position, marking) states.

    With no caps the iteration runs to its fixed point, which is the exact
    optimum.  CapExhausted means the optimum may exceed the caps.
    """
    if c is None:
        c = standard_costs(sys)
    trace = tuple(trace)
    net = sys.net
    by_letter: dict[str, list[str]] = {}
    for t in net.transitions:
        label = net.label(t)
        if not label.silent:
            by_letter.setdefault(label.name, []).append(t)

    start = (0, sys.initial)
    goal = (len(trace), sys.final)
    index = {start: 0}
    states = [start]
    raw_succ: list[list[tuple[int, Fraction]]] = []
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            pos, m = state
            outs: list[tuple[tuple[int, Marking], Fraction]] = []
            if pos < len(trace):
                letter = trace[pos]
                for t in by_letter.get(letter, ()):
                    if all(m[p] > 0 for p in net.preset(t)):
                        outs.append(((pos + 1, fire(net, m, t)), c.sync(letter, t)))
                outs.append(((pos + 1, m), c.log(letter)))
            for t in net.transitions:
                if all(m[p] > 0 for p in net.preset(t)):
                    outs.append(((pos, fire(net, m, t)), c.model(t)))
            row = []
            for succ_state, w in outs:
                j = index.get(succ_state)
                if j is None:
                    j = len(states)
                    index[succ_state] = j
                    states.append(succ_state)
                    if len(states) > state_cap:
                        raise BudgetExceeded(len(states), what="states")
                    nxt.append(succ_state)
                row.append((j, w))
            raw_succ.append(row)
        frontier = nxt

    denoms = [w.denominator for row in raw_succ for _, w in row]
    scale = math.lcm(*denoms) if denoms else 1
    succ = [[(j, int(w * scale)) for j, w in row] for row in raw_succ]

    inf = float("inf")
    dp = [inf] * len(states)
    goal_idx = index.get(goal)
    if goal_idx is not None:
        dp[goal_idx] = 0
        steps = 0
        while length_cap is None or steps < length_cap:
            changed = False
            new = list(dp)
            for i, row in enumerate(succ):
                best = dp[i]
                for j, w in row:
                    cand = w + dp[j]
                    if cand < best:
                        best = cand
                if best < new[i]:
                    new[i] = best
                    changed = True
            dp = new
            steps += 1
            if not changed:
                break
    answer = dp[0]
    if answer == inf:
        raise CapExhausted("no alignment within the length cap")
    result = Fraction(int(answer), scale)
    if cost_cap is not None and result > cost_cap:
        raise CapExhausted(f"optimum {result} exceeds cost cap {cost_cap}")
    return result


def dispatch_align(trace: Sequence[str], sys: AcceptingSystem,
                   c: CostFunction | None = None,
                   budgets: Budgets | None = None) -> AlignResult:
    """Route to the cheapest applicable solver based on the classifiers.

    Single-token S-systems go to the reachability-graph-product solver,
    acyclic systems to the marking-equation solver, everything else to the
    generic product search.  For live (or sound workflow-shaped) bounded
    free-choice systems an alignment-length certificate cap is attached.
    """
    from .acyclic import optimal_alignment_acyclic
    from .ssystem import optimal_alignment_ssystem

    if c is None:
        c = standard_costs(sys)
    if budgets is None:
        budgets = Budgets()
    srep = structural_class(sys.net, sys.initial, sys.final)

    cap = None
    if srep.free_choice:
        try:
            brep = behavioral_class(sys, budgets.states)
            if brep.bound_found and (brep.live or (brep.sound and srep.workflow_shape)):
                cap = lbfc_length_bound(len(sys.net.transitions), brep.bound_found,
                                        len(tuple(trace)))
        except BudgetExceeded:
            cap = None

    if srep.s_net and sys.initial.total() == 1:
        result = optimal_alignment_ssystem(trace, sys, c)
    elif srep.acyclic:
        result = optimal_alignment_acyclic(trace, sys, c, node_budget=budgets.nodes)
    else:
        result = optimal_alignment(trace, sys, c, state_budget=budgets.states)
    return replace(result, lbfc_cap=cap)
