import random

import pytest

from petrialign import (AcceptingSystem, Label, Marking, PetriNet,
                        brute_force_oracle, fire_sequence, optimal_alignment,
                        optimal_alignment_acyclic, realize_parikh_acyclic,
                        standard_costs, trace_system, validate_alignment)
from petrialign.errors import Infeasible, NotAcyclic, StuckContradiction
from randgen import random_acyclic_system, random_trace

TRACE = ("a", "b", "a", "a")


def test_acyclic_variant_agrees_with_generic(ex1_acyclic):
    special = optimal_alignment_acyclic(TRACE, ex1_acyclic)
    generic = optimal_alignment(TRACE, ex1_acyclic)
    assert special.cost == generic.cost == 2
    assert special.algorithm == "acyclic"
    assert validate_alignment(special.alignment, TRACE, ex1_acyclic,
                              standard_costs(ex1_acyclic)) == special.cost


def test_identity_instance_is_free():
    system = trace_system(("a", "b", "c"))
    result = optimal_alignment_acyclic(("a", "b", "c"), system)
    assert result.cost == 0
    assert all(m.kind == "sync" for m in result.alignment)


def test_infeasible_final_marking():
    net = PetriNet(("p", "q", "island"), ("t",),
                   [("p", "t"), ("t", "q")], {"t": Label("a")})
    system = AcceptingSystem(net, Marking.of("p"), Marking.of("island"))
    with pytest.raises(Infeasible):
        optimal_alignment_acyclic((), system)


def test_rejects_cyclic_model(ex1):
    with pytest.raises(NotAcyclic):
        optimal_alignment_acyclic(TRACE, ex1)


def test_crossing_sync_pairs_need_scheduling():
    """Model is b-then-a; the cheap equation solution syncing both letters of
    the trace <a,b> is unrealizable, so the solver must return 2."""
    net = PetriNet(("q0", "q1", "q2"), ("tb", "ta"),
                   [("q0", "tb"), ("tb", "q1"), ("q1", "ta"), ("ta", "q2")],
                   {"tb": Label("b"), "ta": Label("a")})
    system = AcceptingSystem(net, Marking.of("q0"), Marking.of("q2"))
    special = optimal_alignment_acyclic(("a", "b"), system)
    assert special.cost == optimal_alignment(("a", "b"), system).cost == 2
    assert validate_alignment(special.alignment, ("a", "b"), system,
                              standard_costs(system)) == 2


def test_realize_line():
    net = trace_system(("a", "b")).net
    assert realize_parikh_acyclic(net, Marking.of("p0"), {"t1": 1, "t2": 1}) \
        == ("t1", "t2")


def test_realize_zero_vector(ex1_acyclic):
    assert realize_parikh_acyclic(ex1_acyclic.net, ex1_acyclic.initial, {}) == ()


def test_realize_parallel_branches():
    net = PetriNet(("s", "u", "v", "w"), ("t0", "t1", "t2", "t3"),
                   [("s", "t0"), ("t0", "u"), ("t0", "v"),
                    ("u", "t1"), ("t1", "w"), ("v", "t2"), ("t2", "w"),
                    ("w", "t3")],
                   {t: Label(a) for t, a in
                    zip(("t0", "t1", "t2", "t3"), "xyzq")})
    counts = {"t0": 1, "t1": 1, "t2": 1}
    seq = realize_parikh_acyclic(net, Marking.of("s"), counts)
    end = fire_sequence(net, Marking.of("s"), seq)
    assert end == Marking({"w": 2})
    assert sorted(seq) == ["t0", "t1", "t2"]


def test_realize_stuck_contradiction():
    net = trace_system(("a", "b")).net
    with pytest.raises(StuckContradiction):
        realize_parikh_acyclic(net, Marking.of("p0"), {"t2": 1})


def test_agreement_and_realizability_on_random_acyclic():
    rng = random.Random(23)
    done = 0
    while done < 25:
        system = random_acyclic_system(rng)
        if system is None:
            continue
        trace = random_trace(rng, max_len=4)
        special = optimal_alignment_acyclic(trace, system)
        assert special.cost == optimal_alignment(trace, system).cost
        assert special.cost == brute_force_oracle(trace, system)
        assert validate_alignment(special.alignment, trace, system,
                                  standard_costs(system)) == special.cost
        done += 1
