import itertools
import random

import pytest

from petrialign import (ShuffleInstance, behavioral_class, has_unique_labels,
                        membership, parse_tree, shuffle_member,
                        structural_class, tree_alphabet, tree_language_member,
                        tree_to_wfnet)
from petrialign.errors import ArityError, ParseError
from randgen import random_tree


def all_words(alphabet, up_to):
    for n in range(up_to + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_parse_nested():
    tree = parse_tree("seq(a, par(b, c))")
    assert tree.kind == "seq"
    assert tree.children[0].label == "a"
    assert tree.children[1].kind == "par"


def test_parse_whitespace_insensitive():
    assert parse_tree(" seq ( a ,\n par( b , c ) ) ") == parse_tree("seq(a,par(b,c))")


def test_parse_loop():
    tree = parse_tree("loop(a, b)")
    assert tree.kind == "loop"
    assert len(tree.children) == 2


def test_parse_loop_arity_error():
    with pytest.raises(ArityError):
        parse_tree("loop(a, b, c)")


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_tree("seq(a,")
    assert err.value.line == 1


def test_language_seq_par():
    tree = parse_tree("seq(a, par(b, c))")
    assert tree_language_member(tree, ("a", "b", "c"))
    assert tree_language_member(tree, ("a", "c", "b"))
    assert not tree_language_member(tree, ("b", "c", "a"))


def test_language_loop():
    tree = parse_tree("loop(a, b)")
    assert tree_language_member(tree, ("a",))
    assert tree_language_member(tree, ("a", "b", "a"))
    assert not tree_language_member(tree, ("a", "b"))
    assert not tree_language_member(tree, ())


def test_language_xor_tau():
    tree = parse_tree("xor(tau, a)")
    assert tree_language_member(tree, ())
    assert tree_language_member(tree, ("a",))
    assert not tree_language_member(tree, ("a", "a"))


def test_wfnet_shapes():
    system = tree_to_wfnet(parse_tree("par(a, b)"))
    assert len(system.net.places) == 6
    assert len(system.net.transitions) == 4
    single = tree_to_wfnet(parse_tree("a"))
    assert len(single.net.places) == 2
    assert len(single.net.transitions) == 1


def test_wfnet_loop_language_matches_tree():
    tree = parse_tree("loop(a, b)")
    system = tree_to_wfnet(tree)
    for word in all_words(("a", "b"), 7):
        assert membership(word, system) == tree_language_member(tree, word)


def test_wfnet_class_guarantees():
    rng = random.Random(31)
    for _ in range(20):
        tree = random_tree(rng, depth=3)
        system = tree_to_wfnet(tree)
        srep = structural_class(system.net, system.initial, system.final)
        assert srep.free_choice and srep.workflow_shape
        brep = behavioral_class(system, state_budget=20_000)
        assert brep.safe and brep.sound


def test_translation_language_equivalence_sample():
    rng = random.Random(13)
    for _ in range(10):
        tree = random_tree(rng, depth=3)
        system = tree_to_wfnet(tree)
        alphabet = tree_alphabet(tree) or ("a",)
        for word in all_words(alphabet, 4):
            assert tree_language_member(tree, word) == membership(word, system)


def test_shuffle_member_examples():
    assert shuffle_member(ShuffleInstance(("a", "c", "b", "d"),
                                          (("a", "b"), ("c", "d"))))
    assert not shuffle_member(ShuffleInstance(("b", "a"), (("a", "b"),)))
    assert not shuffle_member(ShuffleInstance(("a",), (("a", "b"),)))


def test_shuffle_member_count():
    """|ab shuffle cd| = 6: enumerate interleavings independently."""
    members = set()
    for positions in itertools.combinations(range(4), 2):
        word = [None] * 4
        first = iter(("a", "b"))
        second = iter(("c", "d"))
        for i in range(4):
            word[i] = next(first) if i in positions else next(second)
        members.add(tuple(word))
    assert len(members) == 6
    for word in members:
        assert shuffle_member(ShuffleInstance(word, (("a", "b"), ("c", "d"))))
    non_members = {w for w in itertools.product("abcd", repeat=4)} - members
    hits = [w for w in non_members
            if shuffle_member(ShuffleInstance(w, (("a", "b"), ("c", "d"))))]
    assert not hits


def test_shuffle_symmetry():
    rng = random.Random(41)
    words = (("a", "b"), ("b", "a"), ("a",))
    for _ in range(20):
        target = tuple(rng.choice("ab") for _ in range(5))
        base = shuffle_member(ShuffleInstance(target, words))
        for perm in itertools.permutations(words):
            assert shuffle_member(ShuffleInstance(target, perm)) == base


def test_par_shuffle_coherence():
    """par of word-leaf sequences agrees with shuffle_member."""
    tree = parse_tree("par(seq(a, b), seq(c, d))")
    words = (("a", "b"), ("c", "d"))
    for target in itertools.product("abcd", repeat=4):
        assert tree_language_member(tree, target) == \
            shuffle_member(ShuffleInstance(target, words))


def test_unique_labels():
    assert has_unique_labels(parse_tree("seq(a, b)"))
    assert not has_unique_labels(parse_tree("par(a, a)"))
    assert has_unique_labels(parse_tree("seq(tau, xor(tau, a))"))


def test_tree_membership_budget():
    from petrialign.errors import BudgetExceeded
    tree = parse_tree("par(seq(a, b), seq(a, b), seq(a, b))")
    with pytest.raises(BudgetExceeded):
        tree_language_member(tree, ("a",) * 6, budget=3)
