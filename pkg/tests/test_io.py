from fractions import Fraction

import pytest

from petrialign import (parse_cost_file, parse_net, parse_tm, parse_trace,
                        serialize_net, tm_accepts)
from petrialign.errors import DisconnectedNet, DuplicateId, ParseError

EX1_TEXT = """\
# running example
place p_init init=1
place p1
place p2
place p3
place p4
place p_final final=1
trans t1 label=a in=p_init out=p1,p2
trans t2 label=a in=p1 out=p3
trans t3 label=b in=p2 out=p4
trans t4 label=~ in=p3,p4 out=p_init
trans t5 label=b in=p3,p4 out=p_final
"""


def test_parse_ex1(ex1):
    system = parse_net(EX1_TEXT)
    assert system == ex1
    assert len(system.net.places) == 6
    assert len(system.net.transitions) == 5
    assert system.net.label("t4").silent


def test_parse_undeclared_place():
    with pytest.raises(ParseError) as err:
        parse_net("place p\ntrans t label=a in=q out=p\n")
    assert err.value.line == 2


def test_parse_duplicate_id():
    with pytest.raises(DuplicateId):
        parse_net("place p\nplace p\n")


def test_parse_disconnected():
    text = ("place p init=1\nplace q\nplace r final=1\n"
            "trans t1 label=a in=p out=q\n")
    with pytest.raises(DisconnectedNet):
        parse_net(text)


def test_parse_bad_directive():
    with pytest.raises(ParseError):
        parse_net("placeholder p\n")


def test_round_trip_is_identity(ex1):
    text = serialize_net(ex1)
    again = parse_net(text)
    assert again == ex1
    assert serialize_net(again) == text


def test_round_trip_multiset_markings():
    from petrialign import gen_shuffle_ssystem
    system = gen_shuffle_ssystem(("a", "b"), 3)
    assert parse_net(serialize_net(system)) == system


def test_parse_trace_forms():
    assert parse_trace("a,b,a,a") == ("a", "b", "a", "a")
    assert parse_trace("") == ()
    assert parse_trace("  ") == ()
    assert parse_trace("a, b") == ("a", "b")
    with pytest.raises(ParseError):
        parse_trace("a,,b")
    with pytest.raises(ParseError):
        parse_trace("a,b c")


def test_parse_cost_file(ex1):
    text = """\
# overrides
sync a t1 1/2
log a 2
model t5 0.25
"""
    c = parse_cost_file(text, ex1)
    assert c.sync("a", "t1") == Fraction(1, 2)
    assert c.sync("a", "t2") == 0            # default kept
    assert c.log("a") == 2
    assert c.log("b") == 1
    assert c.model("t5") == Fraction(1, 4)
    assert c.model("t4") == 0                # silent default


def test_parse_cost_file_errors(ex1):
    with pytest.raises(ParseError):
        parse_cost_file("model nosuch 1\n", ex1)
    with pytest.raises(ParseError):
        parse_cost_file("log a -3\n", ex1)


SCANNER_TEXT = """\
states q0 qacc qrej
blank _
tape a _
space 1
delta q0 a -> qacc _ S
delta q0 _ -> qacc _ S
"""


def test_parse_tm():
    tm = parse_tm(SCANNER_TEXT)
    assert tm.initial == "q0"
    assert tm.blank == "_"
    assert tm.input_alphabet == ("a",)
    assert tm_accepts(tm, ())


def test_parse_tm_missing_directive():
    with pytest.raises(ParseError):
        parse_tm("states q0 qacc qrej\nblank _\n")


def test_parse_tm_partial_rules_rejected():
    text = ("states q0 qacc qrej\nblank _\ntape a _\nspace 1\n"
            "delta q0 a -> qacc _ S\n")
    with pytest.raises(ParseError):
        parse_tm(text)
