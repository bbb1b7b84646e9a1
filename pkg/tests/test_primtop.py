import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from radialfree import primtop as pt
from radialfree.errors import DomainError

S2 = math.sqrt(3) / 2  # edge of the regular spectrum at l = 2


def P(text):
    return pt.parse_prim_set(2, text)


def test_quotient_points():
    assert pt.quotient(2, 1.0) == pt.CHAR_PLUS
    assert pt.quotient(2, -1.0) == pt.CHAR_MINUS
    assert pt.quotient(2, 0.3) == pt.BOT
    assert pt.quotient(2, S2) == pt.BOT
    assert pt.quotient(2, 0.9) == pt.Sph(0.9)
    assert pt.same_primitive_ideal(2, -0.2, 0.8)
    assert not pt.same_primitive_ideal(2, 0.9, 0.95)
    with pytest.raises(DomainError):
        pt.quotient(2, 1.5)


def test_rank_one_rejected():
    with pytest.raises(DomainError):
        pt.quotient(1, 0.5)


def test_closure_examples():
    assert pt.format_prim_set(pt.closure(2, P("point:0.9"))) == "point:0.9,bot"
    expected = pt.prim_set(2, bot=True, char_plus=True, params=[pt.Interval(S2, 1.0)])
    assert pt.closure(2, pt.prim_set(2, params=[pt.Interval(S2, 1.0)])) == expected
    got = pt.closure(2, P("interval:(0.9,0.95)"))
    assert pt.format_prim_set(got) == "interval:[0.9,0.95],bot"


def test_singletons_bot_and_characters_are_closed():
    for text in ("bot", "char+", "char-", "bot,char+,char-"):
        assert pt.is_closed(2, P(text))


def test_not_t1():
    # Bot is in the closure of Sph(0.9) but not conversely
    assert pt.specializes(2, pt.Sph(0.9), pt.BOT)
    assert not pt.specializes(2, pt.BOT, pt.Sph(0.9))


def test_open_sets():
    assert pt.is_open(2, P("interval:(0.9,1)"))
    assert not pt.is_open(2, P("interval:[0.9,0.95)"))
    everything = pt.complement(2, pt.prim_set(2))
    assert pt.is_open(2, everything) and pt.is_closed(2, everything)


def test_complement_involution():
    S = P("interval:(-0.95,-0.9],point:0.9,char+")
    assert pt.complement(2, pt.complement(2, S)) == S
    assert pt.intersection(2, S, pt.complement(2, S)).is_empty()


def test_parse_format_round_trip():
    for text in ("interval:(0.87,0.95],bot", "point:-0.9,char-", "bot,char+,char-", ""):
        S = P(text)
        assert P(pt.format_prim_set(S)) == S


def test_parse_errors():
    for bad in ("interval:(0.5,0.95)", "point:x", "interval:[0.9,1]", "wat"):
        with pytest.raises(DomainError):
            P(bad)


def test_parse_point():
    assert pt.parse_point(2, "point:0.2") == pt.BOT
    assert pt.parse_point(2, "char-") == pt.CHAR_MINUS
    with pytest.raises(DomainError):
        pt.parse_point(2, "sph:0.9")


def test_h1_spectrum():
    assert pt.h1_spectrum_in_rep(2, 0.3).point is None
    assert pt.h1_spectrum_in_rep(2, 0.95).point == 0.95
    assert str(pt.h1_spectrum_in_rep(2, -1.0)).endswith("{-1.0}")


# -- Kuratowski axioms on generated sets ---------------------------------------


def _component(neg):
    lo, hi = (-1.0, -S2) if neg else (S2, 1.0)
    return lo, hi


@st.composite
def intervals(draw):
    neg = draw(st.booleans())
    lo, hi = _component(neg)
    # stay clear of the snapping tolerance around the component ends
    a = draw(st.floats(lo + 1e-9, hi - 1e-9))
    b = draw(st.floats(lo + 1e-9, hi - 1e-9))
    a, b = min(a, b), max(a, b)
    if draw(st.booleans()) or a == b:
        return pt.Interval(a, a, True, True)
    return pt.Interval(a, b, draw(st.booleans()), draw(st.booleans()))


@st.composite
def prim_sets(draw):
    return pt.prim_set(2, draw(st.booleans()), draw(st.booleans()), draw(st.booleans()), draw(st.lists(intervals(), max_size=3)))


@given(prim_sets(), prim_sets())
def test_kuratowski(a, b):
    cl = lambda S: pt.closure(2, S)
    assert pt.is_subset(2, a, cl(a))
    assert cl(cl(a)) == cl(a)
    assert cl(pt.union(a, b)) == pt.union(cl(a), cl(b))
    assert cl(pt.prim_set(2)) == pt.prim_set(2)


# -- continuity --------------------------------------------------------------------


def test_constants_are_continuous():
    ok, cert = pt.is_continuous_function(2, pt.constant_descriptor(2, 2.5))
    assert ok and cert is None


def test_nonconstant_on_parameters_gives_specialization_certificate():
    neg, pos = pt._legal_components(S2)
    f = pt.FunctionDescriptor(0.0, 0.0, 0.0, (pt.Piece(neg, 0.0), pt.Piece(pos, lambda t: t - S2)))
    ok, cert = pt.is_continuous_function(2, f)
    assert not ok and cert.kind == "specialization"


def test_character_jump_gives_discontinuity_certificate():
    neg, pos = pt._legal_components(S2)
    f = pt.FunctionDescriptor(1.0, 2.0, 1.0, (pt.Piece(neg, 1.0), pt.Piece(pos, 1.0)))
    ok, cert = pt.is_continuous_function(2, f)
    assert not ok and cert.kind == "discontinuity" and cert.point == 1.0


def test_sampled_piece():
    neg, pos = pt._legal_components(S2)
    ts = np.linspace(0.9, 0.99, 5)
    f = pt.FunctionDescriptor(3.0, 3.0, 3.0, (pt.Piece(neg, 3.0), pt.Piece(pos, (ts, np.full(5, 3.0)))))
    assert pt.is_continuous_function(2, f)[0]


def test_descriptor_must_cover_parameters():
    neg, _ = pt._legal_components(S2)
    f = pt.FunctionDescriptor(0.0, 0.0, 0.0, (pt.Piece(neg, 0.0),))
    with pytest.raises(DomainError):
        pt.is_continuous_function(2, f)
