from fractions import Fraction

import pytest

import resdiv as r
from conftest import CORPUS_DIR, CORPUS_NAMES, load_doc

SAMPLE = """\
# two curves and a strict branch
curve E1 genus=0 self=-2
curve E2 genus=0 self=-3
meet E1 E2 1
strict C meets E2=2
divisor F E1=1 E2=2 C=1/3
divisor Z 0
"""


# -- rational formatting ------------------------------------------------------

def test_parse_rational_forms():
    assert r.parse_rational("3") == 3
    assert r.parse_rational("-7/2") == Fraction(-7, 2)
    assert r.format_rational(Fraction(4, 2)) == "2"
    assert r.format_rational(Fraction(-1, 3)) == "-1/3"


def test_decimals_rejected():
    with pytest.raises(ValueError):
        r.parse_rational("0.5")
    with pytest.raises(ValueError):
        r.parse_rational("1e-3")


# -- parsing ---------------------------------------------------------------------

def test_parse_sample_document():
    doc = r.parse_graph(SAMPLE)
    m = doc.model
    assert m.labels == ("E1", "E2")
    assert m.matrix == ((-2, 1), (1, -3))
    assert m.strict_curves[0].label == "C"
    assert m.strict_curves[0].incidence == (0, 2)
    f = doc.divisors["F"]
    assert f.exc == (Fraction(1), Fraction(2))
    assert f.strict == (Fraction(1, 3),)
    assert doc.divisors["Z"].is_zero()


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(r.GraphSyntaxError, match="line 2"):
        r.parse_graph("curve E1 genus=0 self=-2\nmeet E1\n")
    with pytest.raises(r.GraphSyntaxError, match="line 1"):
        r.parse_graph("curve E1 genus=0 self=2\n")
    with pytest.raises(r.GraphSyntaxError, match="line 1"):
        r.parse_graph("orbit E1\n")
    with pytest.raises(r.GraphSyntaxError, match="line 2"):
        r.parse_graph("curve E1 genus=0 self=-2\ndivisor F E9=1\n")
    with pytest.raises(r.GraphSyntaxError, match="line 2"):
        r.parse_graph("curve E1 genus=0 self=-2\ndivisor F E1=0.5\n")


def test_duplicate_divisor_rejected():
    text = "curve E1 genus=0 self=-2\ndivisor F E1=1\ndivisor F E1=2\n"
    with pytest.raises(r.GraphSyntaxError, match="duplicate"):
        r.parse_graph(text)


def test_unknown_meet_target_rejected():
    with pytest.raises(r.MalformedGraph):
        r.parse_graph("curve E1 genus=0 self=-2\nmeet E1 E9 1\n")


# -- serialization --------------------------------------------------------------

def test_round_trip_sample():
    doc = r.parse_graph(SAMPLE)
    text = r.serialize_model(doc.model, doc.divisors)
    again = r.parse_graph(text)
    assert again.model == doc.model
    assert again.divisors == doc.divisors


def test_round_trip_is_canonical():
    doc = r.parse_graph(SAMPLE)
    text = r.serialize_model(doc.model, doc.divisors)
    assert r.serialize_model(r.parse_graph(text).model,
                             r.parse_graph(text).divisors) == text


def test_round_trip_corpus():
    for name in CORPUS_NAMES:
        doc = load_doc(name)
        text = r.serialize_model(doc.model, doc.divisors)
        again = r.parse_graph(text)
        assert again.model == doc.model, name
        assert again.divisors == doc.divisors, name


def test_format_divisor():
    doc = r.parse_graph(SAMPLE)
    assert r.format_divisor(doc.divisors["F"]) == "E1=1 E2=2 C=1/3"
    assert r.format_divisor(r.Divisor.zero(doc.model)) == "0"


def test_corpus_files_are_negative_definite():
    assert len(CORPUS_NAMES) >= 10
    for name in CORPUS_NAMES:
        model = load_doc(name).model
        assert r.check_negative_definite(model), name


def test_corpus_dir_exists():
    assert CORPUS_DIR.is_dir()
    assert sorted(p.stem for p in CORPUS_DIR.glob("*.graph")) == CORPUS_NAMES
