"""Smoke tests for the python bindings."""

import pytest

import wta

FIXTURE = """
semifield rational
sig a 0
sig b 0
sig g 1
sig h 1
state p q r bot
final p r
sink bot
trans a -> p @ 1
trans b -> q @ 1
trans g(p) -> r @ 2
trans g(q) -> r @ 1
trans g(r) -> r @ 1
trans h(r) -> r @ 1
"""


@pytest.fixture
def quad():
    return wta.Automaton.parse(FIXTURE)


def test_parse_and_serialize_round_trip(quad):
    text = quad.serialize()
    again = wta.Automaton.parse(text)
    assert again.serialize() == text
    assert quad.kind == "rational"
    assert quad.states == ["p", "q", "r", "bot"]
    assert quad.size == 10


def test_evaluate(quad):
    assert quad.evaluate("a") == "1"
    assert quad.evaluate("b") == "0"
    assert quad.evaluate("g(g(a))") == "2"
    with pytest.raises(wta.AutomatonParseError):
        quad.evaluate("g(a,a)")


def test_minimize_and_hyper_minimize(quad):
    assert len(quad.minimize().states) == 4
    out, report = quad.hyper_minimize()
    assert len(out.states) == 3
    assert report.n_input == 4
    assert report.n_output == 3
    assert ["p", "q"] in report.blocks
    assert ("q", "1/2") in report.scaling
    assert "states.output 3" in str(report)


def test_kernels(quad):
    parts = quad.kernels()
    assert sorted(parts["kernel"]) == ["bot", "r"]
    assert sorted(parts["preamble"]) == ["p", "q"]
    assert sorted(parts["cokernel"]) == ["p", "q", "r"]
    assert parts["copreamble"] == ["bot"]


def test_compare_and_check(quad):
    out, _ = quad.hyper_minimize()
    result = wta.compare(quad, out, height=6, tail=3)
    assert result["clean"]
    assert result["mismatches"] == [("b", "0", "1/2")]
    assert wta.is_hyper_minimal(out)
    assert not wta.is_hyper_minimal(quad)


def test_generators():
    a = wta.random_automaton(seed=7, states=4, symbols=3, rank=2, kind="rational")
    b = wta.random_automaton(seed=7, states=4, symbols=3, rank=2, kind="rational")
    assert a.serialize() == b.serialize()

    chain = wta.chain_automaton(64)
    assert len(chain.states) == 64
    collapsed, report = chain.hyper_minimize()
    assert len(collapsed.states) == 1
    assert report.max_rep_changes <= 6


def test_error_mapping():
    with pytest.raises(wta.AutomatonParseError):
        wta.Automaton.parse("semifield rational\ntrans ???")
    with pytest.raises(wta.DomainError):
        a = wta.Automaton.parse(FIXTURE)
        b = wta.random_automaton(seed=1, symbols=1, rank=0)
        wta.compare(a, b)
