import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES
from spherical_kit.classify import enumerate_systems
from spherical_kit.errors import InvalidSystemError, ParseError
from spherical_kit.families import a1_system, comb, dc_star, do_pq
from spherical_kit.io import parse_system_text, read_system, serialize_system, system_to_dict
from spherical_kit.rootsys import build_group


def test_minimal_a1_prime():
    s = parse_system_text("group: A1\nsigma: [2a1]\n")
    assert s.sigma == ((2,),) and s.sp == frozenset() and s.a_names == ()


def test_coefficient_lists():
    s = parse_system_text("group: D4\nsigma: [[1, 1, 0, 0], a2+a3, a2+a4]\n")
    assert s == dc_star(4)


@pytest.mark.parametrize(
    "name,factory",
    [("dcstar5.sys", lambda: dc_star(5)), ("dcstar4.sys", lambda: dc_star(4)),
     ("do13.sys", lambda: do_pq(1, 3)), ("comb2.sys", lambda: comb(2)), ("a1.sys", a1_system)],
)
def test_fixtures_match_constructors(name, factory):
    assert read_system(FIXTURES / name) == factory()


def test_misaligned_row():
    text = "group: A1\nsigma: [a1]\na:\n  - {name: p, values: [1, 0]}\n  - {name: m, values: [1]}\n"
    with pytest.raises(ParseError) as exc:
        parse_system_text(text)
    assert exc.value.line == 4
    assert "line 4, column" in str(exc.value)


def test_syntax_error_position():
    with pytest.raises(ParseError) as exc:
        parse_system_text("group: A1\nsigma: [a1\n")
    assert exc.value.line >= 2


@pytest.mark.parametrize(
    "text,fragment",
    [("group: A1\n", "missing key 'sigma'"),
     ("group: Z2\nsigma: []\n", "Z2"),
     ("group: A1\nsigma: [a3]\n", "a3"),
     ("group: A1\nsigma: []\nfoo: 1\n", "unknown key"),
     ("group: A1\nsigma: [a1, a1]\n", "repeated"),
     ("- 1\n", "mapping"),
     ("", "empty")],
)
def test_positioned_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_system_text(text)
    assert fragment in str(exc.value)


def test_axiom_failure_embeds_report():
    text = "group: A1\nsigma: [a1]\na:\n  - {name: p, values: [2]}\n  - {name: m, values: [0]}\n"
    with pytest.raises(InvalidSystemError) as exc:
        parse_system_text(text)
    assert not exc.value.report["A1"].passed
    assert parse_system_text(text, check=False).rho == ((2,), (0,))


def test_serialize_format():
    assert serialize_system(dc_star(5)) == (FIXTURES / "dcstar5.sys").read_text()
    assert system_to_dict(do_pq(1, 3))["sp"] == ["a3", "a4"]


def test_quoted_names_roundtrip():
    s = a1_system().with_a(["d: x", "d#2"], [(1,), (1,)])
    assert parse_system_text(serialize_system(s)) == s


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_roundtrip(data):
    spec = data.draw(st.sampled_from(["A3", "D4", "A1xA2"]))
    systems = enumerate_systems(build_group(spec), max_rank=2, min_rank=0)
    s = data.draw(st.sampled_from(systems))
    text = serialize_system(s)
    assert parse_system_text(text) == s
    assert serialize_system(parse_system_text(text)) == text
