from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from sihinsure.config import KEYS, format_config, parse_config, parse_overrides
from sihinsure.errors import ParseError, ValidationError
from sihinsure.model import default_scenarios


def test_empty_config_is_disease_free_default():
    sc = parse_config("")
    df = default_scenarios("sequential")[0]
    assert sc == df and sc.name == "disease-free"


def test_beta_only_gives_endemic_defaults():
    sc = parse_config("# endemic run\nbeta = 0.003\n")
    assert sc == default_scenarios("sequential")[1]
    assert sc.name == "endemic"


def test_comments_blank_lines_and_spacing():
    sc = parse_config("\n  T=120   # ten years\n\n scheme = euler\n")
    assert sc.policy.horizon == 120 and isinstance(sc.policy.horizon, int)
    assert sc.scheme == "euler"


@pytest.mark.parametrize(
    "text,line",
    [("foo = 1", 1), ("beta = 0.003\nbeta 0.002", 2), ("\n\nmu1 = abc", 3), ("beta = 0.001\nbeta = 0.002", 2), ("= 3", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


@pytest.mark.parametrize("text", ["beta = -1", "dt = 0.07", "T = 12.5", "interest_i = -1", "scheme = midpoint", "S0 = -3"])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_config(text)


def test_overrides():
    assert parse_overrides(["beta=0.003", " dt = 0.1 "]) == {"beta": "0.003", "dt": "0.1"}
    sc = parse_config("beta = 0.001", {"beta": "0.003"})
    assert sc.epidemic.beta == 0.003
    with pytest.raises(ParseError):
        parse_overrides(["nope=1"])
    with pytest.raises(ParseError):
        parse_overrides(["beta"])


def test_format_lists_every_key():
    text = format_config(default_scenarios()[1])
    assert [line.split(" = ")[0] for line in text.splitlines()] == list(KEYS)


positive = st.floats(1e-4, 10.0)


@given(
    st.builds(
        dict,
        beta=st.floats(1e-5, 0.01),
        gamma=positive,
        mu1=st.floats(1e-3, 0.1),
        S0=st.floats(0.0, 1e4),
        T=st.integers(1, 1000),
        dt=st.sampled_from([1.0, 0.5, 0.2, 0.1, 0.05, 1 / 3]),
        interest_i=st.floats(-0.5, 0.5),
        benefit_H=st.floats(0.0, 1e6),
        scheme=st.sampled_from(["euler", "sequential"]),
    )
)
def test_round_trip(values):
    base = default_scenarios()[0]
    sc = replace(
        base,
        epidemic=replace(base.epidemic, beta=values["beta"], gamma=values["gamma"], mu1=values["mu1"]),
        policy=replace(
            base.policy, horizon=values["T"], dt=values["dt"], interest=values["interest_i"], benefit_h=values["benefit_H"]
        ),
        initial=base.initial._replace(S=values["S0"]),
        scheme=values["scheme"],
    )
    assert parse_config(format_config(sc)) == sc
