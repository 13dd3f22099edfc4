import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from rthy import Encoding, StochasticMap

settings.register_profile(
    "default",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def rationals(lo=-4, hi=4, den=4):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=den)


@st.composite
def distributions(draw, size, weight_cap=6):
    """A length-`size` rational probability vector with small denominators."""
    weights = draw(st.lists(st.integers(0, weight_cap), min_size=size, max_size=size)
                   .filter(lambda w: sum(w) > 0))
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


@st.composite
def encodings(draw, max_outcomes=4, max_hypotheses=3, min_hypotheses=2):
    n = draw(st.integers(2, max_outcomes))
    h = draw(st.integers(min_hypotheses, max_hypotheses))
    cols = [draw(distributions(n)) for _ in range(h)]
    return Encoding.from_columns(cols)


@st.composite
def stochastic_maps(draw, n_from, max_to=4):
    n_to = draw(st.integers(1, max_to))
    cols = [draw(distributions(n_to)) for _ in range(n_from)]
    rows = [[cols[j][i] for j in range(n_from)] for i in range(n_to)]
    return StochasticMap.from_rows(rows)
