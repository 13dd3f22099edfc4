"""Distinguishability of classical channels.

A channel encoding assigns to every (hypothesis, input) pair a
distribution over outputs.  State encodings compare to channel encodings
through input-copy combs: feed the state's outcome together with a
chosen input into a post-processing.  Yields of state monotones extend
to channels by optimizing over evaluated inputs, with an honest
exact/lower-bound flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from .errors import FormatError, HypothesisMismatch, LengthMismatch
from .exactmath import (
    F0,
    F1,
    LpBuilder,
    OPTIMAL,
    format_rational,
    lp_solve,
    parse_rational,
)
from .majorize import Convertible, Encoding, NotConvertible, majorizes


@dataclass(frozen=True)
class ChannelEncoding:
    """Stochastic map (hypothesis, input) -> output distribution.

    ``tensor[h][a]`` is the tuple of output probabilities.
    """

    tensor: tuple

    def __init__(self, tensor):
        tensor = tuple(tuple(tuple(Fraction(v) for v in col) for col in per_h)
                       for per_h in tensor)
        if not tensor or not tensor[0]:
            raise FormatError("channel needs at least one hypothesis and input")
        b = len(tensor[0][0])
        for per_h in tensor:
            if len(per_h) != len(tensor[0]):
                raise FormatError("channel input count differs across hypotheses")
            for col in per_h:
                if len(col) != b:
                    raise FormatError("channel output count differs across columns")
                if any(v < 0 for v in col) or sum(col, F0) != 1:
                    raise FormatError("channel column is not a distribution")
        object.__setattr__(self, "tensor", tensor)

    @property
    def hypotheses(self) -> int:
        return len(self.tensor)

    @property
    def inputs(self) -> int:
        return len(self.tensor[0])

    @property
    def outputs(self) -> int:
        return len(self.tensor[0][0])

    @staticmethod
    def from_json(doc) -> "ChannelEncoding":
        try:
            h = int(doc["hypotheses"])
            a = int(doc["input"])
            bb = int(doc["output"])
            cols = doc["columns"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(
                "channel JSON needs 'hypotheses', 'input', 'output', 'columns'") from exc
        tensor = [[None] * a for _ in range(h)]
        for key, col in cols.items():
            hh, aa = (int(v) for v in key.split(","))
            if not (0 <= hh < h and 0 <= aa < a):
                raise FormatError(f"channel column key {key!r} out of range")
            if len(col) != bb:
                raise FormatError(f"channel column {key!r} has wrong length")
            tensor[hh][aa] = [parse_rational(v) for v in col]
        for hh in range(h):
            for aa in range(a):
                if tensor[hh][aa] is None:
                    raise FormatError(f"channel column {hh},{aa} missing")
        return ChannelEncoding(tensor)

    def to_json(self) -> dict:
        return {
            "hypotheses": self.hypotheses,
            "input": self.inputs,
            "output": self.outputs,
            "columns": {
                f"{h},{a}": [format_rational(v) for v in self.tensor[h][a]]
                for h in range(self.hypotheses)
                for a in range(self.inputs)
            },
        }


def apply_input(psi: ChannelEncoding, mu: Sequence) -> Encoding:
    """State encoding obtained by feeding the input distribution mu."""
    mu = [Fraction(v) for v in mu]
    if len(mu) != psi.inputs:
        raise LengthMismatch(f"channel takes {psi.inputs} inputs, got {len(mu)}")
    if any(v < 0 for v in mu) or sum(mu, F0) != 1:
        raise FormatError("input must be a probability distribution")
    cols = []
    for h in range(psi.hypotheses):
        col = [F0] * psi.outputs
        for a, w in enumerate(mu):
            if w:
                for o in range(psi.outputs):
                    col[o] += w * psi.tensor[h][a][o]
        cols.append(col)
    return Encoding.from_columns(cols)


def delta_input(psi: ChannelEncoding, a: int) -> Encoding:
    return apply_input(psi, [F1 if i == a else F0 for i in range(psi.inputs)])


@dataclass(frozen=True)
class CombWitness:
    """Post-processing sigma(b' | b, a): for each (state outcome, input) a
    distribution over channel outputs."""

    sigma: tuple  # sigma[b][a] = tuple over outputs

    def column(self, b: int, a: int) -> tuple:
        return self.sigma[b][a]


def check_comb_witness(x: Encoding, psi: ChannelEncoding, witness: CombWitness) -> bool:
    """Does wiring x's outcome and a copied input through sigma reproduce psi?"""
    if x.hypotheses != psi.hypotheses:
        return False
    sigma = witness.sigma
    if len(sigma) != x.outcomes or any(len(per_b) != psi.inputs for per_b in sigma):
        return False
    for b in range(x.outcomes):
        for a in range(psi.inputs):
            col = sigma[b][a]
            if len(col) != psi.outputs:
                return False
            if any(Fraction(v) < 0 for v in col) or sum(map(Fraction, col), F0) != 1:
                return False
    for h in range(psi.hypotheses):
        for a in range(psi.inputs):
            for bp in range(psi.outputs):
                total = sum(
                    (x.matrix[b, h] * Fraction(sigma[b][a][bp]) for b in range(x.outcomes)),
                    F0,
                )
                if total != psi.tensor[h][a][bp]:
                    return False
    return True


def comb_simulates(x: Encoding, psi: ChannelEncoding):
    """Can an input-copy comb turn the state encoding x into the channel psi?

    Searches for stochastic sigma(b'|b,a) with
    sum_b x(b|h) sigma(b'|b,a) = psi(b'|h,a); linear, so one LP.
    """
    if x.hypotheses != psi.hypotheses:
        raise HypothesisMismatch(
            f"{x.hypotheses} vs {psi.hypotheses} hypotheses")
    nb, na, nbp = x.outcomes, psi.inputs, psi.outputs
    builder = LpBuilder()
    s = [[[builder.nonneg(f"s[{bp},{b},{a}]") for a in range(na)]
          for b in range(nb)] for bp in range(nbp)]
    for h in range(psi.hypotheses):
        for a in range(na):
            for bp in range(nbp):
                builder.add_eq({s[bp][b][a]: x.matrix[b, h] for b in range(nb)},
                               psi.tensor[h][a][bp])
    for b in range(nb):
        for a in range(na):
            builder.add_eq({s[bp][b][a]: F1 for bp in range(nbp)}, F1)
    builder.minimize({})
    problem = builder.build()
    outcome = lp_solve(problem)
    if outcome.status != OPTIMAL:
        return NotConvertible(farkas=tuple(outcome.farkas), problem=problem)
    values = problem.extract(outcome.primal)
    sigma = tuple(
        tuple(tuple(values[f"s[{bp},{b},{a}]"] for bp in range(nbp)) for a in range(na))
        for b in range(nb)
    )
    return Convertible(witness=CombWitness(sigma=sigma))


def channel_equivalent(psi: ChannelEncoding, x: Encoding) -> bool:
    """Mutual simulation: x builds psi via a comb, and some fixed input plus
    post-processing of psi recovers x."""
    if not comb_simulates(x, psi).convertible:
        return False
    for a in range(psi.inputs):
        if majorizes(delta_input(psi, a), x).convertible:
            return True
    return False


def _simplex_grid(parts: int, denominator: int):
    """All distributions over ``parts`` points with the given denominator."""
    if parts == 1:
        yield (Fraction(1),)
        return
    for cuts in itertools.combinations(range(denominator + parts - 1), parts - 1):
        counts = []
        prev = -1
        for c in cuts:
            counts.append(c - prev - 1)
            prev = c
        counts.append(denominator + parts - 2 - prev)
        yield tuple(Fraction(c, denominator) for c in counts)


@dataclass(frozen=True)
class ChannelYield:
    value: object
    exact: bool
    maximizer: tuple  # the input distribution achieving the value


def channel_yield(psi: ChannelEncoding, f: Callable[[Encoding], object],
                  mode="deltas") -> ChannelYield:
    """Best value of a state monotone over evaluated inputs of the channel.

    ``mode`` is "deltas" (vertex inputs) or ("grid", g) to add the full
    rational simplex grid with denominator g.  The result is exact when
    the channel is equivalent to a maximizing state encoding; otherwise
    it is only a lower bound on the supremum over all inputs.
    """
    deltas = [tuple(F1 if i == a else F0 for i in range(psi.inputs))
              for a in range(psi.inputs)]
    if mode == "deltas":
        inputs = deltas
    else:
        kind, g = mode
        if kind != "grid":
            raise FormatError(f"unknown channel_yield mode {mode!r}")
        seen = set(deltas)
        inputs = list(deltas)
        for mu in _simplex_grid(psi.inputs, int(g)):
            if mu not in seen:
                seen.add(mu)
                inputs.append(mu)
    best = None
    for mu in inputs:
        value = f(apply_input(psi, mu))
        if best is None or value > best:
            best = value
    maximizers = [mu for mu in inputs if f(apply_input(psi, mu)) == best]
    exact = any(channel_equivalent(psi, apply_input(psi, mu)) for mu in maximizers)
    return ChannelYield(value=best, exact=exact, maximizer=maximizers[0])
