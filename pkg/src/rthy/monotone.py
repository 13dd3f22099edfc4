"""Yield/cost constructions over finite modules and the informativeness
ordering of partial valuations.

Values live in the extended rationals: exact ``Fraction`` everywhere,
with ``PLUS_INF``/``MINUS_INF`` as pure order sentinels (they are never
fed into arithmetic, only compared, so exactness is preserved).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FormatError, NotLeftInvariant, NotRightInvariant
from .order import FinitePreorder
from .quantale import FiniteQuantaleModule, is_left_invariant, is_right_invariant

PLUS_INF = float("inf")
MINUS_INF = float("-inf")


def value_to_json(v) -> str:
    if v == PLUS_INF:
        return "+inf"
    if v == MINUS_INF:
        return "-inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def value_from_json(s):
    if s in ("+inf", "inf"):
        return PLUS_INF
    if s == "-inf":
        return MINUS_INF
    if isinstance(s, int):
        return Fraction(s)
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


@dataclass(frozen=True)
class PartialValuation:
    """Partial map from atoms to extended rationals; the dict *is* the domain."""

    values: dict

    def __post_init__(self):
        clean = {}
        for k, v in self.values.items():
            if v in (PLUS_INF, MINUS_INF):
                clean[k] = v
            else:
                clean[k] = Fraction(v)
        object.__setattr__(self, "values", clean)

    @property
    def domain(self) -> frozenset:
        return frozenset(self.values)

    def __call__(self, atom):
        return self.values[atom]

    @staticmethod
    def from_json(doc) -> "PartialValuation":
        try:
            return PartialValuation({k: value_from_json(v) for k, v in doc.items()})
        except (AttributeError, ValueError) as exc:
            raise FormatError("valuation JSON must map atom names to rationals") from exc

    def to_json(self) -> dict:
        return {k: value_to_json(v) for k, v in self.values.items()}


def yield_(m: FiniteQuantaleModule, d_subset, f: PartialValuation, x: str):
    """Best valuation reachable from ``x`` using transformations in D.

    D must absorb free post-processing on the right (D * free inside D),
    otherwise the construction is not a monotone and we refuse to run.
    """
    if not is_right_invariant(m, d_subset):
        raise NotRightInvariant("yield requires D * free to stay inside D")
    image = m.x_set(m.act_set(m.tmask(d_subset), m.xmask([x])))
    vals = [f(y) for y in image & f.domain]
    return max(vals) if vals else MINUS_INF


def yield_witness(m: FiniteQuantaleModule, d_subset, f: PartialValuation, x: str):
    """(value, maximizer) with the lowest-index maximizer, or (−inf, None)."""
    best = yield_(m, d_subset, f, x)
    if best == MINUS_INF:
        return best, None
    image = m.x_set(m.act_set(m.tmask(d_subset), m.xmask([x])))
    for name in m.resources:  # lowest atom index wins
        if name in image and name in f.domain and f(name) == best:
            return best, name
    return best, None


def cost(m: FiniteQuantaleModule, s_subset, f: PartialValuation, x: str):
    """Cheapest valuation of an atom that produces ``x`` via S.

    S must absorb free pre-processing on the left (free * S inside S).
    """
    if not is_left_invariant(m, s_subset):
        raise NotLeftInvariant("cost requires free * S to stay inside S")
    smask = m.tmask(s_subset)
    xbit = m.xmask([x])
    vals = [f(y) for y in f.domain if m.act_set(smask, m.xmask([y])) & xbit]
    return min(vals) if vals else PLUS_INF


def cost_witness(m: FiniteQuantaleModule, s_subset, f: PartialValuation, x: str):
    best = cost(m, s_subset, f, x)
    if best == PLUS_INF:
        return best, None
    smask = m.tmask(s_subset)
    xbit = m.xmask([x])
    for name in m.resources:
        if name in f.domain and f(name) == best and m.act_set(smask, m.xmask([name])) & xbit:
            return best, name
    return best, None


@dataclass(frozen=True)
class InterestingRelation:
    pairs: frozenset  # ordered (a, b) pairs in the valuation's key space


def _atom_index(p: FinitePreorder, key, names):
    if names is not None:
        return names.index(key)
    if not isinstance(key, int):
        raise FormatError("valuation keys must be atom indices, or pass names=")
    return key


def interesting_pairs(p: FinitePreorder, f: PartialValuation, names=None) -> InterestingRelation:
    """Pairs (x, y) on the domain with f(x) < f(y) while x does not dominate y.

    For each such pair, monotonicity of any extension of f certifies that
    x cannot be converted into y.  ``names`` translates string keys to the
    preorder's integer carrier when the valuation is name-based.
    """
    dom = sorted(f.domain, key=lambda k: _atom_index(p, k, names))
    out = set()
    for x in dom:
        for y in dom:
            if f(x) < f(y) and not p.geq(_atom_index(p, x, names), _atom_index(p, y, names)):
                out.add((x, y))
    return InterestingRelation(pairs=frozenset(out))


def more_informative(p: FinitePreorder, f: PartialValuation, g: PartialValuation,
                     names=None) -> bool:
    """Does f witness every inconvertibility that g does?"""
    return interesting_pairs(p, f, names).pairs >= interesting_pairs(p, g, names).pairs
