"""Bundled worked instances: encodings, channels and toy modules used in
tests, docs and the demo scripts.

The two 3-hypothesis encodings ``incomparable_x``/``incomparable_y`` are
the classic pair that is incomparable under hypothesis-independent
post-processing even though the 2-outcome reachable set of one contains
the other's; the toy modules exercise reachability, cost/yield and
covariance on hand-checkable carriers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Tuple

from .channels import ChannelEncoding, CombWitness
from .exactmath import F0, F1
from .majorize import Encoding
from .order import FinitePreorder, all_downsets, chain, down_closure
from .quantale import CommutativeQuantale, FiniteQuantaleModule, PermutationAction

H = Fraction(1, 2)


def incomparable_x() -> Encoding:
    """4-outcome encoding: a fair coin between outcome 0 and outcome h."""
    return Encoding.from_rows([
        [H, H, H],
        [H, F0, F0],
        [F0, H, F0],
        [F0, F0, H],
    ])


def incomparable_y() -> Encoding:
    """3-outcome encoding: a fair coin between outcomes h and h+2 (mod 3)."""
    return Encoding.from_rows([
        [H, F0, H],
        [H, H, F0],
        [F0, H, H],
    ])


def binary_image_of_x() -> Encoding:
    """2-outcome post-processing of incomparable_x (merge outcomes 0,2,3)
    that no post-processing of incomparable_y can reach."""
    return Encoding.from_rows([
        [H, F0, F0],
        [H, F1, F1],
    ])


def two_point_encoding(lam, nu) -> Encoding:
    """2x2 encoding with top row (lam, nu)."""
    lam, nu = Fraction(lam), Fraction(nu)
    return Encoding.from_rows([[lam, nu], [1 - lam, 1 - nu]])


# --------------------------------------------------------------------------
# Channel instances
# --------------------------------------------------------------------------


def channel_x() -> ChannelEncoding:
    """4-output channel: coin between output 0 and output a+h (mod 4), with
    hypotheses h in {1,2,3} and a a 4-valued input."""
    tensor = []
    for h in (1, 2, 3):
        per_h = []
        for a in range(4):
            col = [F0] * 4
            col[0] += H
            col[(a + h) % 4] += H
            per_h.append(col)
        tensor.append(per_h)
    return ChannelEncoding(tensor)


def channel_y() -> ChannelEncoding:
    """3-output channel: coin between outputs a+h and a+h+2 (mod 3), with
    hypotheses h in {1,2,3} and a 3-valued input."""
    tensor = []
    for h in (1, 2, 3):
        per_h = []
        for a in range(3):
            col = [F0] * 3
            col[(a + h) % 3] += H
            col[(a + h + 2) % 3] += H
            per_h.append(col)
        tensor.append(per_h)
    return ChannelEncoding(tensor)


def comb_witness_x() -> CombWitness:
    """Deterministic post-processing rebuilding channel_x from its a=0 state
    encoding: keep output 0, otherwise add the input."""
    sigma = []
    for b in range(4):
        per_a = []
        for a in range(4):
            target = 0 if b == 0 else (b + a) % 4
            per_a.append(tuple(F1 if o == target else F0 for o in range(4)))
        sigma.append(tuple(per_a))
    return CombWitness(sigma=tuple(sigma))


def comb_witness_y() -> CombWitness:
    """Deterministic post-processing rebuilding channel_y: add the input."""
    sigma = []
    for b in range(3):
        per_a = []
        for a in range(3):
            target = (b + a) % 3
            per_a.append(tuple(F1 if o == target else F0 for o in range(3)))
        sigma.append(tuple(per_a))
    return CombWitness(sigma=tuple(sigma))


def input_ignoring_channel(x: Encoding, inputs: int) -> ChannelEncoding:
    """Channel that discards its input and emits the encoding x."""
    tensor = [[list(x.column(h)) for _ in range(inputs)]
              for h in range(x.hypotheses)]
    return ChannelEncoding(tensor)


# --------------------------------------------------------------------------
# Toy modules
# --------------------------------------------------------------------------


def _function_name(images: tuple, names: tuple) -> str:
    return "f" + "".join("x" if i is None else str(i) for i in images)


def function_module(p: FinitePreorder, names=None,
                    all_functions: bool = False) -> FiniteQuantaleModule:
    """Module of self-maps of a finite preorder's carrier.

    Free transformations are the non-increasing maps (f(x) below x);
    with ``all_functions`` the carrier of transformations is every map,
    otherwise just the free ones.  Action: f |> x = {f(x)}; composition
    is the star.
    """
    n = p.size
    if names is None:
        names = tuple(str(i) for i in range(n))
    downs = [sorted(i for i in range(n) if p.geq(x, i)) for x in range(n)]
    if all_functions:
        pool = list(itertools.product(range(n), repeat=n))
    else:
        pool = [tuple(c) for c in itertools.product(*downs)]
    pool = sorted(set(pool))
    fname = {imgs: _function_name(imgs, names) for imgs in pool}
    star = {}
    for f in pool:
        for g in pool:
            comp = tuple(f[g[i]] for i in range(n))
            star[(fname[f], fname[g])] = [fname[comp]]
    act = {}
    for f in pool:
        for x in range(n):
            act[(fname[f], names[x])] = [names[f[x]]]
    ident = tuple(range(n))
    free = [fname[imgs] for imgs in pool
            if all(imgs[x] in downs[x] for x in range(n))]
    return FiniteQuantaleModule.build(
        transformations=[fname[imgs] for imgs in pool],
        resources=list(names),
        star=star,
        act=act,
        unit=[fname[ident]],
        free=free,
    )


def three_chain_module() -> FiniteQuantaleModule:
    """All 27 self-maps of a 3-chain, free = the 6 non-increasing ones."""
    return function_module(chain(3), all_functions=True)


def diamond_preorder() -> FinitePreorder:
    """2 above the incomparable pair 1, 1p, all above 0."""
    pairs = [(i, i) for i in range(4)] + [(3, 1), (3, 2), (1, 0), (2, 0)]
    return FinitePreorder(4, pairs)


def diamond_module() -> FiniteQuantaleModule:
    """Non-increasing maps of the diamond order on {0, 1, 1p, 2}."""
    return function_module(diamond_preorder(), names=("0", "1", "1p", "2"))


def downset_module(p: FinitePreorder) -> FiniteQuantaleModule:
    """Small canonical module realizing a given preorder as its reachability.

    One projection transformation per downset (acting by intersecting the
    down-closure), plus an identity; free is everything.  Its transformation
    count is #downsets + 1, which keeps exhaustive sweeps cheap.
    """
    n = p.size
    names = tuple(str(i) for i in range(n))
    downsets = all_downsets(p)
    dnames = []
    star = {}
    act = {}
    tags = {}
    for d in downsets:
        tag = "proj" + "".join(str(i) for i in sorted(d))
        tags[d] = tag
        dnames.append(tag)
    for d in downsets:
        for e in downsets:
            star[(tags[d], tags[e])] = [tags[frozenset(d & e)]]
        star[("ident", tags[d])] = [tags[d]]
        star[(tags[d], "ident")] = [tags[d]]
        for x in range(n):
            act[(tags[d], names[x])] = [names[i] for i in d & down_closure(p, [x])]
    star[("ident", "ident")] = ["ident"]
    for x in range(n):
        act[("ident", names[x])] = [names[x]]
    return FiniteQuantaleModule.build(
        transformations=["ident"] + dnames,
        resources=list(names),
        star=star,
        act=act,
        unit=["ident"],
        free=["ident"] + dnames,
    )


def _compose_partial(f: tuple, g: tuple) -> tuple:
    return tuple(None if g[i] is None else f[g[i]] for i in range(len(g)))


def two_level_module() -> Tuple[FiniteQuantaleModule, str]:
    """Two disjoint 3-chains 2>1>0 and 2p>1p>0p, free = per-chain
    non-increasing maps, plus one non-free level-drop map u sending
    2->1p, 1->0p, 2p->1, 1p->0 (undefined on the bottoms).

    Returns (module, name_of_u).  The transformation carrier is the
    star-closure of free + u (76 partial maps).
    """
    names = ("0", "1", "2", "0p", "1p", "2p")
    n = 6
    downs = [[0], [0, 1], [0, 1, 2], [3], [3, 4], [3, 4, 5]]
    free_pool = [tuple(c) for c in itertools.product(*downs)]
    u = (None, 3, 4, None, 0, 1)
    pool = set(free_pool) | {u}
    while True:
        snapshot = list(pool)
        fresh = {_compose_partial(f, g) for f in snapshot for g in snapshot} - pool
        if not fresh:
            break
        pool |= fresh
    atoms = sorted(pool, key=lambda t: tuple(-1 if v is None else v for v in t))
    fname = {imgs: _function_name(imgs, names) for imgs in atoms}
    star = {}
    act = {}
    for f in atoms:
        for g in atoms:
            star[(fname[f], fname[g])] = [fname[_compose_partial(f, g)]]
        for x in range(n):
            act[(fname[f], names[x])] = [] if f[x] is None else [names[f[x]]]
    return (
        FiniteQuantaleModule.build(
            transformations=[fname[t] for t in atoms],
            resources=list(names),
            star=star,
            act=act,
            unit=[fname[tuple(range(n))]],
            free=[fname[t] for t in free_pool],
        ),
        fname[u],
    )


def rotation_module() -> Tuple[FiniteQuantaleModule, PermutationAction]:
    """A base point plus a 3-cycle orbit; transformations are the three
    rotations, the collapse-to-base map, and the three constant maps onto
    orbit points.  Returns the module and the cyclic action."""
    x_names = ("base", "orb1", "orb2", "orb3")

    def rot(k):
        return (0, 1 + (0 + k) % 3, 1 + (1 + k) % 3, 1 + (2 + k) % 3)

    maps = {
        "rot0": rot(0),
        "rot1": rot(1),
        "rot2": rot(2),
        "to_base": (0, 0, 0, 0),
        "const1": (1, 1, 1, 1),
        "const2": (2, 2, 2, 2),
        "const3": (3, 3, 3, 3),
    }
    star = {}
    act = {}
    inverse = {v: k for k, v in maps.items()}
    for a, fa in maps.items():
        for b, fb in maps.items():
            comp = tuple(fa[fb[i]] for i in range(4))
            star[(a, b)] = [inverse[comp]]
        for x in range(4):
            act[(a, x_names[x])] = [x_names[fa[x]]]
    module = FiniteQuantaleModule.build(
        transformations=list(maps),
        resources=list(x_names),
        star=star,
        act=act,
        unit=["rot0"],
        free=["rot0"],
    )
    action = PermutationAction([rot(0), rot(1), rot(2)])
    return module, action


def max_quantale() -> CommutativeQuantale:
    """Levels {0,1,2} combined by max; only level 0 is free.

    A catalysis example: level 1 is not freely reachable from level 0,
    but in the presence of a level-2 catalyst both sides collapse to 2.
    """
    names = ("0", "1", "2")
    box = {}
    for i in range(3):
        for j in range(3):
            box[(names[i], names[j])] = [names[max(i, j)]]
    return CommutativeQuantale.build(names, box, unit=["0"], free=["0"])


# --------------------------------------------------------------------------
# A stochastic-to-Boolean morphism instance
# --------------------------------------------------------------------------


def stochastic_pair_module() -> FiniteQuantaleModule:
    """Five 2x2 stochastic matrices acting on {(1,0), (0,1), (1/2,1/2)}."""
    mats = {
        "id": ((F1, F0), (F0, F1)),
        "swap": ((F0, F1), (F1, F0)),
        "mix": ((H, H), (H, H)),
        "to0": ((F1, F1), (F0, F0)),
        "to1": ((F0, F0), (F1, F1)),
    }
    vecs = {"p0": (F1, F0), "p1": (F0, F1), "even": (H, H)}
    vec_name = {v: k for k, v in vecs.items()}
    mat_name = {m: k for k, m in mats.items()}
    star = {}
    act = {}
    for a, ma in mats.items():
        for b, mb in mats.items():
            prod = tuple(
                tuple(sum((ma[i][k] * mb[k][j] for k in range(2)), F0) for j in range(2))
                for i in range(2))
            star[(a, b)] = [mat_name[prod]]
        for xn, xv in vecs.items():
            out = tuple(sum((ma[i][k] * xv[k] for k in range(2)), F0) for i in range(2))
            act[(a, xn)] = [vec_name[out]]
    return FiniteQuantaleModule.build(
        transformations=list(mats),
        resources=list(vecs),
        star=star,
        act=act,
        unit=["id"],
        free=["id", "mix"],
    )


def boolean_pair_module() -> FiniteQuantaleModule:
    """All nine 2x2 Boolean matrices with nonzero columns acting on supports."""
    cols = ((1, 0), (0, 1), (1, 1))
    code = {(1, 0): "10", (0, 1): "01", (1, 1): "11"}
    mats = {}
    for c0 in cols:
        for c1 in cols:
            mat = ((c0[0], c1[0]), (c0[1], c1[1]))
            mats[f"b{code[c0]}_{code[c1]}"] = mat
    vecs = {"s10": (1, 0), "s01": (0, 1), "s11": (1, 1)}
    vec_name = {v: k for k, v in vecs.items()}
    mat_name = {m: k for k, m in mats.items()}
    star = {}
    act = {}
    for a, ma in mats.items():
        for b, mb in mats.items():
            prod = tuple(
                tuple(int(any(ma[i][k] and mb[k][j] for k in range(2)))
                      for j in range(2))
                for i in range(2))
            star[(a, b)] = [mat_name[prod]]
        for xn, xv in vecs.items():
            out = tuple(int(any(ma[i][k] and xv[k] for k in range(2))) for i in range(2))
            act[(a, xn)] = [vec_name[out]]
    return FiniteQuantaleModule.build(
        transformations=list(mats),
        resources=list(vecs),
        star=star,
        act=act,
        unit=["b10_01"],
        free=["b10_01", "b11_11"],
    )


def support_morphism() -> Tuple[Dict[str, List[str]], Dict[str, List[str]]]:
    """The (ell, f) tables of the support-pattern morphism between the two
    modules above."""
    ell = {
        "id": ["b10_01"],
        "swap": ["b01_10"],
        "mix": ["b11_11"],
        "to0": ["b10_10"],
        "to1": ["b01_01"],
    }
    f = {"p0": ["s10"], "p1": ["s01"], "even": ["s11"]}
    return ell, f
