"""Finite quantale modules with designated free transformation sets.

Atoms (transformations and resources) are identified by name; subsets
travel through the API as frozensets of names and live internally as
bitmasks.  Composition/action tables are total, with absent entries
meaning the empty set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Tuple

from .errors import (
    FormatError,
    InvalidModule,
    NotLeftInvariant,
    NotReflexiveTransitive,
    NotRightInvariant,
)
from .order import FinitePreorder


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Violation:
    """Named axiom failure with the witnessing atoms."""

    kind: str
    witness: tuple = ()

    def __str__(self):
        if self.witness:
            return f"{self.kind}{self.witness}"
        return self.kind


def _index_names(names) -> Tuple[tuple, dict]:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise FormatError("duplicate atom names")
    for n in names:
        if "," in n:
            raise FormatError(f"atom name {n!r} may not contain a comma")
    return names, {n: i for i, n in enumerate(names)}


def _mask_from(subset, index: dict) -> int:
    if isinstance(subset, int):
        return subset
    mask = 0
    for item in subset:
        if item not in index:
            raise FormatError(f"unknown atom {item!r}")
        mask |= 1 << index[item]
    return mask


def _names_from(mask: int, names: tuple) -> FrozenSet[str]:
    return frozenset(names[i] for i in _bits(mask))


@dataclass(frozen=True)
class FiniteQuantaleModule:
    transformations: tuple
    resources: tuple
    star_table: tuple  # star_table[i][j] = bitmask over transformations
    act_table: tuple   # act_table[i][x]  = bitmask over resources
    unit_mask: int
    free_mask: int
    _tindex: dict = field(compare=False, repr=False, default=None)
    _xindex: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_tindex", {n: i for i, n in enumerate(self.transformations)})
        object.__setattr__(self, "_xindex", {n: i for i, n in enumerate(self.resources)})

    # -- construction ------------------------------------------------------

    @staticmethod
    def build(transformations, resources, star: dict, act: dict, unit, free) -> "FiniteQuantaleModule":
        tnames, tindex = _index_names(transformations)
        xnames, xindex = _index_names(resources)
        nt, nx = len(tnames), len(xnames)
        star_table = [[0] * nt for _ in range(nt)]
        for (a, b), out in star.items():
            star_table[tindex[a]][tindex[b]] = _mask_from(out, tindex)
        act_table = [[0] * nx for _ in range(nt)]
        for (a, x), out in act.items():
            act_table[tindex[a]][xindex[x]] = _mask_from(out, xindex)
        return FiniteQuantaleModule(
            transformations=tnames,
            resources=xnames,
            star_table=tuple(tuple(r) for r in star_table),
            act_table=tuple(tuple(r) for r in act_table),
            unit_mask=_mask_from(unit, tindex),
            free_mask=_mask_from(free, tindex),
        )

    @staticmethod
    def from_json(doc) -> "FiniteQuantaleModule":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            tnames = list(doc["T"])
            xnames = list(doc["X"])
        except (KeyError, TypeError) as exc:
            raise FormatError("module JSON needs 'T' and 'X' atom lists") from exc
        star = {}
        for key, out in doc.get("star", {}).items():
            a, b = key.split(",")
            star[(a, b)] = out
        act = {}
        for key, out in doc.get("act", {}).items():
            a, x = key.split(",")
            act[(a, x)] = out
        return FiniteQuantaleModule.build(
            tnames, xnames, star, act, doc.get("unit", []), doc.get("free", [])
        )

    def to_json(self) -> dict:
        star = {}
        for i, a in enumerate(self.transformations):
            for j, b in enumerate(self.transformations):
                if self.star_table[i][j]:
                    star[f"{a},{b}"] = sorted(_names_from(self.star_table[i][j], self.transformations))
        act = {}
        for i, a in enumerate(self.transformations):
            for j, x in enumerate(self.resources):
                if self.act_table[i][j]:
                    act[f"{a},{x}"] = sorted(_names_from(self.act_table[i][j], self.resources))
        return {
            "T": list(self.transformations),
            "X": list(self.resources),
            "unit": sorted(self.t_set(self.unit_mask)),
            "free": sorted(self.t_set(self.free_mask)),
            "star": star,
            "act": act,
        }

    @property
    def free(self) -> FrozenSet[str]:
        return _names_from(self.free_mask, self.transformations)

    @property
    def unit(self) -> FrozenSet[str]:
        return _names_from(self.unit_mask, self.transformations)

    # -- masks and lifted operations ---------------------------------------

    def tmask(self, subset) -> int:
        return _mask_from(subset, self._tindex)

    def xmask(self, subset) -> int:
        return _mask_from(subset, self._xindex)

    def t_set(self, mask: int) -> FrozenSet[str]:
        return _names_from(mask, self.transformations)

    def x_set(self, mask: int) -> FrozenSet[str]:
        return _names_from(mask, self.resources)

    def star_set(self, left: int, right: int) -> int:
        out = 0
        for i in _bits(left):
            row = self.star_table[i]
            for j in _bits(right):
                out |= row[j]
        return out

    def act_set(self, tmask: int, xmask: int) -> int:
        out = 0
        for i in _bits(tmask):
            row = self.act_table[i]
            for j in _bits(xmask):
                out |= row[j]
        return out


def validate(m: FiniteQuantaleModule) -> list:
    """All module/free-set axiom violations, each naming its witnesses."""
    out = []
    nt = len(m.transformations)
    nx = len(m.resources)
    tb = m.star_table
    # associativity of star on atom triples (unions lift it to all sets)
    for i in range(nt):
        for j in range(nt):
            ij = tb[i][j]
            for k in range(nt):
                left = m.star_set(ij, 1 << k)
                right = m.star_set(1 << i, tb[j][k])
                if left != right:
                    out.append(Violation("AssociativityViolation",
                                         (m.transformations[i], m.transformations[j],
                                          m.transformations[k])))
    # mixed associativity (S*T) |> Y = S |> (T |> Y)
    for i in range(nt):
        for j in range(nt):
            ij = tb[i][j]
            for x in range(nx):
                left = m.act_set(ij, 1 << x)
                right = m.act_set(1 << i, m.act_table[j][x])
                if left != right:
                    out.append(Violation("MixedAssociativityViolation",
                                         (m.transformations[i], m.transformations[j],
                                          m.resources[x])))
    # the unit is an identity for the action and neutral for star
    for x in range(nx):
        if m.act_set(m.unit_mask, 1 << x) != 1 << x:
            out.append(Violation("UnitActionViolation", (m.resources[x],)))
    for i in range(nt):
        if m.star_set(m.unit_mask, 1 << i) != 1 << i or m.star_set(1 << i, m.unit_mask) != 1 << i:
            out.append(Violation("UnitStarViolation", (m.transformations[i],)))
    # free set: reflexive (contains the unit) and closed under star
    if m.unit_mask & ~m.free_mask:
        out.append(Violation("FreeNotReflexive"))
    if m.star_set(m.free_mask, m.free_mask) & ~m.free_mask:
        out.append(Violation("FreeNotIdempotent"))
    return out


def free_image(m: FiniteQuantaleModule, resources) -> FrozenSet[str]:
    """Everything producible from ``resources`` by free transformations."""
    return m.x_set(m.act_set(m.free_mask, m.xmask(resources)))


def reachability(m: FiniteQuantaleModule) -> FinitePreorder:
    """Atom-level convertibility order: y dominates z iff z is in the free image of y."""
    violations = validate(m)
    if violations:
        raise InvalidModule(violations)
    pairs = []
    for y in range(len(m.resources)):
        image = m.act_set(m.free_mask, 1 << y)
        for z in _bits(image):
            pairs.append((y, z))
    return FinitePreorder(len(m.resources), pairs)


@dataclass(frozen=True)
class Augmentation:
    """Quotient of the resource atoms by equality of B-images."""

    classes: tuple  # tuple of frozensets of resource names
    images: tuple   # the shared B-image of each class
    order: FinitePreorder  # class order by inclusion of images


def augment(m: FiniteQuantaleModule, b_subset) -> Augmentation:
    bmask = m.tmask(b_subset)
    if m.unit_mask & ~bmask:
        raise NotReflexiveTransitive("augmentation set does not contain the unit")
    if m.star_set(bmask, bmask) & ~bmask:
        raise NotReflexiveTransitive("augmentation set not closed under star")
    by_image: Dict[int, list] = {}
    for x in range(len(m.resources)):
        img = m.act_set(bmask, 1 << x)
        by_image.setdefault(img, []).append(x)
    items = sorted(by_image.items(), key=lambda kv: kv[1][0])
    classes = tuple(frozenset(m.resources[i] for i in atoms) for _, atoms in items)
    images = tuple(m.x_set(img) for img, _ in items)
    pairs = []
    for i, (img_i, _) in enumerate(items):
        for j, (img_j, _) in enumerate(items):
            if img_j & ~img_i == 0:  # img_i contains img_j
                pairs.append((i, j))
    return Augmentation(classes=classes, images=images,
                        order=FinitePreorder(len(items), pairs))


def is_left_invariant(m: FiniteQuantaleModule, subset) -> bool:
    smask = m.tmask(subset)
    return m.star_set(m.free_mask, smask) & ~smask == 0


def is_right_invariant(m: FiniteQuantaleModule, subset) -> bool:
    smask = m.tmask(subset)
    return m.star_set(smask, m.free_mask) & ~smask == 0


def left_right_augmentations(m: FiniteQuantaleModule, u_subset):
    """Smallest left-invariant (free * U) and right-invariant (U * free) extensions."""
    umask = m.tmask(u_subset)
    smask = m.star_set(m.free_mask, umask)
    dmask = m.star_set(umask, m.free_mask)
    if not is_left_invariant(m, smask):
        raise NotLeftInvariant("free * U is not left invariant; module is broken")
    if not is_right_invariant(m, dmask):
        raise NotRightInvariant("U * free is not right invariant; module is broken")
    return m.t_set(smask), m.t_set(dmask)


# --------------------------------------------------------------------------
# Actions on the resource carrier (groups or plain monoids of functions)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionAction:
    """Composition-closed set of self-maps of the resource atoms.

    ``maps`` are tuples of atom indices; the identity must be present and
    the set closed under composition (a finite monoid of functions).
    """

    maps: tuple

    def __init__(self, maps: Iterable):
        maps = tuple(tuple(mp) for mp in maps)
        if not maps:
            raise FormatError("action needs at least the identity map")
        n = len(maps[0])
        if any(len(mp) != n for mp in maps):
            raise FormatError("action maps have inconsistent lengths")
        if any(not (0 <= v < n) for mp in maps for v in mp):
            raise FormatError("action map value out of range")
        pool = set(maps)
        if tuple(range(n)) not in pool:
            raise FormatError("action does not contain the identity map")
        for f in maps:
            for g in maps:
                comp = tuple(f[g[i]] for i in range(n))
                if comp not in pool:
                    raise FormatError("action is not closed under composition")
        object.__setattr__(self, "maps", maps)

    @property
    def degree(self) -> int:
        return len(self.maps[0])


class PermutationAction(FunctionAction):
    """A FunctionAction whose maps are all bijections (a permutation group)."""

    def __init__(self, maps: Iterable):
        super().__init__(maps)
        for mp in self.maps:
            if len(set(mp)) != len(mp):
                raise FormatError("permutation action contains a non-bijective map")


def _apply_map_to_mask(mp: tuple, mask: int) -> int:
    out = 0
    for i in _bits(mask):
        out |= 1 << mp[i]
    return out


def action_from_names(m: FiniteQuantaleModule, maps, permutations: bool = True) -> FunctionAction:
    """Build an action from name-based maps: either dicts {atom: image} or
    lists where position k holds the image of resource atom k."""
    idx = []
    for mp in maps:
        try:
            if isinstance(mp, dict):
                idx.append([m._xindex[mp[name]] for name in m.resources])
            else:
                idx.append([m._xindex[name] for name in mp])
        except KeyError as exc:
            raise FormatError(f"action map mentions unknown atom {exc}") from exc
    cls = PermutationAction if permutations else FunctionAction
    return cls(idx)


def is_g_compatible(m: FiniteQuantaleModule, subset, action: FunctionAction) -> bool:
    """Set-level equivariance: the action of ``subset`` commutes with every map."""
    if action.degree != len(m.resources):
        raise FormatError("action degree does not match resource count")
    smask = m.tmask(subset)
    for mp in action.maps:
        for x in range(len(m.resources)):
            lhs = _apply_map_to_mask(mp, m.act_set(smask, 1 << x))
            rhs = m.act_set(smask, 1 << mp[x])
            if lhs != rhs:
                return False
    return True


def covariant_transformations(m: FiniteQuantaleModule, action: FunctionAction) -> FrozenSet[str]:
    """Atoms that individually commute with every map of the action."""
    if action.degree != len(m.resources):
        raise FormatError("action degree does not match resource count")
    out = []
    for t, name in enumerate(m.transformations):
        if is_g_compatible(m, 1 << t, action):
            out.append(name)
    return frozenset(out)


# --------------------------------------------------------------------------
# Morphisms
# --------------------------------------------------------------------------


def check_morphism(src: FiniteQuantaleModule, dst: FiniteQuantaleModule,
                   ell: dict, f: dict, mode: str = "strict") -> list:
    """Check a pair of atom->subset tables as a (possibly oplax) morphism.

    ``ell`` sends each source transformation atom to a set of target
    transformation names, ``f`` likewise on resources; both lift to all
    sets by unions.  Strict mode demands on-the-nose equality of the
    star/action squares, oplax mode only inclusion (left side inside the
    right).  Free transformations must land inside the target free set in
    both modes.
    """
    if mode not in ("strict", "oplax"):
        raise FormatError(f"unknown morphism mode {mode!r}")
    ell_masks = [dst.tmask(ell[name]) for name in src.transformations]
    f_masks = [dst.xmask(f[name]) for name in src.resources]

    def ell_set(mask):
        out = 0
        for i in _bits(mask):
            out |= ell_masks[i]
        return out

    def f_set(mask):
        out = 0
        for i in _bits(mask):
            out |= f_masks[i]
        return out

    ok = (lambda a, b: a == b) if mode == "strict" else (lambda a, b: a & ~b == 0)
    out = []
    nt, nx = len(src.transformations), len(src.resources)
    for i in range(nt):
        for j in range(nt):
            lhs = ell_set(src.star_table[i][j])
            rhs = dst.star_set(ell_masks[i], ell_masks[j])
            if not ok(lhs, rhs):
                out.append(Violation("StarMismatch",
                                     (src.transformations[i], src.transformations[j])))
    for i in range(nt):
        for x in range(nx):
            lhs = f_set(src.act_table[i][x])
            rhs = dst.act_set(ell_masks[i], f_masks[x])
            if not ok(lhs, rhs):
                out.append(Violation("ActionMismatch",
                                     (src.transformations[i], src.resources[x])))
    if ell_set(src.free_mask) & ~dst.free_mask:
        out.append(Violation("FreePreservationViolation"))
    return out


# --------------------------------------------------------------------------
# Commutative quantales and the catalytic order
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutativeQuantale:
    resources: tuple
    box_table: tuple  # box_table[i][j] = bitmask
    unit_mask: int
    free_mask: int
    _index: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.resources)})

    @staticmethod
    def build(resources, box: dict, unit, free) -> "CommutativeQuantale":
        names, index = _index_names(resources)
        n = len(names)
        table = [[0] * n for _ in range(n)]
        for (a, b), out in box.items():
            mask = _mask_from(out, index)
            table[index[a]][index[b]] = mask
            table[index[b]][index[a]] = mask
        return CommutativeQuantale(
            resources=names,
            box_table=tuple(tuple(r) for r in table),
            unit_mask=_mask_from(unit, index),
            free_mask=_mask_from(free, index),
        )

    @staticmethod
    def from_json(doc) -> "CommutativeQuantale":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            names = list(doc["R"])
        except (KeyError, TypeError) as exc:
            raise FormatError("quantale JSON needs an 'R' atom list") from exc
        box = {}
        for key, out in doc.get("box", {}).items():
            a, b = key.split(",")
            box[(a, b)] = out
        return CommutativeQuantale.build(names, box, doc.get("unit", []), doc.get("free", []))

    def to_json(self) -> dict:
        box = {}
        for i, a in enumerate(self.resources):
            for j, b in enumerate(self.resources):
                if j < i or not self.box_table[i][j]:
                    continue
                box[f"{a},{b}"] = sorted(_names_from(self.box_table[i][j], self.resources))
        return {
            "R": list(self.resources),
            "box": box,
            "unit": sorted(_names_from(self.unit_mask, self.resources)),
            "free": sorted(_names_from(self.free_mask, self.resources)),
        }

    def rmask(self, subset) -> int:
        return _mask_from(subset, self._index)

    def r_set(self, mask: int) -> FrozenSet[str]:
        return _names_from(mask, self.resources)

    def box_set(self, left: int, right: int) -> int:
        out = 0
        for i in _bits(left):
            row = self.box_table[i]
            for j in _bits(right):
                out |= row[j]
        return out


def validate_quantale(q: CommutativeQuantale) -> list:
    out = []
    n = len(q.resources)
    for i in range(n):
        for j in range(i + 1, n):
            if q.box_table[i][j] != q.box_table[j][i]:
                out.append(Violation("CommutativityViolation", (q.resources[i], q.resources[j])))
    for i in range(n):
        for j in range(n):
            ij = q.box_table[i][j]
            for k in range(n):
                if q.box_set(ij, 1 << k) != q.box_set(1 << i, q.box_table[j][k]):
                    out.append(Violation("AssociativityViolation",
                                         (q.resources[i], q.resources[j], q.resources[k])))
    for i in range(n):
        if q.box_set(q.unit_mask, 1 << i) != 1 << i:
            out.append(Violation("UnitStarViolation", (q.resources[i],)))
    if q.unit_mask & ~q.free_mask:
        out.append(Violation("FreeNotReflexive"))
    if q.box_set(q.free_mask, q.free_mask) & ~q.free_mask:
        out.append(Violation("FreeNotIdempotent"))
    return out


def ucrt_order(q: CommutativeQuantale, s_subset, t_subset) -> bool:
    """Uncatalysed convertibility: free * S covers T."""
    smask = q.rmask(s_subset)
    tmask = q.rmask(t_subset)
    return tmask & ~q.box_set(q.free_mask, smask) == 0


def catalytic_order(q: CommutativeQuantale, catalyst: str, s_subset, t_subset) -> bool:
    """Convertibility after tensoring both sides with a catalyst atom."""
    cmask = q.rmask([catalyst])
    return ucrt_order(q, q.box_set(cmask, q.rmask(s_subset)),
                      q.box_set(cmask, q.rmask(t_subset)))


def induced_module(q: CommutativeQuantale) -> FiniteQuantaleModule:
    """View a commutative quantale acting on itself as a module over itself."""
    return FiniteQuantaleModule(
        transformations=q.resources,
        resources=q.resources,
        star_table=q.box_table,
        act_table=q.box_table,
        unit_mask=q.unit_mask,
        free_mask=q.free_mask,
    )
