"""Finite quantale modules: law checking, reachability, augmentations,
symmetry, morphisms, and the commutative (UCRT) case."""

import itertools

import pytest
from hypothesis import given, strategies as st

from rthy import (
    CommutativeQuantale,
    FiniteQuantaleModule,
    FormatError,
    FunctionAction,
    InvalidModule,
    NotReflexiveTransitive,
    PermutationAction,
    action_from_names,
    augment,
    catalytic_order,
    chain,
    check_morphism,
    covariant_transformations,
    free_image,
    induced_module,
    is_g_compatible,
    is_left_invariant,
    is_right_invariant,
    left_right_augmentations,
    reachability,
    ucrt_order,
    validate,
    validate_quantale,
)
from rthy.instances import (
    boolean_pair_module,
    diamond_module,
    downset_module,
    function_module,
    max_quantale,
    rotation_module,
    stochastic_pair_module,
    support_morphism,
    three_chain_module,
    two_level_module,
)


def _chain_doc():
    return three_chain_module().to_json()


def test_three_chain_is_lawful():
    assert validate(three_chain_module()) == []


def test_json_roundtrip():
    m = diamond_module()
    again = FiniteQuantaleModule.from_json(m.to_json())
    assert again == m


def test_comma_names_rejected():
    with pytest.raises(FormatError):
        FiniteQuantaleModule.build(
            transformations=["a,b"], resources=["x"],
            star={("a,b", "a,b"): ["a,b"]}, act={("a,b", "x"): ["x"]},
            unit=["a,b"], free=["a,b"])


def _tamper(doc, **changes):
    doc = dict(doc)
    doc.update(changes)
    return FiniteQuantaleModule.from_json(doc)


def test_validate_catches_broken_unit_action():
    doc = _chain_doc()
    act = dict(doc["act"])
    act["f012,0"] = ["1"]  # identity atom no longer acts as identity
    kinds = {v.kind for v in validate(_tamper(doc, act=act))}
    assert "UnitActionViolation" in kinds


def test_validate_catches_broken_star_neutrality():
    doc = _chain_doc()
    star = dict(doc["star"])
    star["f012,f000"] = ["f111"]
    kinds = {v.kind for v in validate(_tamper(doc, star=star))}
    assert "UnitStarViolation" in kinds


def test_validate_catches_associativity():
    doc = _chain_doc()
    star = dict(doc["star"])
    star["f000,f000"] = ["f111"]  # const0 . const0 is definitely const0
    kinds = {v.kind for v in validate(_tamper(doc, star=star))}
    assert "AssociativityViolation" in kinds or "MixedAssociativityViolation" in kinds


def test_validate_catches_free_problems():
    doc = _chain_doc()
    no_unit = _tamper(doc, free=[t for t in doc["free"] if t != "f012"])
    assert "FreeNotReflexive" in {v.kind for v in validate(no_unit)}
    leaky = _tamper(doc, free=doc["free"] + ["f120"])  # a rotation: not closed
    assert "FreeNotIdempotent" in {v.kind for v in validate(leaky)}


def test_reachability_refuses_invalid():
    doc = _chain_doc()
    act = dict(doc["act"])
    act["f012,0"] = ["1"]
    broken = _tamper(doc, act=act)
    with pytest.raises(InvalidModule) as err:
        reachability(broken)
    assert err.value.violations


def test_three_chain_reachability_is_the_chain():
    p = reachability(three_chain_module())
    expect = chain(3)
    assert set(p.pairs()) == set(expect.pairs())


def test_free_image_is_down_closure():
    m = three_chain_module()
    assert free_image(m, ["2"]) == {"0", "1", "2"}
    assert free_image(m, ["0"]) == {"0"}


@given(st.integers(1, 4), st.data())
def test_downset_module_realizes_any_preorder(n, data):
    from rthy import FinitePreorder
    extra = data.draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6))
    p = FinitePreorder(n, [(i, i) for i in range(n)] + extra)
    m = downset_module(p)
    assert validate(m) == []
    q = reachability(m)
    assert set(q.pairs()) == set(p.pairs())


def test_augment_requires_submonoid():
    m = three_chain_module()
    with pytest.raises(NotReflexiveTransitive):
        augment(m, ["f000"])  # misses the unit
    with pytest.raises(NotReflexiveTransitive):
        augment(m, ["f012", "f120"])  # rotations alone are not star-closed here?
        # (f120 . f120 = f201, outside)


def test_augment_full_free_recovers_reachability():
    m = diamond_module()
    aug = augment(m, sorted(m.free))
    # classes are grouped by their free image; order matches inclusion
    images = {frozenset(c): img for c, img in zip(aug.classes, aug.images)}
    for ci, c in enumerate(aug.classes):
        for di, d in enumerate(aug.classes):
            want = images[frozenset(d)] <= images[frozenset(c)]
            assert aug.order.geq(ci, di) == want


def test_left_right_augmentations_on_unit():
    m = diamond_module()
    s, d = left_right_augmentations(m, sorted(m.unit))
    assert s == m.free and d == m.free
    assert is_left_invariant(m, s) and is_right_invariant(m, d)


def test_left_right_augmentations_two_level():
    m, u = two_level_module()
    s, d = left_right_augmentations(m, [u])
    assert is_left_invariant(m, s) and is_right_invariant(m, d)
    assert not is_left_invariant(m, [u]) and not is_right_invariant(m, [u])


def test_function_action_validation():
    FunctionAction([(0, 1), (1, 0), (0, 0), (1, 1)])  # id, swap, both constants
    with pytest.raises(FormatError):
        FunctionAction([(1, 0)])  # no identity
    with pytest.raises(FormatError):
        FunctionAction([(0, 1), (1, 0), (0, 0)])  # misses swap.const0 = const1
    with pytest.raises(FormatError):
        PermutationAction([(0, 1), (1, 1)])  # not bijective


def test_covariance_pinned():
    m, action = rotation_module()
    cov = covariant_transformations(m, action)
    assert cov == {"rot0", "rot1", "rot2", "to_base"}
    orbit_consts = ["const1", "const2", "const3"]
    assert is_g_compatible(m, orbit_consts, action)
    for t in orbit_consts:
        assert not is_g_compatible(m, [t], action)


def test_action_from_names_dict_and_list():
    m, _ = rotation_module()
    as_dict = action_from_names(
        m, [{"base": "base", "orb1": "orb2", "orb2": "orb3", "orb3": "orb1"},
            {"base": "base", "orb1": "orb3", "orb2": "orb1", "orb3": "orb2"},
            {"base": "base", "orb1": "orb1", "orb2": "orb2", "orb3": "orb3"}])
    as_list = action_from_names(
        m, [["base", "orb2", "orb3", "orb1"], ["base", "orb3", "orb1", "orb2"],
            ["base", "orb1", "orb2", "orb3"]])
    assert set(as_dict.maps) == set(as_list.maps)
    with pytest.raises(FormatError):
        action_from_names(m, [{"base": "nowhere"}])


def test_support_morphism_is_strict():
    ell, f = support_morphism()
    src, dst = stochastic_pair_module(), boolean_pair_module()
    assert validate(src) == [] and validate(dst) == []
    assert check_morphism(src, dst, ell, f, mode="strict") == []
    assert check_morphism(src, dst, ell, f, mode="oplax") == []


def test_tampered_morphism_reports_mismatch():
    ell, f = support_morphism()
    src, dst = stochastic_pair_module(), boolean_pair_module()
    bad = dict(ell)
    bad["mix"] = ["b10_01"]  # claims averaging has identity support
    kinds = {v.kind for v in check_morphism(src, dst, bad, f)}
    assert kinds & {"StarMismatch", "ActionMismatch"}


def test_morphism_free_preservation():
    ell, f = support_morphism()
    src, dst = stochastic_pair_module(), boolean_pair_module()
    # shrink the target free set so ell(mix) escapes it
    doc = dst.to_json()
    doc["free"] = ["b10_01"]
    smaller = FiniteQuantaleModule.from_json(doc)
    kinds = {v.kind for v in check_morphism(src, smaller, ell, f)}
    assert "FreePreservationViolation" in kinds


def test_oplax_vs_strict():
    m = downset_module(chain(2))
    every = sorted(m.transformations)
    ell = {t: every for t in m.transformations}
    f = {x: [x] for x in m.resources}
    assert check_morphism(m, m, ell, f, mode="oplax") == []
    assert check_morphism(m, m, ell, f, mode="strict") != []
    with pytest.raises(FormatError):
        check_morphism(m, m, ell, f, mode="lax")


def test_morphism_mode_unknown_rejected_before_work():
    m = downset_module(chain(2))
    with pytest.raises(FormatError):
        check_morphism(m, m, {}, {}, mode="sideways")


# --- commutative quantales -------------------------------------------------


def test_max_quantale_is_lawful():
    assert validate_quantale(max_quantale()) == []


def test_quantale_json_roundtrip():
    q = max_quantale()
    assert CommutativeQuantale.from_json(q.to_json()) == q


def test_catalysis_pinned():
    q = max_quantale()
    assert not ucrt_order(q, ["0"], ["1"])
    assert catalytic_order(q, "2", ["0"], ["1"])
    assert catalytic_order(q, "2", ["1"], ["0"])  # the catalyst flattens both sides


def test_ucrt_order_details():
    q = max_quantale()
    # free x S = {max(0,s)} = S, so T must be a subset of S
    assert ucrt_order(q, ["1"], ["1"])
    assert not ucrt_order(q, ["1"], ["2"])
    assert ucrt_order(q, ["2", "1"], ["1"])


def test_induced_module_matches_ucrt():
    q = max_quantale()
    m = induced_module(q)
    assert validate(m) == []
    p = reachability(m)
    names = m.resources
    for a in range(len(names)):
        for b in range(len(names)):
            assert p.geq(a, b) == ucrt_order(q, [names[a]], [names[b]])
