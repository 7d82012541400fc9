"""History spaces, canonical doms, Gamma, full specifications, dom axioms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causetlab import (
    DomMap,
    EmptyIntersectionError,
    HistorySpace,
    NotDisjointError,
    NotFullSpecError,
    check_dom_axioms,
    compose_full_specs,
    full_specifications,
    gamma,
    is_partition,
    sample_events,
    validate_causet,
)
from causetlab.causet import _popcount

from oracles import brute_decides, brute_dom, brute_gamma, brute_phi

CANON = DomMap.canonical()


def test_space_sizes(anti2_space):
    assert anti2_space.size == 4
    assert anti2_space.omega == 0b1111


def test_history_keys_roundtrip(diamond):
    space = HistorySpace(diamond, 2)
    for h in range(space.size):
        assert space.history_from_key(space.history_key(h)) == h


def test_alphabet_must_be_at_least_two(anti2):
    with pytest.raises(ValueError):
        HistorySpace(anti2, 1)


# -- canonical dom ---------------------------------------------------------------


def test_dom_of_single_coordinate_event(anti2_space):
    e = anti2_space.cylinder({"x": 1})
    assert anti2_space.canonical_dom(e) == anti2_space.causet.region("x")


def test_dom_of_trivial_events_is_empty(anti2_space):
    assert anti2_space.canonical_dom(0) == 0
    assert anti2_space.canonical_dom(anti2_space.omega) == 0


def test_dom_of_equality_event(anti2_space):
    # oracle: flip test over all 4 histories
    e = 0
    for h in range(anti2_space.size):
        if anti2_space._value(h, 0) == anti2_space._value(h, 1):
            e |= 1 << h
    assert brute_dom(anti2_space, e) == anti2_space.causet.full
    assert anti2_space.canonical_dom(e) == anti2_space.causet.full


_W_SPACE = HistorySpace(validate_causet(["q", "a", "b"], [("q", "a")]), 2)
_ANTI2_SPACE = HistorySpace(validate_causet(["x", "y"], []), 2)


@settings(max_examples=150)
@given(st.integers(min_value=0, max_value=_W_SPACE.omega))
def test_dom_matches_brute_force_flips(e):
    assert _W_SPACE.canonical_dom(e) == brute_dom(_W_SPACE, e)


def test_dom_matches_brute_force_ternary_alphabet(anti2):
    space = HistorySpace(anti2, 3)
    for e in range(0, space.omega + 1, 7):  # a deterministic spread of events
        assert space.canonical_dom(e) == brute_dom(space, e)


@settings(max_examples=60)
@given(st.integers(min_value=0, max_value=_ANTI2_SPACE.omega))
def test_canonical_dom_decides_and_is_minimal(e):
    space = _ANTI2_SPACE
    dom = space.canonical_dom(e)
    assert brute_decides(space, e, dom)
    for i in range(space.causet.n):
        if dom >> i & 1:
            assert not brute_decides(space, e, dom & ~(1 << i))


def test_dom_empty_iff_trivial_event(anti2_space):
    for e in range(anti2_space.omega + 1):
        assert (anti2_space.canonical_dom(e) == 0) == (e in (0, anti2_space.omega))


# -- gamma ------------------------------------------------------------------------


def test_gamma_of_empty_region(anti2_space):
    assert gamma(anti2_space, CANON, 0) == [0, anti2_space.omega]


def test_gamma_of_single_element(anti2_space):
    # oracle: filter all 16 events by brute-force dom
    x = anti2_space.causet.region("x")
    assert sorted(gamma(anti2_space, CANON, x)) == brute_gamma(anti2_space, x)
    assert len(gamma(anti2_space, CANON, x)) == 4


def test_gamma_of_full_region_is_everything(anti2_space):
    assert sorted(gamma(anti2_space, CANON, anti2_space.causet.full)) == list(
        range(anti2_space.omega + 1)
    )


def test_gamma_monotone(anti2_space):
    full = set(gamma(anti2_space, CANON, anti2_space.causet.full))
    for r in anti2_space.causet.regions():
        assert set(gamma(anti2_space, CANON, r)) <= full
        for r2 in anti2_space.causet.regions():
            if r & ~r2 == 0:
                assert set(gamma(anti2_space, CANON, r)) <= set(
                    gamma(anti2_space, CANON, r2)
                )


# -- full specifications ------------------------------------------------------------


def test_phi_of_empty_region_is_omega(anti2_space):
    assert full_specifications(anti2_space, CANON, 0) == [anti2_space.omega]


def test_phi_single_element_matches_brute_force(anti2_space):
    x = anti2_space.causet.region("x")
    cells = full_specifications(anti2_space, CANON, x)
    assert sorted(cells) == brute_phi(anti2_space, x)
    assert sorted(cells) == sorted(
        [anti2_space.cylinder({"x": 0}), anti2_space.cylinder({"x": 1})]
    )


def test_phi_two_elements_is_singletons(anti2_space):
    cells = full_specifications(anti2_space, CANON, anti2_space.causet.full)
    assert sorted(cells) == brute_phi(anti2_space, anti2_space.causet.full)
    assert sorted(cells) == [1 << h for h in range(anti2_space.size)]


def test_phi_brute_force_on_diamond_pair(diamond):
    space = HistorySpace(diamond, 2)
    region = diamond.region(["a", "b"])
    assert sorted(full_specifications(space, CANON, region)) == brute_phi(space, region)


def test_phi_partitions_every_region_of_small_models(w_causet, diamond):
    for causet in (w_causet, diamond):
        space = HistorySpace(causet, 2)
        for region in causet.regions():
            cells = full_specifications(space, CANON, region)
            assert is_partition(space, cells)
            assert len(cells) == 2 ** _popcount(region)


def test_phi_count_ternary(anti2):
    space = HistorySpace(anti2, 3)
    for region in anti2.regions():
        cells = full_specifications(space, CANON, region)
        assert len(cells) == 3 ** _popcount(region)
        assert is_partition(space, cells)


# -- composition ---------------------------------------------------------------------


def test_compose_two_singletons(anti2_space):
    x = anti2_space.causet.region("x")
    y = anti2_space.causet.region("y")
    ex = anti2_space.cylinder({"x": 1})
    ey = anti2_space.cylinder({"y": 0})
    composed = compose_full_specs(anti2_space, CANON, [(x, ex), (y, ey)])
    assert composed == ex & ey
    assert composed in full_specifications(anti2_space, CANON, x | y)


def test_compose_identity_part(anti2_space):
    assert compose_full_specs(anti2_space, CANON, [(0, anti2_space.omega)]) == anti2_space.omega


def test_compose_diamond_wings(diamond):
    space = HistorySpace(diamond, 2)
    ra, rb = diamond.region("a"), diamond.region("b")
    ea = space.cylinder({"a": 1})
    eb = space.cylinder({"b": 0})
    composed = compose_full_specs(space, CANON, [(ra, ea), (rb, eb)])
    assert composed == ea & eb
    assert composed in full_specifications(space, CANON, ra | rb)
    assert sorted(
        compose_full_specs(space, CANON, [(ra, ca), (rb, cb)])
        for ca in full_specifications(space, CANON, ra)
        for cb in full_specifications(space, CANON, rb)
    ) == sorted(full_specifications(space, CANON, ra | rb))


def test_compose_rejects_overlap(anti2_space):
    x = anti2_space.causet.region("x")
    ex = anti2_space.cylinder({"x": 1})
    with pytest.raises(NotDisjointError):
        compose_full_specs(anti2_space, CANON, [(x, ex), (x, ex)])


def test_compose_rejects_non_full_spec(anti2_space):
    x = anti2_space.causet.region("x")
    with pytest.raises(NotFullSpecError):
        compose_full_specs(anti2_space, CANON, [(x, anti2_space.omega)])


def test_compose_empty_intersection_raises():
    # a user dom map where two "full specifications" of disjoint regions
    # are disjoint events: composing them falsifies the composition law
    causet = validate_causet(["x", "y"], [])
    space = HistorySpace(causet, 2)
    ex = space.cylinder({"x": 1})
    ey = space.cylinder({"x": 0}) & space.cylinder({"y": 1})
    mapping = {e: space.canonical_dom(e) for e in range(space.omega + 1)}
    mapping[ey] = causet.region("y")  # a lie, but consistent enough to compose
    dom = DomMap.explicit(mapping)
    with pytest.raises((EmptyIntersectionError, NotFullSpecError)):
        compose_full_specs(space, dom, [(causet.region("x"), ex), (causet.region("y"), ey)])


# -- dom axioms -----------------------------------------------------------------------


def test_axioms_pass_on_anti2_exhaustively(anti2_space):
    report = check_dom_axioms(anti2_space, CANON)
    assert report.passed
    assert report.universe_size == 16


def test_axioms_pass_on_w_causet(w_causet):
    report = check_dom_axioms(HistorySpace(w_causet, 2), CANON)
    assert report.passed


def test_axioms_1_2_exhaustive_on_diamond(diamond):
    # all 2^16 events, family size 2, grouped by dom value
    space = HistorySpace(diamond, 2)
    report = check_dom_axioms(space, CANON, family_size=2, axioms=(1, 2))
    assert report.passed
    assert report.universe_size == 65536


def test_axioms_pass_on_diamond_sampled_events(diamond):
    space = HistorySpace(diamond, 2)
    universe = sample_events(space, 60, seed=11)
    report = check_dom_axioms(space, CANON, family_size=2, universe=universe)
    assert report.passed


def test_handcrafted_dom_fails_axiom_3(anti2_space):
    mapping = {e: anti2_space.canonical_dom(e) for e in range(anti2_space.omega + 1)}
    a = anti2_space.cylinder({"x": 1})
    mapping[a] = anti2_space.causet.full  # breaks dom(A^c) == dom(A)
    report = check_dom_axioms(anti2_space, DomMap.explicit(mapping))
    by_axiom = {r.axiom: r for r in report.results}
    assert not by_axiom[3].passed
    assert by_axiom[3].witness is not None


def test_dom_failing_axiom_1_is_reported_not_thrown(anti2_space):
    # canonical everywhere except: the conjunction of two one-coordinate
    # events is declared decidable on the empty region
    mapping = {e: anti2_space.canonical_dom(e) for e in range(anti2_space.omega + 1)}
    ex = anti2_space.cylinder({"x": 1})
    ey = anti2_space.cylinder({"y": 1})
    mapping[ex & ey] = 0
    report = check_dom_axioms(anti2_space, DomMap.explicit(mapping))
    by_axiom = {r.axiom: r for r in report.results}
    assert not by_axiom[1].passed
    assert by_axiom[1].witness is not None


def test_sample_events_deterministic(anti2_space):
    a = sample_events(anti2_space, 5, 42)
    b = sample_events(anti2_space, 5, 42)
    assert a == b
    assert len(set(a)) == 5
