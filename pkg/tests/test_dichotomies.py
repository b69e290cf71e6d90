import json
import random
from fractions import Fraction

import pytest

from contrapunctus import (
    AffineMap,
    BUILTIN_REPRESENTATIVES,
    Dichotomy,
    DomainError,
    NoAutocomplementarityError,
    NotRigidError,
    ResourceGuardError,
    all_strong_dichotomies,
    as_strong,
    autocomplementarities,
    builtin_world,
    canonical_rep,
    class_label,
    classify_strong,
    diameter,
    is_strong,
    orbit,
    span,
    stabilizer,
    strong_dichotomy,
    third_distance,
)

from oracles import orbits_of_sets, strong_subsets_fullscan, third_distance_bfs

# frozen geometry of the six conventional representatives (derived from the
# BFS third-distance oracle; re-verified against it below)
GEOMETRY = {
    64: (Fraction(29), 10),
    68: (Fraction(28), 16),
    71: (Fraction(28), 10),
    75: (Fraction(25), 10),
    78: (Fraction(28), 10),
    82: (Fraction(24), 16),
}


def test_stabilizer_examples():
    assert stabilizer(Dichotomy(12, frozenset({0, 3, 4, 7, 8, 9}))) == (
        AffineMap.identity(12),
    )
    chromatic = stabilizer(Dichotomy(12, frozenset(range(6))))
    assert AffineMap(12, 5, 11) in chromatic
    whole_tone = stabilizer(Dichotomy(12, frozenset({0, 2, 4, 6, 8, 10})))
    assert AffineMap(12, 2, 1) in whole_tone


def test_autocomplementarity_examples():
    assert autocomplementarities(Dichotomy(12, frozenset({0, 3, 4, 7, 8, 9}))) == (
        AffineMap(12, 2, 5),
    )
    assert autocomplementarities(Dichotomy(12, frozenset({2, 4, 5, 7, 9, 11}))) == (
        AffineMap(12, 5, 11),
    )
    evens = autocomplementarities(Dichotomy(12, frozenset({0, 2, 4, 6, 8, 10})))
    assert len(evens) > 1
    assert AffineMap(12, 1, 1) in evens and AffineMap(12, 1, 11) in evens


def test_as_strong_examples():
    sd = strong_dichotomy(12, (0, 1, 2, 4, 6, 10))
    assert sd.polarity == AffineMap(12, 9, 11)
    with pytest.raises(NotRigidError):
        strong_dichotomy(12, range(6))
    assert strong_dichotomy(6, (0, 2, 3)).polarity == AffineMap(6, 1, 5)


def test_as_strong_no_autocomplementarity():
    import itertools

    for xs in itertools.combinations(range(12), 6):
        d = Dichotomy(12, frozenset(xs))
        if len(stabilizer(d)) == 1 and not autocomplementarities(d):
            with pytest.raises(NoAutocomplementarityError):
                as_strong(d)
            return
    pytest.fail("no rigid non-autocomplementable hexachord found")


def test_orbit_membership_fixtures():
    assert class_label(Dichotomy(12, frozenset({0, 2, 5, 7, 8, 10}))) == 64
    assert class_label(Dichotomy(12, frozenset({0, 1, 4, 5, 6, 9}))) == 82
    assert class_label(Dichotomy(12, frozenset({0, 2, 4, 6, 8, 11}))) == 78


def test_orbit_and_canonical_rep():
    d = Dichotomy(12, frozenset(BUILTIN_REPRESENTATIVES[82]))
    orb = orbit(d)
    assert len(orb) == 48
    assert d in orb
    rep = canonical_rep(d)
    assert rep in orb
    assert all(rep.as_tuple() <= o.as_tuple() for o in orb)


def test_strongness_is_orbit_invariant():
    rng = random.Random(5)
    from contrapunctus import affine_group

    group = affine_group(12)
    for label in BUILTIN_REPRESENTATIVES:
        sd = builtin_world(label)
        g = rng.choice(group)
        moved = sd.dichotomy.transform(g)
        moved_sd = as_strong(moved)
        assert moved_sd.polarity == g.compose(sd.polarity).compose(g.invert())


@pytest.mark.parametrize("modulus,expected_classes", [(4, 0), (6, 1), (8, 1), (10, 3)])
def test_classify_small_moduli_against_fullscan(modulus, expected_classes):
    table = classify_strong(modulus)
    strong = strong_subsets_fullscan(modulus)
    orbits = orbits_of_sets(strong, modulus)
    assert len(table.classes) == len(orbits) == expected_classes
    # identical strong sets overall
    from_table = set()
    for entry in table.classes:
        from_table |= {
            d.x_part for d in orbit(Dichotomy(modulus, frozenset(entry.representative)))
        }
    assert from_table == set(strong)
    assert sum(e.orbit_size for e in table.classes) == len(strong)


def test_classify_z6_representative():
    table = classify_strong(6)
    assert is_strong(Dichotomy(6, frozenset({0, 2, 3})))
    [entry] = table.classes
    assert frozenset({0, 2, 3}) in {
        d.x_part for d in orbit(Dichotomy(6, frozenset(entry.representative)))
    }


def test_classify_modulus_12_matches_catalogue():
    table = classify_strong(12)
    assert len(table.classes) == 6
    assert sorted(table.labels()) == [64, 68, 71, 75, 78, 82]
    strong = strong_subsets_fullscan(12)
    assert sum(e.orbit_size for e in table.classes) == len(strong) == 288
    for label, rep in BUILTIN_REPRESENTATIVES.items():
        sd = strong_dichotomy(12, rep)
        assert (sd.polarity.translation, sd.polarity.multiplier) == strong[
            frozenset(rep)
        ]


def test_classify_guard_and_force_flag():
    with pytest.raises(ResourceGuardError):
        classify_strong(26)


def test_class_table_json_layout():
    doc = json.loads(classify_strong(12).to_json())
    assert doc["modulus"] == 12
    assert len(doc["classes"]) == 6
    entry = doc["classes"][0]
    assert set(entry) >= {"representative", "polarity", "orbitSize", "label"}
    assert set(entry["polarity"]) == {"t", "u"}
    assert isinstance(entry["diameter"], int) and isinstance(entry["span"], int)


def test_polarity_is_involution_up_to_modulus_16():
    for modulus in (6, 8, 10, 12, 14, 16):
        for sd in all_strong_dichotomies(modulus):
            assert sd.polarity.compose(sd.polarity).is_identity
            assert sd.polarity.image(sd.x_part) == sd.y_part


def test_third_distance_examples_and_bfs_oracle():
    assert third_distance(0, 0) == 0
    assert third_distance(0, 3) == 1
    assert third_distance(0, 4) == 1
    assert third_distance(0, 1) == 2
    for u in range(12):
        for v in range(12):
            assert third_distance(u, v) == third_distance_bfs(u, v)
    with pytest.raises(DomainError):
        from contrapunctus import PitchClass

        third_distance(PitchClass(0, 6), PitchClass(1, 6))


def test_diameter_and_span_frozen_values():
    for label, (dia, spn) in GEOMETRY.items():
        sd = builtin_world(label)
        assert diameter(sd) == dia, label
        assert span(sd) == spn, label
        # recompute from the BFS oracle
        xs = sorted(sd.x_part)
        assert dia == Fraction(
            sum(third_distance_bfs(u, v) for u in xs for v in xs), 2
        )
        assert spn == sum(third_distance_bfs(u, sd.polarity(u)) for u in xs)


def test_torus_polar_position_nonstrict():
    """82 attains the minimum diameter and the maximum span, 64 the maximum
    diameter and the minimum span (ties allowed)."""
    dias = {label: diameter(builtin_world(label)) for label in GEOMETRY}
    spans = {label: span(builtin_world(label)) for label in GEOMETRY}
    assert dias[82] == min(dias.values())
    assert spans[82] == max(spans.values())
    assert dias[64] == max(dias.values())
    assert spans[64] == min(spans.values())
    # the diameter extremes are even strict
    assert all(dias[82] < dias[l] for l in GEOMETRY if l != 82)
    assert all(dias[64] > dias[l] for l in GEOMETRY if l != 64)


def test_geometry_rejects_other_moduli():
    with pytest.raises(DomainError):
        diameter(strong_dichotomy(6, (0, 2, 3)))
    with pytest.raises(DomainError):
        span(strong_dichotomy(6, (0, 2, 3)))


def test_dichotomy_validation():
    with pytest.raises(DomainError):
        Dichotomy(12, frozenset({0, 1, 2}))
    d = Dichotomy(12, frozenset({0, 1, 2, 3, 4, 17}))
    assert d.x_part == frozenset({0, 1, 2, 3, 4, 5})
    assert d.y_part == frozenset({6, 7, 8, 9, 10, 11})
