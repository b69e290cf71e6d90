import pytest

from contrapunctus import (
    AffineMap,
    DichotomyMorphism,
    DomainError,
    DualNumber,
    InductionFailedError,
    OutOfDomainError,
    ResourceGuardError,
    StrictMorphism,
    WorldMorphism,
    build_world,
    builtin_world,
    check_dichotomy_morphism,
    embedding_polarity,
    embedding_sequence,
    induce_world_morphism,
    strict_digraph,
    strict_morphisms,
    strong_dichotomy,
    successor_table,
)

# a short valid Fux-world phrase whose closure admits morphisms into the
# ionian world (validity is re-checked below)
FRAGMENT = ((0, 4), (3, 0), (9, 7))


def _fragment_intervals(modulus=12):
    return [DualNumber(x, k, modulus) for (x, k) in FRAGMENT]


def test_world_kappa_examples():
    w = build_world(builtin_world(82))
    assert w.kappa(DualNumber(0, 5, 12)) == 0  # the fourth is dissonant
    for x in range(12):
        for k in (0, 3, 4, 7, 8, 9):
            assert w.kappa(DualNumber(x, k, 12)) == 1
        for k in (1, 2, 5, 6, 10, 11):
            assert w.kappa(DualNumber(x, k, 12)) == 0


def test_world_closure_example():
    w = build_world(builtin_world(82), [DualNumber(0, 0, 12)])
    assert w.domain == {DualNumber(0, 0, 12), DualNumber(0, 2, 12)}
    assert not w.is_full


def test_global_polarity_is_involution():
    w = build_world(builtin_world(78))
    for xi in sorted(w.domain):
        assert w.global_polarity(w.global_polarity(xi)) == xi


def test_strict_digraph_fux_world():
    w = build_world(builtin_world(82))
    d = strict_digraph(w)
    assert len(d.vertices) == 72
    for y in range(1, 12):
        assert d.has_arc(DualNumber(0, 7, 12), DualNumber(y, 7, 12))
    # arcs are the exact complement of the successor relation
    table = successor_table(w.dichotomy)
    for v0 in d.vertices:
        succ = table.rows[v0]
        for v1 in d.vertices:
            assert d.has_arc(v0, v1) == (v1 not in succ)


def test_strict_digraph_arc_counts_against_successor_table(six_worlds):
    for label, sd in six_worlds.items():
        d = strict_digraph(build_world(sd))
        table = successor_table(sd)
        expected = sum(72 - len(table.rows[v]) for v in d.vertices)
        assert len(d.arcs) == expected


def test_dichotomy_morphism_identity_and_doubling():
    kd = builtin_world(82)
    ident = DichotomyMorphism(source=kd, target=kd, multiplier=1, translation=0)
    assert check_dichotomy_morphism(ident).ok

    src = strong_dichotomy(12, (0, 1, 4, 5, 6, 9))
    tgt = strong_dichotomy(24, (0, 1, 2, 3, 5, 8, 9, 10, 11, 12, 15, 18))
    doubling = DichotomyMorphism.doubling(src, tgt)
    assert {2 * x % 24 for x in (0, 1, 4, 5, 6, 9)} <= set(range(24))
    verdict = check_dichotomy_morphism(doubling)
    assert verdict.ok, verdict


def test_dichotomy_morphism_failure_carries_witness():
    kd, ij = builtin_world(82), builtin_world(64)
    bad = DichotomyMorphism(source=kd, target=ij, multiplier=1, translation=0)
    verdict = check_dichotomy_morphism(bad)
    assert not verdict.ok
    assert verdict.failure == "image"
    assert verdict.witness in kd.x_part
    assert bad(verdict.witness) not in ij.x_part


def test_dichotomy_morphism_requires_well_defined_map():
    with pytest.raises(DomainError):
        DichotomyMorphism(
            source=strong_dichotomy(6, (0, 2, 3)),
            target=builtin_world(82),
            multiplier=1,  # 6*1 != 0 mod 12
            translation=0,
        )


def test_embedding_polarity_formula():
    assert embedding_polarity(1) == AffineMap(6, 1, 5)
    assert embedding_polarity(2) == AffineMap(12, 2, 5)
    assert embedding_polarity(3) == AffineMap(24, 4, 17)
    assert embedding_polarity(2) == builtin_world(82).polarity


def test_embedding_sequence_three_levels():
    seq = embedding_sequence(3)
    mods = [lv.sd.modulus for lv in seq.levels]
    assert mods == [6, 12, 24]
    assert seq.levels[0].sd.x_part == frozenset({0, 2, 3})
    for lv in seq.levels:
        assert lv.sd.polarity == embedding_polarity(lv.index)
    for lv in seq.levels[1:]:
        assert lv.verdict is not None and lv.verdict.ok
        doubled = {2 * x % lv.sd.modulus for x in lv.morphism.source.x_part}
        assert doubled <= lv.sd.x_part
    # op. 40's Z_12 dichotomy appears among the level-2 extensions
    assert (0, 1, 4, 5, 6, 9) in seq.levels[1].candidates


def test_embedding_guard():
    with pytest.raises(ResourceGuardError):
        embedding_sequence(5)
    with pytest.raises(DomainError):
        embedding_sequence(0)


def test_strict_morphism_identity_and_translations():
    w = build_world(builtin_world(82))
    d = strict_digraph(w)
    found = strict_morphisms(d, d)
    identities = [sm for sm in found if sm.is_identity]
    assert len(identities) == 1
    nonidentity = [sm for sm in found if not sm.is_identity]
    assert nonidentity
    # base translations are always among the automorphisms
    translation = {
        DualNumber(x, k, 12): DualNumber((x + 1) % 12, k, 12)
        for x in range(12)
        for k in w.dichotomy.x_part
    }
    assert any(dict(sm.mapping) == translation for sm in found)
    for sm in found[:5]:
        assert sm.verify()


def test_strict_morphism_fragment_to_ionian_world():
    kd, ij = builtin_world(82), builtin_world(64)
    frag = _fragment_intervals()
    table = successor_table(kd)
    assert table.admits(frag[0], frag[1]) and table.admits(frag[1], frag[2])
    source = strict_digraph(build_world(kd, frag))
    target = strict_digraph(build_world(ij))
    found = strict_morphisms(source, target)
    assert found
    for sm in found[:3]:
        assert sm.verify()
        assert set(dict(sm.mapping)) == set(frag)


def test_full_worlds_admit_no_affine_morphism_between_82_and_64():
    kd, ij = builtin_world(82), builtin_world(64)
    found = strict_morphisms(
        strict_digraph(build_world(kd)), strict_digraph(build_world(ij)), limit=1
    )
    assert found == ()


def test_exhaustive_mode_small_closure_and_guard():
    kd, ij = builtin_world(82), builtin_world(64)
    src = strict_digraph(build_world(kd, [DualNumber(0, 7, 12)]))
    tgt = strict_digraph(build_world(ij))
    assert len(src.vertices) == 1
    found = strict_morphisms(src, tgt, mode="exhaustive")
    # single vertex: any image with matching self-loop works
    assert found
    for sm in found:
        assert sm.verify()
    with pytest.raises(ResourceGuardError):
        strict_morphisms(strict_digraph(build_world(kd)), tgt, mode="exhaustive")
    with pytest.raises(DomainError):
        strict_morphisms(src, tgt, mode="bogus")


def test_induced_world_morphism_identity():
    w = build_world(builtin_world(82))
    d = strict_digraph(w)
    ident = StrictMorphism(
        source=d, target=d, mapping=tuple((v, v) for v in d.vertices)
    )
    wm = induce_world_morphism(ident)
    assert wm.mapping == WorldMorphism.identity(w).mapping
    assert wm.verify()


def test_induced_world_morphism_diagrams_fragment():
    kd, ij = builtin_world(82), builtin_world(64)
    source = strict_digraph(build_world(kd, _fragment_intervals()))
    target = strict_digraph(build_world(ij))
    sm = strict_morphisms(source, target, limit=1)[0]
    wm = induce_world_morphism(sm)
    src = wm.source
    # kappa diagram, exhaustively over the closure
    for xi in sorted(src.domain):
        assert wm.target.kappa(wm(xi)) == src.kappa(xi)
    assert wm.failures() == []
    with pytest.raises(OutOfDomainError):
        wm(DualNumber(11, 11, 12))


def test_induction_fails_for_arc_breaking_map():
    """A vertex map that is not a strict morphism is rejected with a
    counterexample."""
    kd = builtin_world(82)
    w = build_world(kd)
    d = strict_digraph(w)
    # collapse everything onto one vertex: sigma cannot survive
    target_vertex = DualNumber(0, 0, 12)
    bad = StrictMorphism(
        source=d, target=d, mapping=tuple((v, target_vertex) for v in d.vertices)
    )
    with pytest.raises(InductionFailedError):
        induce_world_morphism(bad)


def test_world_morphism_composition_matches_composite():
    w = build_world(builtin_world(82))
    d = strict_digraph(w)

    def translation(t):
        return StrictMorphism(
            source=d,
            target=d,
            mapping=tuple(
                (v, DualNumber((v.base + t) % 12, v.eps, 12)) for v in d.vertices
            ),
        )

    t1, t2 = translation(3), translation(5)
    composite = StrictMorphism(
        source=d,
        target=d,
        mapping=tuple((v, t2._map[t1(v)]) for v in d.vertices),
    )
    lhs = induce_world_morphism(t2).compose(induce_world_morphism(t1))
    rhs = induce_world_morphism(composite)
    assert lhs.mapping == rhs.mapping


def test_world_and_digraph_export():
    w = build_world(builtin_world(82), _fragment_intervals())
    doc = w.to_dict()
    assert doc["id"] == "82"
    assert doc["x"] == [0, 3, 4, 7, 8, 9]
    assert "domain" in doc and len(doc["domain"]) == len(w.domain)
    d = strict_digraph(w)
    ddoc = d.to_dict()
    assert set(ddoc) == {"world", "vertices", "arcs"}
    sm = strict_morphisms(d, strict_digraph(build_world(builtin_world(64))), limit=1)[0]
    mdoc = induce_world_morphism(sm).to_dict()
    assert mdoc["from"] == "82" and mdoc["to"] == "64"
    assert len(mdoc["map"]) == len(w.domain)
