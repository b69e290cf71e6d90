"""Counterpoint worlds, strict digraphs, and their morphisms.

A world packages a strong dichotomy with a consonance predicate kappa, a
successor predicate sigma and a global polarity over a closed interval
domain.  Forbidden steps form the strict digraph; structure-preserving
vertex maps between strict digraphs induce world morphisms.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .algebra import AffineMap, DualNumber, affine_group
from .dichotomies import Dichotomy, StrongDichotomy, as_strong
from .errors import (
    DomainError,
    InductionFailedError,
    OutOfDomainError,
    ResourceGuardError,
    SearchExhaustedError,
)
from .successors import successor_table, world_id

EMBEDDING_GUARD_MODULUS = 48
EXHAUSTIVE_VERTEX_BOUND = 12


@dataclass(frozen=True)
class World:
    """(kappa, sigma, global polarity) over the closure of a chosen domain."""

    dichotomy: StrongDichotomy
    domain: frozenset[DualNumber]

    @property
    def modulus(self) -> int:
        return self.dichotomy.modulus

    @property
    def id(self) -> str:
        return world_id(self.dichotomy)

    def global_polarity(self, xi: DualNumber) -> DualNumber:
        """x + e.i -> x + e.p(i)."""
        return DualNumber(xi.base, self.dichotomy.polarity(xi.eps), self.modulus)

    def kappa(self, xi: DualNumber) -> int:
        """1 iff xi is a consonant interval of the domain."""
        return int(xi in self.domain and xi.eps in self.dichotomy.x_part)

    def sigma(self, xi0: DualNumber, xi1: DualNumber) -> int:
        """1 iff xi1 is an admitted successor of xi0 within the domain."""
        if xi0 not in self.domain or xi1 not in self.domain:
            return 0
        if xi0.eps not in self.dichotomy.x_part:
            return 0
        return int(successor_table(self.dichotomy).admits(xi0, xi1))

    @cached_property
    def vertices(self) -> tuple[DualNumber, ...]:
        return tuple(sorted(xi for xi in self.domain if self.kappa(xi)))

    @property
    def is_full(self) -> bool:
        return len(self.domain) == self.modulus * self.modulus

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "modulus": self.modulus,
            "x": sorted(self.dichotomy.x_part),
            "polarity": {
                "t": self.dichotomy.polarity.translation,
                "u": self.dichotomy.polarity.multiplier,
            },
            "vertices": [str(v) for v in self.vertices],
            "kappa": {str(xi): self.kappa(xi) for xi in sorted(self.domain)},
        }
        if not self.is_full:
            out["domain"] = [str(xi) for xi in sorted(self.domain)]
        return out


def build_world(sd: StrongDichotomy, domain=None) -> World:
    """Build the world of a strong dichotomy over the closure of ``domain``
    (default: all of Z_2n[e])."""
    m = sd.modulus
    if domain is None:
        closed = frozenset(
            DualNumber(x, y, m) for x in range(m) for y in range(m)
        )
    else:
        base = set()
        for xi in domain:
            if xi.modulus != m:
                raise DomainError(f"domain interval {xi} has modulus {xi.modulus}, world has {m}")
            base.add(xi)
        closed = frozenset(base) | frozenset(
            DualNumber(xi.base, sd.polarity(xi.eps), m) for xi in base
        )
    return World(dichotomy=sd, domain=closed)


# ---------------------------------------------------------------------------
# strict digraphs


@dataclass(frozen=True)
class StrictDigraph:
    """Consonant intervals with an arc for every forbidden step."""

    world: World
    vertices: tuple[DualNumber, ...]
    arcs: frozenset[tuple[DualNumber, DualNumber]]

    def has_arc(self, xi0: DualNumber, xi1: DualNumber) -> bool:
        return (xi0, xi1) in self.arcs

    def to_dict(self) -> dict:
        return {
            "world": self.world.id,
            "vertices": [str(v) for v in self.vertices],
            "arcs": sorted([str(a), str(b)] for (a, b) in self.arcs),
        }


def strict_digraph(world: World) -> StrictDigraph:
    verts = world.vertices
    arcs = frozenset(
        (v0, v1)
        for v0 in verts
        for v1 in verts
        if not world.sigma(v0, v1)
    )
    return StrictDigraph(world=world, vertices=verts, arcs=arcs)


# ---------------------------------------------------------------------------
# dichotomy morphisms


@dataclass(frozen=True)
class DichotomyMorphism:
    """Affine map x -> multiplier*x + translation between the carriers of
    two strong dichotomies; no invertibility required."""

    source: StrongDichotomy
    target: StrongDichotomy
    multiplier: int
    translation: int

    def __post_init__(self):
        m1, m2 = self.source.modulus, self.target.modulus
        object.__setattr__(self, "multiplier", self.multiplier % m2)
        object.__setattr__(self, "translation", self.translation % m2)
        if (m1 * self.multiplier) % m2:
            raise DomainError(
                f"x -> {self.multiplier}x+{self.translation} is not well defined "
                f"from Z_{m1} to Z_{m2}"
            )

    @classmethod
    def doubling(cls, source: StrongDichotomy, target: StrongDichotomy) -> "DichotomyMorphism":
        return cls(source=source, target=target, multiplier=2, translation=0)

    def __call__(self, x: int) -> int:
        return (self.multiplier * x + self.translation) % self.target.modulus


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    failure: str | None = None
    witness: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out["failure"] = self.failure
            out["witness"] = self.witness
        return out


def check_dichotomy_morphism(phi: DichotomyMorphism) -> MorphismVerdict:
    """phi(X1) must land in X2 and the polarity square must commute
    pointwise; on failure the verdict carries a counterexample residue."""
    src, tgt = phi.source, phi.target
    for x in sorted(src.x_part):
        if phi(x) not in tgt.x_part:
            return MorphismVerdict(ok=False, failure="image", witness=x)
    p1, p2 = src.polarity, tgt.polarity
    for x in range(src.modulus):
        if phi(p1(x)) != p2(phi(x)):
            return MorphismVerdict(ok=False, failure="polarity-square", witness=x)
    return MorphismVerdict(ok=True)


# ---------------------------------------------------------------------------
# the doubling embedding sequence


def embedding_polarity(level: int) -> AffineMap:
    """T^(2^(n-1)).(4^ceil(n/2)+1) on Z_(3*2^n)."""
    m = 3 * 2**level
    return AffineMap(m, 2 ** (level - 1), 4 ** ((level + 1) // 2) + 1)


@dataclass(frozen=True)
class EmbeddingLevel:
    index: int
    sd: StrongDichotomy
    candidates: tuple[tuple[int, ...], ...]
    morphism: DichotomyMorphism | None = None
    verdict: MorphismVerdict | None = None


@dataclass(frozen=True)
class EmbeddingSequence:
    levels: tuple[EmbeddingLevel, ...]

    def to_dict(self) -> dict:
        return {
            "levels": [
                {
                    "modulus": lv.sd.modulus,
                    "x": sorted(lv.sd.x_part),
                    "polarity": {
                        "t": lv.sd.polarity.translation,
                        "u": lv.sd.polarity.multiplier,
                    },
                    "candidates": len(lv.candidates),
                    "doublingOk": None if lv.verdict is None else lv.verdict.ok,
                }
                for lv in self.levels
            ]
        }


def _polarity_pairs(pol: AffineMap):
    """Orbit pairs {z, p(z)} of an involution; None if a fixed point exists."""
    m = pol.modulus
    pairs = set()
    for z in range(m):
        w = pol(z)
        if w == z:
            return None
        pairs.add(frozenset((z, w)))
    return sorted(pairs, key=min)


def _strong_sets_with_polarity(m: int, pol: AffineMap, forced=frozenset()):
    """All strong X with the given polarity that contain ``forced``: one
    element per polarity pair, the forced ones fixed in advance."""
    pairs = _polarity_pairs(pol)
    if pairs is None:
        return []
    fixed: set[int] = set()
    free = []
    for pair in pairs:
        hit = set(pair) & forced
        if len(hit) == 2:
            return []
        if len(hit) == 1:
            fixed |= hit
        else:
            free.append(sorted(pair))
    nonidentity = [g for g in affine_group(m) if not g.is_identity]
    found = []
    for picks in itertools.product(*free):
        xs = frozenset(fixed | set(picks))
        if not any(g.image(xs) == xs for g in nonidentity):
            found.append(tuple(sorted(xs)))
    return sorted(found)


def embedding_sequence(levels: int, *, force: bool = False) -> EmbeddingSequence:
    """Search a chain of strong dichotomies on Z_6, Z_12, ..., Z_(3*2^L)
    with the formula polarities, linked by multiplication-by-2 morphisms.

    Depth-first over extension candidates in lexicographic order, so the
    result is the lexicographically least chain reaching the requested
    depth.  Raises SearchExhaustedError when no chain exists.
    """
    if levels < 1:
        raise DomainError("levels must be >= 1")
    if 3 * 2**levels > EMBEDDING_GUARD_MODULUS and not force:
        raise ResourceGuardError(
            f"embedding beyond Z_{EMBEDDING_GUARD_MODULUS} must be forced"
        )

    def search(chain, cand_lists):
        level = len(chain)
        if level == levels:
            return chain, cand_lists
        pol = embedding_polarity(level + 1)
        m_next = pol.modulus
        forced = (
            frozenset()
            if not chain
            else frozenset((2 * x) % m_next for x in chain[-1])
        )
        cands = _strong_sets_with_polarity(m_next, pol, forced)
        for cand in cands:
            res = search(chain + [cand], cand_lists + [tuple(cands)])
            if res is not None:
                return res
        return None

    found = search([], [])
    if found is None:
        raise SearchExhaustedError(
            f"no embedding chain of depth {levels} with the formula polarities"
        )
    chain, cand_lists = found
    out = []
    prev_sd = None
    for i, xs in enumerate(chain, start=1):
        sd = as_strong(Dichotomy(3 * 2**i, frozenset(xs)))
        morphism = verdict = None
        if prev_sd is not None:
            morphism = DichotomyMorphism.doubling(prev_sd, sd)
            verdict = check_dichotomy_morphism(morphism)
        out.append(
            EmbeddingLevel(
                index=i,
                sd=sd,
                candidates=cand_lists[i - 1],
                morphism=morphism,
                verdict=verdict,
            )
        )
        prev_sd = sd
    return EmbeddingSequence(levels=tuple(out))


# ---------------------------------------------------------------------------
# strict digraph morphisms


@dataclass(frozen=True)
class StrictMorphism:
    """Vertex map between strict digraphs preserving and reflecting arcs."""

    source: StrictDigraph
    target: StrictDigraph
    mapping: tuple[tuple[DualNumber, DualNumber], ...]

    @cached_property
    def _map(self) -> dict[DualNumber, DualNumber]:
        return dict(self.mapping)

    def __call__(self, xi: DualNumber) -> DualNumber:
        try:
            return self._map[xi]
        except KeyError:
            raise OutOfDomainError(f"{xi} is not a vertex of the source digraph") from None

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)

    def verify(self) -> bool:
        """Recheck the arc condition on every vertex pair."""
        for v0 in self.source.vertices:
            for v1 in self.source.vertices:
                if self.source.has_arc(v0, v1) != self.target.has_arc(
                    self._map[v0], self._map[v1]
                ):
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "from": self.source.world.id,
            "to": self.target.world.id,
            "map": {str(a): str(b) for a, b in self.mapping},
        }


def _arc_table(d: StrictDigraph):
    verts = d.vertices
    return verts, {(a, b): d.has_arc(a, b) for a in verts for b in verts}


def strict_morphisms(
    source: StrictDigraph,
    target: StrictDigraph,
    mode: str = "affine",
    *,
    exhaustive_bound: int = EXHAUSTIVE_VERTEX_BOUND,
    limit: int | None = None,
) -> tuple[StrictMorphism, ...]:
    """Vertex maps phi with (v0,v1) an arc iff (phi v0, phi v1) is an arc.

    ``affine`` searches restrictions of affine endomorphisms
    z -> (a+e.b)z + (c+e.d) of the dual module (a need not be a unit, so
    non-injective maps are found too).  ``exhaustive`` backtracks over all
    vertex maps and is guarded to small source digraphs.
    """
    if mode == "affine":
        found = _affine_induced(source, target, limit)
    elif mode == "exhaustive":
        if len(source.vertices) > exhaustive_bound:
            raise ResourceGuardError(
                f"exhaustive search refused for {len(source.vertices)} vertices "
                f"(bound {exhaustive_bound})"
            )
        found = _exhaustive(source, target, limit)
    else:
        raise DomainError(f"unknown search mode {mode!r}")
    return tuple(found)


def _affine_induced(source, target, limit):
    m1 = source.world.modulus
    m2 = target.world.modulus
    verts = source.vertices
    tverts = set(target.vertices)
    _, arcs1 = _arc_table(source)
    mults = [a for a in range(m2) if (m1 * a) % m2 == 0]
    out = []
    for a in mults:
        for b in mults:
            for c in range(m2):
                for d in range(m2):
                    phi = {}
                    ok = True
                    for v in verts:
                        img = DualNumber(
                            a * v.base + c, a * v.eps + b * v.base + d, m2
                        )
                        if img not in tverts:
                            ok = False
                            break
                        phi[v] = img
                    if not ok:
                        continue
                    if all(
                        arcs1[(v0, v1)] == target.has_arc(phi[v0], phi[v1])
                        for v0 in verts
                        for v1 in verts
                    ):
                        out.append(
                            StrictMorphism(
                                source=source,
                                target=target,
                                mapping=tuple(sorted(phi.items())),
                            )
                        )
                        if limit is not None and len(out) >= limit:
                            return out
    return out


def _exhaustive(source, target, limit):
    verts = list(source.vertices)
    tverts = list(target.vertices)
    _, arcs1 = _arc_table(source)
    out = []
    assignment: dict[DualNumber, DualNumber] = {}

    def extend(i):
        if limit is not None and len(out) >= limit:
            return
        if i == len(verts):
            out.append(
                StrictMorphism(
                    source=source,
                    target=target,
                    mapping=tuple(sorted(assignment.items())),
                )
            )
            return
        v = verts[i]
        for img in tverts:
            good = True
            for w, wim in assignment.items():
                if (
                    arcs1[(v, w)] != target.has_arc(img, wim)
                    or arcs1[(w, v)] != target.has_arc(wim, img)
                ):
                    good = False
                    break
            if good and arcs1[(v, v)] == target.has_arc(img, img):
                assignment[v] = img
                extend(i + 1)
                del assignment[v]

    extend(0)
    return out


# ---------------------------------------------------------------------------
# world morphisms


@dataclass(frozen=True)
class WorldMorphism:
    """A map of closed interval domains compatible with kappa, sigma and
    the global polarities."""

    source: World
    target: World
    mapping: tuple[tuple[DualNumber, DualNumber], ...]

    @cached_property
    def _map(self) -> dict[DualNumber, DualNumber]:
        return dict(self.mapping)

    def __call__(self, xi: DualNumber) -> DualNumber:
        try:
            return self._map[xi]
        except KeyError:
            raise OutOfDomainError(f"{xi} is outside the morphism domain") from None

    @classmethod
    def identity(cls, world: World) -> "WorldMorphism":
        return cls(
            source=world,
            target=world,
            mapping=tuple((xi, xi) for xi in sorted(world.domain)),
        )

    def compose(self, other: "WorldMorphism") -> "WorldMorphism":
        """self after other."""
        if other.target != self.source:
            raise DomainError("morphisms are not composable")
        return WorldMorphism(
            source=other.source,
            target=self.target,
            mapping=tuple((xi, self(other(xi))) for xi, _ in other.mapping),
        )

    def failures(self) -> list[str]:
        """Pointwise check of the three commuting diagrams; empty when valid."""
        src, tgt = self.source, self.target
        probs = []
        for xi in sorted(src.domain):
            img = self._map.get(xi)
            if img is None:
                probs.append(f"unmapped domain element {xi}")
                continue
            if img not in tgt.domain:
                probs.append(f"{xi} -> {img} leaves the target domain")
                continue
            if tgt.kappa(img) != src.kappa(xi):
                probs.append(f"kappa mismatch at {xi}")
            if self._map.get(src.global_polarity(xi)) != tgt.global_polarity(img):
                probs.append(f"polarity square fails at {xi}")
        if probs:
            return probs
        for xi0 in sorted(src.domain):
            for xi1 in sorted(src.domain):
                if tgt.sigma(self._map[xi0], self._map[xi1]) != src.sigma(xi0, xi1):
                    probs.append(f"sigma mismatch at ({xi0}, {xi1})")
        return probs

    def verify(self) -> bool:
        return not self.failures()

    def to_dict(self) -> dict:
        return {
            "from": self.source.id,
            "to": self.target.id,
            "map": {str(a): str(b) for a, b in self.mapping},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def induce_world_morphism(sm: StrictMorphism) -> WorldMorphism:
    """Extend a strict digraph morphism to the full closed domains: values
    on dissonances are forced by the polarity diagram."""
    src = sm.source.world
    tgt = sm.target.world
    psi: dict[DualNumber, DualNumber] = {}
    for v, img in sm.mapping:
        psi[v] = img
    for zeta in src.domain:
        if zeta in psi:
            continue
        mate = src.global_polarity(zeta)
        if mate not in psi:
            raise InductionFailedError(
                f"no consonant polarity mate for {zeta} in the source domain"
            )
        psi[zeta] = tgt.global_polarity(psi[mate])
    wm = WorldMorphism(source=src, target=tgt, mapping=tuple(sorted(psi.items())))
    probs = wm.failures()
    if probs:
        raise InductionFailedError(probs[0])
    return wm
