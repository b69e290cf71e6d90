"""Interval-number dichotomies of Z_2n: rigidity, polarities, orbit
classification under the affine group, and third-torus geometry for Z_12."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import AffineMap, PitchClass, affine_group, check_modulus
from .errors import (
    DomainError,
    NoAutocomplementarityError,
    NotRigidError,
    ResourceGuardError,
)

#: Table of the six strong dichotomy classes of Z_12 by their catalogue
#: number, keyed by the conventional representative set.
BUILTIN_REPRESENTATIVES: dict[int, tuple[int, ...]] = {
    64: (2, 4, 5, 7, 9, 11),   # proper intervals of the ionian scale
    68: (0, 1, 2, 3, 5, 8),
    71: (0, 1, 2, 3, 6, 7),
    75: (0, 1, 2, 4, 5, 8),
    78: (0, 1, 2, 4, 6, 10),   # Scriabin's mystic chord
    82: (0, 3, 4, 7, 8, 9),    # classical Fux consonances
}

CLASSIFY_GUARD_MODULUS = 24


@dataclass(frozen=True)
class Dichotomy:
    """An (X/Y) split of Z_2n into complementary halves of size n."""

    modulus: int
    x_part: frozenset[int]

    def __post_init__(self):
        check_modulus(self.modulus)
        xs = frozenset(v % self.modulus for v in self.x_part)
        object.__setattr__(self, "x_part", xs)
        if len(xs) != self.modulus // 2:
            raise DomainError(
                f"need exactly {self.modulus // 2} distinct residues mod "
                f"{self.modulus}, got {len(xs)}"
            )

    @property
    def y_part(self) -> frozenset[int]:
        return frozenset(range(self.modulus)) - self.x_part

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.x_part))

    def transform(self, g: AffineMap) -> "Dichotomy":
        return Dichotomy(self.modulus, g.image(self.x_part))

    def __str__(self) -> str:
        return f"({self.as_tuple()}/{tuple(sorted(self.y_part))}) mod {self.modulus}"


@dataclass(frozen=True)
class StrongDichotomy:
    """A rigid dichotomy together with its unique polarity p, p(X) = Y."""

    dichotomy: Dichotomy
    polarity: AffineMap

    @property
    def modulus(self) -> int:
        return self.dichotomy.modulus

    @property
    def x_part(self) -> frozenset[int]:
        return self.dichotomy.x_part

    @property
    def y_part(self) -> frozenset[int]:
        return self.dichotomy.y_part

    def __str__(self) -> str:
        return f"{self.dichotomy.as_tuple()} mod {self.modulus}, polarity {self.polarity}"


def stabilizer(d: Dichotomy) -> tuple[AffineMap, ...]:
    """All affine g with g(X) = X setwise (equivalently g(X/Y) = (X/Y))."""
    return tuple(g for g in affine_group(d.modulus) if g.image(d.x_part) == d.x_part)


def autocomplementarities(d: Dichotomy) -> tuple[AffineMap, ...]:
    """All affine p with p(X) = Y."""
    y = d.y_part
    return tuple(g for g in affine_group(d.modulus) if g.image(d.x_part) == y)


def as_strong(d: Dichotomy) -> StrongDichotomy:
    """Certify d as strong; raises NotRigidError / NoAutocomplementarityError."""
    stab = stabilizer(d)
    if len(stab) != 1:
        witness = next(g for g in stab if not g.is_identity)
        raise NotRigidError(
            f"dichotomy {d.as_tuple()} mod {d.modulus} is fixed by {witness}"
        )
    autos = autocomplementarities(d)
    if not autos:
        raise NoAutocomplementarityError(
            f"no affine map exchanges the halves of {d.as_tuple()} mod {d.modulus}"
        )
    # rigidity forces uniqueness: p2^-1 p1 would stabilize (X/Y)
    assert len(autos) == 1
    return StrongDichotomy(d, autos[0])


def is_strong(d: Dichotomy) -> bool:
    try:
        as_strong(d)
        return True
    except (NotRigidError, NoAutocomplementarityError):
        return False


def orbit(d: Dichotomy) -> frozenset[Dichotomy]:
    """The affine orbit of d, acting by g(X/Y) = (g(X)/g(Y))."""
    return frozenset(d.transform(g) for g in affine_group(d.modulus))


def canonical_rep(d: Dichotomy) -> Dichotomy:
    """Lexicographically least member of the orbit, as a sorted residue tuple."""
    least = min(o.as_tuple() for o in orbit(d))
    return Dichotomy(d.modulus, frozenset(least))


def strong_dichotomy(modulus: int, members) -> StrongDichotomy:
    return as_strong(Dichotomy(modulus, frozenset(members)))


@lru_cache(maxsize=16)
def builtin_world(label: int) -> StrongDichotomy:
    """One of the six catalogued strong dichotomies of Z_12."""
    if label not in BUILTIN_REPRESENTATIVES:
        raise DomainError(f"unknown dichotomy class label {label}")
    return strong_dichotomy(12, BUILTIN_REPRESENTATIVES[label])


@lru_cache(maxsize=4)
def _label_by_canonical() -> dict[tuple[int, ...], int]:
    return {
        canonical_rep(Dichotomy(12, frozenset(rep))).as_tuple(): label
        for label, rep in BUILTIN_REPRESENTATIVES.items()
    }


def class_label(d: Dichotomy) -> int | None:
    """Catalogue number of d's class for modulus 12, else None."""
    if d.modulus != 12:
        return None
    return _label_by_canonical().get(canonical_rep(d).as_tuple())


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassEntry:
    representative: tuple[int, ...]
    polarity: AffineMap
    orbit_size: int
    label: int | None = None
    diameter: Fraction | None = None
    span: int | None = None

    def to_dict(self) -> dict:
        out = {
            "representative": list(self.representative),
            "polarity": {"t": self.polarity.translation, "u": self.polarity.multiplier},
            "orbitSize": self.orbit_size,
        }
        if self.label is not None:
            out["label"] = self.label
        if self.diameter is not None:
            out["diameter"] = (
                int(self.diameter)
                if self.diameter.denominator == 1
                else str(self.diameter)
            )
        if self.span is not None:
            out["span"] = self.span
        return out


@dataclass(frozen=True)
class ClassTable:
    modulus: int
    classes: tuple[ClassEntry, ...]

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "classes": [c.to_dict() for c in self.classes],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def labels(self) -> tuple[int, ...]:
        return tuple(c.label for c in self.classes if c.label is not None)


def classify_strong(modulus: int, *, force: bool = False) -> ClassTable:
    """Orbit classification of all strong dichotomies of Z_2n.

    Enumerates n-subsets containing residue 0 (every orbit has one, since
    translations act) and expands orbits as bitmasks; a subset is strong iff
    its orbit is free (rigid) and contains its own complement.
    """
    check_modulus(modulus)
    if modulus > CLASSIFY_GUARD_MODULUS and not force:
        raise ResourceGuardError(
            f"classification above Z_{CLASSIFY_GUARD_MODULUS} must be forced"
        )
    m = modulus
    n = m // 2
    group = affine_group(m)
    # bit-position image tables, one per group element
    tables = [tuple((g.multiplier * i + g.translation) % m for i in range(m)) for g in group]
    full = (1 << m) - 1
    seen: set[int] = set()
    entries: list[ClassEntry] = []
    for combo in itertools.combinations(range(1, m), n - 1):
        mask = 1
        for i in combo:
            mask |= 1 << i
        if mask in seen:
            continue
        orbit_masks = set()
        for tbl in tables:
            im = 0
            probe = mask
            while probe:
                low = probe & -probe
                im |= 1 << tbl[low.bit_length() - 1]
                probe ^= low
            orbit_masks.add(im)
        for om in orbit_masks:
            if om & 1:
                seen.add(om)
        if len(orbit_masks) != len(group):
            continue  # nontrivial stabilizer: not rigid
        if (full ^ mask) not in orbit_masks:
            continue  # no autocomplementarity
        rep = min(_mask_to_tuple(om) for om in orbit_masks)
        rep_d = Dichotomy(m, frozenset(rep))
        sd = as_strong(rep_d)
        dia = diameter(sd) if m == 12 else None
        spn = span(sd) if m == 12 else None
        entries.append(
            ClassEntry(
                representative=rep,
                polarity=sd.polarity,
                orbit_size=len(orbit_masks),
                label=class_label(rep_d),
                diameter=dia,
                span=spn,
            )
        )
    entries.sort(key=lambda e: e.representative)
    return ClassTable(modulus=m, classes=tuple(entries))


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def all_strong_dichotomies(modulus: int, *, force: bool = False) -> tuple[StrongDichotomy, ...]:
    """Every strong dichotomy of Z_2n (all orbit members), each with its
    own polarity, ordered by representative tuple."""
    table = classify_strong(modulus, force=force)
    out = []
    for entry in table.classes:
        for member in orbit(Dichotomy(modulus, frozenset(entry.representative))):
            out.append(as_strong(member))
    out.sort(key=lambda sd: sd.dichotomy.as_tuple())
    return tuple(out)


# ---------------------------------------------------------------------------
# third-torus geometry (Z_12 only)

# distance to 0 on the cyclic factors of Z_12 = Z_3 x Z_4; a single third
# step (+-3 or +-4 semitones) moves exactly one coordinate by one
_D3 = (0, 1, 1)
_D4 = (0, 1, 2, 1)


def third_distance(u, v) -> int:
    """Minimal number of minor/major third steps connecting two pitch
    classes of Z_12."""
    u = _pc12(u)
    v = _pc12(v)
    diff = (v - u) % 12
    return _D3[diff % 3] + _D4[diff % 4]


def _pc12(x) -> int:
    if isinstance(x, PitchClass):
        if x.modulus != 12:
            raise DomainError("third distance is defined on Z_12 only")
        return x.value
    return int(x) % 12


def _require_mod12(sd: StrongDichotomy):
    if sd.modulus != 12:
        raise DomainError("torus geometry is defined for modulus 12 only")


def diameter(sd: StrongDichotomy) -> Fraction:
    """Half the sum of third distances over ordered pairs of X."""
    _require_mod12(sd)
    xs = sorted(sd.x_part)
    total = sum(third_distance(u, v) for u in xs for v in xs)
    return Fraction(total, 2)


def span(sd: StrongDichotomy) -> int:
    """Sum of third distances between each consonance and its polar image."""
    _require_mod12(sd)
    p = sd.polarity
    return sum(third_distance(u, p(u)) for u in sorted(sd.x_part))
