"""Contrapuntal automorphism search and the admitted-successor calculus.

For a strong dichotomy (X/Y) with polarity p = T^u.v, an automorphism g of
Z_2n[e] is contrapuntal for the consonant interval xi = x+e.k when

  (1) xi is not in g(X[e]),
  (2) the induced polarity at the cantus x exchanges g(X[e]) and g(Y[e]),
  (3) |g(X[e]) & X[e]| is maximal among maps satisfying (1) and (2).

The admitted successors of xi are the consonant members of g(X[e]) for the
contrapuntal g.  The search runs over the full affine automorphism group of
Z_2n[e]; by translation equivariance it is performed once per interval
number at cantus 0 and translated to other cantus notes.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

import numpy as np

from .algebra import AffineMap, DualAffineMap, DualNumber, units
from .dichotomies import BUILTIN_REPRESENTATIVES, StrongDichotomy, class_label
from .errors import DissonantInputError, DomainError

_CHUNK = 1 << 16


def induced_polarity(p: AffineMap, x) -> DualAffineMap:
    """The polarity of the deformed interval dichotomy at cantus x:
    z -> v.z + (x(1-v) + e.u) for p = T^u.v.

    It maps the tangent space y+e.Z onto x+v(y-x)+e.Z and restricts to p
    on the interval numbers over the fixed tangent space at x.
    """
    m = p.modulus
    x = int(x) if not hasattr(x, "value") else x.value
    v = p.multiplier
    return DualAffineMap(
        modulus=m,
        add_base=(x * (1 - v)) % m,
        add_eps=p.translation,
        mul_base=v,
        mul_eps=0,
    )


@dataclass(frozen=True)
class _CantusZeroRow:
    """Search result for one interval number k at cantus 0."""

    overlap: int                                    # N = |g(X[e]) & X[e]|
    successors: frozenset[tuple[int, int]]          # (base, eps) pairs
    maps: tuple[tuple[int, int, int, int], ...]     # (a, b, c, d) of maximal g


@dataclass(frozen=True)
class _Analysis:
    modulus: int
    consonances: tuple[int, ...]
    rows: dict[int, _CantusZeroRow]


_CACHE: dict[tuple[int, frozenset[int]], _Analysis] = {}
_CACHE_LOCK = threading.Lock()

_TABLE_CACHE: dict[tuple[int, frozenset[int]], "SuccessorTable"] = {}


def _group_arrays(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(a, b, c, d) component arrays of the dual affine group, in the same
    (c, d, a, b)-lexicographic order as algebra.dual_affine_group."""
    us = np.array(units(m), dtype=np.int64)
    nu = len(us)
    c = np.repeat(np.arange(m), m * nu * m)
    d = np.tile(np.repeat(np.arange(m), nu * m), m)
    a = np.tile(np.repeat(us, m), m * m)
    b = np.tile(np.arange(m), m * m * nu)
    return a, b, c, d


def _polarity_permutation(sd: StrongDichotomy, x: int) -> np.ndarray:
    """Index permutation of Z_2n[e] (index = base*2n + eps) induced by the
    polarity at cantus x; an involution."""
    m = sd.modulus
    p = induced_polarity(sd.polarity, x)
    xb = np.repeat(np.arange(m), m)
    ye = np.tile(np.arange(m), m)
    return ((p.mul_base * xb + p.add_base) % m) * m + (
        (p.mul_base * ye + p.mul_eps * xb + p.add_eps) % m
    )


def _image_tensor(a, b, c, d, ex, ey, m):
    """Boolean (len(a), m*m) indicators of g(X[e]) for each map in the slice."""
    ib = (a[:, None] * ex[None, :] + c[:, None]) % m
    ie = (a[:, None] * ey[None, :] + b[:, None] * ex[None, :] + d[:, None]) % m
    idx = ib * m + ie
    w = np.zeros((len(a), m * m), dtype=bool)
    w[np.arange(len(a))[:, None], idx] = True
    return w


def _analyze(sd: StrongDichotomy) -> _Analysis:
    key = (sd.modulus, sd.x_part)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    # build under the lock so each world is analyzed at most once
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
        if hit is not None:
            return hit
        analysis = _analyze_locked(sd)
        _CACHE[key] = analysis
        return analysis


def _analyze_locked(sd: StrongDichotomy) -> _Analysis:
    m = sd.modulus
    xs = tuple(sorted(sd.x_part))
    n = len(xs)
    ex = np.repeat(np.arange(m), n)
    ey = np.tile(np.array(xs, dtype=np.int64), m)
    cons_idx = ex * m + ey
    pi0 = _polarity_permutation(sd, 0)
    a, b, c, d = _group_arrays(m)

    best: dict[int, list] = {k: [-1, np.zeros(m * m, dtype=bool), []] for k in xs}
    for lo in range(0, len(a), _CHUNK):
        sl = slice(lo, lo + _CHUNK)
        w = _image_tensor(a[sl], b[sl], c[sl], d[sl], ex, ey, m)
        ok2 = (w[:, pi0] == ~w).all(axis=1)
        ov = w[:, cons_idx].sum(axis=1)
        for k in xs:
            cand = ok2 & ~w[:, k]           # (1): 0+e.k must be a deformed dissonance
            if not cand.any():
                continue
            mx = int(ov[cand].max())
            record = best[k]
            if mx < record[0]:
                continue
            if mx > record[0]:
                record[0] = mx
                record[1] = np.zeros(m * m, dtype=bool)
                record[2] = []
            rows = np.nonzero(cand & (ov == mx))[0]
            record[1] |= w[rows].any(axis=0)
            record[2].extend(
                (int(a[lo + i]), int(b[lo + i]), int(c[lo + i]), int(d[lo + i]))
                for i in rows
            )

    x_set = set(xs)
    rows: dict[int, _CantusZeroRow] = {}
    for k in xs:
        mx, union, maps = best[k]
        if mx < 0:
            raise DomainError(
                f"no contrapuntal automorphism exists for interval number {k} "
                f"of {sorted(sd.x_part)} mod {m}"
            )
        succ = frozenset(
            (int(i) // m, int(i) % m)
            for i in np.nonzero(union)[0]
            if int(i) % m in x_set
        )
        rows[k] = _CantusZeroRow(overlap=mx, successors=succ, maps=tuple(maps))
    return _Analysis(modulus=m, consonances=xs, rows=rows)


def _as_dichotomy(world) -> StrongDichotomy:
    """Accept either a StrongDichotomy or anything wrapping one (a World)."""
    if isinstance(world, StrongDichotomy):
        return world
    inner = getattr(world, "dichotomy", None)
    if isinstance(inner, StrongDichotomy):
        return inner
    raise DomainError(f"cannot interpret {world!r} as a strong dichotomy")


def _consonant_or_raise(sd: StrongDichotomy, xi: DualNumber):
    if xi.modulus != sd.modulus:
        raise DomainError(f"interval modulus {xi.modulus} != world modulus {sd.modulus}")
    if xi.eps not in sd.x_part:
        raise DissonantInputError(
            f"interval number {xi.eps} is dissonant in {sorted(sd.x_part)} mod {sd.modulus}"
        )


def contrapuntal_automorphisms(world, xi: DualNumber) -> tuple[DualAffineMap, ...]:
    """All maximal contrapuntal automorphisms for the consonant interval xi,
    ordered by (add_base, add_eps, mul_base, mul_eps)."""
    sd = _as_dichotomy(world)
    _consonant_or_raise(sd, xi)
    row = _analyze(sd).rows[xi.eps]
    m = sd.modulus
    x = xi.base
    # conjugate the cantus-0 maps by the base translation z -> z + x
    conj = [
        (a, b, (c + x * (1 - a)) % m, (d - b * x) % m) for (a, b, c, d) in row.maps
    ]
    conj.sort(key=lambda t: (t[2], t[3], t[0], t[1]))
    return tuple(
        DualAffineMap(modulus=m, add_base=c, add_eps=d, mul_base=a, mul_eps=b)
        for (a, b, c, d) in conj
    )


def admitted_successors(world, xi: DualNumber) -> frozenset[DualNumber]:
    """All admitted successors of the consonant interval xi."""
    sd = _as_dichotomy(world)
    _consonant_or_raise(sd, xi)
    row = _analyze(sd).rows[xi.eps]
    m = sd.modulus
    return frozenset(
        DualNumber((bx + xi.base) % m, ke, m) for (bx, ke) in row.successors
    )


def contrapuntal_overlap(world, xi: DualNumber) -> int:
    """N = |g(X[e]) & X[e]| attained by the contrapuntal automorphisms of xi."""
    sd = _as_dichotomy(world)
    _consonant_or_raise(sd, xi)
    return _analyze(sd).rows[xi.eps].overlap


@dataclass(frozen=True)
class SuccessorTable:
    """Memoized successor relation of a world: one row per consonant interval."""

    world: str
    modulus: int
    consonances: tuple[int, ...]
    rows: dict[DualNumber, frozenset[DualNumber]]

    def successors(self, xi: DualNumber) -> frozenset[DualNumber]:
        try:
            return self.rows[xi]
        except KeyError:
            raise DissonantInputError(f"{xi} is not a consonant interval") from None

    def admits(self, xi: DualNumber, eta: DualNumber) -> bool:
        return eta in self.rows.get(xi, frozenset())

    def min_count(self, *, include_self: bool = True) -> int:
        if include_self:
            return min(len(s) for s in self.rows.values())
        return min(len(s - {xi}) for xi, s in self.rows.items())

    def to_dict(self) -> dict:
        return {
            "world": self.world,
            "modulus": self.modulus,
            "x": list(self.consonances),
            "rows": [
                {
                    "interval": str(xi),
                    "successors": [str(s) for s in sorted(succ)],
                }
                for xi, succ in sorted(self.rows.items())
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def successor_table(world) -> SuccessorTable:
    """The full successor table of a world, computed once and cached."""
    sd = _as_dichotomy(world)
    key = (sd.modulus, sd.x_part)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    analysis = _analyze(sd)
    m = sd.modulus
    with _CACHE_LOCK:
        hit = _TABLE_CACHE.get(key)
        if hit is not None:
            return hit
        rows: dict[DualNumber, frozenset[DualNumber]] = {}
        for x in range(m):
            for k in analysis.consonances:
                base_row = analysis.rows[k].successors
                rows[DualNumber(x, k, m)] = frozenset(
                    DualNumber((bx + x) % m, ke, m) for (bx, ke) in base_row
                )
        table = SuccessorTable(
            world=world_id(sd),
            modulus=m,
            consonances=analysis.consonances,
            rows=rows,
        )
        _TABLE_CACHE[key] = table
        return table


def forbidden_parallels(world) -> frozenset[int]:
    """Interval numbers k that may never be followed by k over a different
    cantus note, in any position."""
    sd = _as_dichotomy(world)
    analysis = _analyze(sd)
    out = set()
    for k, row in analysis.rows.items():
        if not any(bx != 0 and ke == k for (bx, ke) in row.successors):
            out.add(k)
    return frozenset(out)


def world_id(world) -> str:
    """Stable identifier: the Z_12 catalogue label for the six conventional
    representative sets, otherwise 'x1,x2,...@modulus'."""
    sd = _as_dichotomy(world)
    label = class_label(sd.dichotomy)
    if label is not None and sd.x_part == frozenset(BUILTIN_REPRESENTATIVES[label]):
        return str(label)
    xs = ",".join(str(v) for v in sorted(sd.x_part))
    return f"{xs}@{sd.modulus}"
