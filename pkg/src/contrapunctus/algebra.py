"""Exact arithmetic in Z_2n and in the dual-number module Z_2n[e], e^2 = 0.

Affine maps on Z_2n are written T^t.u (translate by t after multiplying
by the unit u); affine maps on the dual module multiply by a dual number
a+e.b with invertible a and translate by c+e.d.  All values are immutable
and reduced modulo 2n on construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import DomainError, ModulusMismatchError


def check_modulus(modulus: int) -> int:
    if modulus < 4 or modulus % 2:
        raise DomainError(f"modulus must be an even integer >= 4, got {modulus}")
    return modulus


def units(modulus: int) -> tuple[int, ...]:
    """Invertible residues mod ``modulus``, ascending."""
    return tuple(u for u in range(1, modulus) if gcd(u, modulus) == 1)


def _same_modulus(a, b) -> int:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return a.modulus


@dataclass(frozen=True, order=True)
class PitchClass:
    """A residue in the pitch class group Z_2n."""

    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, order=True)
class AffineMap:
    """x -> multiplier * x + translation on Z_2n, written T^t.u."""

    modulus: int
    translation: int
    multiplier: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "translation", self.translation % self.modulus)
        object.__setattr__(self, "multiplier", self.multiplier % self.modulus)
        if gcd(self.multiplier, self.modulus) != 1:
            raise DomainError(
                f"multiplier {self.multiplier} is not a unit mod {self.modulus}"
            )

    @classmethod
    def identity(cls, modulus: int) -> "AffineMap":
        return cls(modulus, 0, 1)

    @property
    def is_identity(self) -> bool:
        return self.translation == 0 and self.multiplier == 1

    def __call__(self, x: int) -> int:
        return (self.multiplier * x + self.translation) % self.modulus

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        m = _same_modulus(self, other)
        return AffineMap(
            m,
            (self.multiplier * other.translation + self.translation) % m,
            (self.multiplier * other.multiplier) % m,
        )

    def invert(self) -> "AffineMap":
        m = self.modulus
        ui = pow(self.multiplier, -1, m)
        return AffineMap(m, (-ui * self.translation) % m, ui)

    def image(self, values) -> frozenset[int]:
        return frozenset(self(x) for x in values)

    def __str__(self) -> str:
        return f"T^{self.translation}.{self.multiplier}"


def affine_apply(m: AffineMap, x: PitchClass) -> PitchClass:
    if m.modulus != x.modulus:
        raise ModulusMismatchError(f"modulus mismatch: {m.modulus} vs {x.modulus}")
    return PitchClass(m(x.value), x.modulus)


def affine_compose(m1: AffineMap, m2: AffineMap) -> AffineMap:
    return m1.compose(m2)


def affine_invert(m: AffineMap) -> AffineMap:
    return m.invert()


@lru_cache(maxsize=16)
def affine_group(modulus: int) -> tuple[AffineMap, ...]:
    """All 2n * phi(2n) affine automorphisms of Z_2n, ordered by (t, u)."""
    check_modulus(modulus)
    return tuple(
        AffineMap(modulus, t, u) for t in range(modulus) for u in units(modulus)
    )


_INTERVAL_RE = re.compile(r"^\s*(-?\d+)\s*\+\s*e\s*\.?\s*(-?\d+)\s*$")


@dataclass(frozen=True, order=True)
class DualNumber:
    """base + e.eps in Z_2n[e]; base is the cantus pitch class, eps the
    interval number when the value is read as a counterpoint interval."""

    base: int
    eps: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "base", self.base % self.modulus)
        object.__setattr__(self, "eps", self.eps % self.modulus)

    @classmethod
    def parse(cls, text: str, modulus: int) -> "DualNumber":
        m = _INTERVAL_RE.match(text)
        if not m:
            raise DomainError(f"cannot parse interval literal {text!r}; expected 'x+eK'")
        return cls(int(m.group(1)), int(m.group(2)), modulus)

    def translate(self, t: int) -> "DualNumber":
        return DualNumber(self.base + t, self.eps, self.modulus)

    def __str__(self) -> str:
        return f"{self.base}+e{self.eps}"


@dataclass(frozen=True, order=True, kw_only=True)
class DualAffineMap:
    """z -> (mul_base + e.mul_eps) * z + (add_base + e.add_eps) on Z_2n[e].

    Field order matches the canonical enumeration order (c, d, a, b).
    """

    modulus: int
    add_base: int
    add_eps: int
    mul_base: int
    mul_eps: int

    def __post_init__(self):
        check_modulus(self.modulus)
        m = self.modulus
        for f in ("add_base", "add_eps", "mul_base", "mul_eps"):
            object.__setattr__(self, f, getattr(self, f) % m)
        if gcd(self.mul_base, m) != 1:
            raise DomainError(f"dual multiplier base {self.mul_base} not a unit mod {m}")

    @classmethod
    def identity(cls, modulus: int) -> "DualAffineMap":
        return cls(modulus=modulus, add_base=0, add_eps=0, mul_base=1, mul_eps=0)

    @property
    def is_identity(self) -> bool:
        return (self.mul_base, self.mul_eps, self.add_base, self.add_eps) == (1, 0, 0, 0)

    def apply(self, base: int, eps: int) -> tuple[int, int]:
        m = self.modulus
        return (
            (self.mul_base * base + self.add_base) % m,
            (self.mul_base * eps + self.mul_eps * base + self.add_eps) % m,
        )

    def __call__(self, z: DualNumber) -> DualNumber:
        if z.modulus != self.modulus:
            raise ModulusMismatchError(f"modulus mismatch: {self.modulus} vs {z.modulus}")
        b, e = self.apply(z.base, z.eps)
        return DualNumber(b, e, self.modulus)

    def compose(self, other: "DualAffineMap") -> "DualAffineMap":
        """self after other: multipliers multiply with e^2 = 0."""
        m = _same_modulus(self, other)
        a1, b1, a2, b2 = self.mul_base, self.mul_eps, other.mul_base, other.mul_eps
        tb, te = self.apply(other.add_base, other.add_eps)
        return DualAffineMap(
            modulus=m,
            add_base=tb,
            add_eps=te,
            mul_base=(a1 * a2) % m,
            mul_eps=(a1 * b2 + b1 * a2) % m,
        )

    def invert(self) -> "DualAffineMap":
        m = self.modulus
        ai = pow(self.mul_base, -1, m)
        # (a + e.b)^-1 = a^-1 - e.b a^-2
        ia, ib = ai, (-self.mul_eps * ai * ai) % m
        tb = (ia * self.add_base) % m
        te = (ia * self.add_eps + ib * self.add_base) % m
        return DualAffineMap(
            modulus=m, add_base=-tb, add_eps=-te, mul_base=ia, mul_eps=ib
        )

    def __str__(self) -> str:
        return (
            f"z -> ({self.mul_base}+e{self.mul_eps})z + "
            f"({self.add_base}+e{self.add_eps})"
        )


def dual_affine_apply(g: DualAffineMap, z: DualNumber) -> DualNumber:
    return g(z)


@lru_cache(maxsize=8)
def dual_affine_group(modulus: int) -> tuple[DualAffineMap, ...]:
    """All (2n)^2 * 2n*phi(2n) affine automorphisms of Z_2n[e],
    ordered by (add_base, add_eps, mul_base, mul_eps)."""
    check_modulus(modulus)
    us = units(modulus)
    return tuple(
        DualAffineMap(modulus=modulus, add_base=c, add_eps=d, mul_base=a, mul_eps=b)
        for c in range(modulus)
        for d in range(modulus)
        for a in us
        for b in range(modulus)
    )
