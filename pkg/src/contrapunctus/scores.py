"""Two-voice first-species scores: interval projection, rule checking,
seeded generation, scale restriction, morphing, and JSON round trips.

A score position pairs one cantus firmus note with one discantus note;
position i projects to the interval (cantus_i mod 2n) + e.((discantus_i -
cantus_i) mod 2n) regardless of which voice is higher.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .algebra import DualNumber
from .errors import DomainError, SchemaError, UnsatisfiableError
from .successors import successor_table
from .worlds import World, WorldMorphism

SCHEMA_VERSION = 1

PRESET_SCALES: dict[str, tuple[int, ...]] = {
    "ionian": (2, 2, 1, 2, 2, 2, 1),
    "dorian": (2, 1, 2, 2, 2, 1, 2),
    "phrygian": (1, 2, 2, 2, 1, 2, 2),
    "lydian": (2, 2, 2, 1, 2, 2, 1),
    "mixolydian": (2, 2, 1, 2, 2, 1, 2),
    "aeolian": (2, 1, 2, 2, 1, 2, 2),
    "locrian": (1, 2, 2, 1, 2, 2, 2),
    "major": (2, 2, 1, 2, 2, 2, 1),
    "minor": (2, 1, 2, 2, 1, 2, 2),
    "chromatic": (1,) * 12,
}


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a beat value: {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise DomainError(f"not an exact beat value: {value!r}")


@dataclass(frozen=True, order=True)
class Note:
    onset: Fraction
    duration: Fraction
    pitch: int
    voice: int = 0
    loudness: int = 64

    def __post_init__(self):
        object.__setattr__(self, "onset", _fraction(self.onset))
        object.__setattr__(self, "duration", _fraction(self.duration))
        if self.onset < 0:
            raise DomainError(f"negative onset {self.onset}")
        if self.duration <= 0:
            raise DomainError(f"non-positive duration {self.duration}")
        if not 0 <= self.pitch <= 127:
            raise DomainError(f"pitch {self.pitch} outside MIDI range")
        if not 0 <= self.loudness <= 127:
            raise DomainError(f"loudness {self.loudness} outside 0..127")


@dataclass(frozen=True)
class FirstSpeciesScore:
    cantus: tuple[Note, ...]
    discantus: tuple[Note, ...]
    modulus: int = 12
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "cantus", tuple(self.cantus))
        object.__setattr__(self, "discantus", tuple(self.discantus))
        object.__setattr__(self, "meta", dict(self.meta))
        if len(self.cantus) != len(self.discantus):
            raise DomainError(
                f"voice lengths differ: {len(self.cantus)} vs {len(self.discantus)}"
            )
        for i, (c, d) in enumerate(zip(self.cantus, self.discantus)):
            if c.onset != d.onset:
                raise DomainError(f"position {i}: onsets not aligned")
        for voice in (self.cantus, self.discantus):
            for a, b in zip(voice, voice[1:]):
                if b.onset <= a.onset:
                    raise DomainError("onsets must be strictly increasing per voice")

    def __len__(self) -> int:
        return len(self.cantus)

    def pitches(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (
            tuple(n.pitch for n in self.cantus),
            tuple(n.pitch for n in self.discantus),
        )


@dataclass(frozen=True)
class IntervalSequence:
    modulus: int
    intervals: tuple[DualNumber, ...]

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        for xi in self.intervals:
            if xi.modulus != self.modulus:
                raise DomainError(f"interval {xi} has modulus {xi.modulus}")

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)


def to_intervals(score: FirstSpeciesScore) -> IntervalSequence:
    m = score.modulus
    return IntervalSequence(
        modulus=m,
        intervals=tuple(
            DualNumber(c.pitch % m, (d.pitch - c.pitch) % m, m)
            for c, d in zip(score.cantus, score.discantus)
        ),
    )


def _realize(cantus_pitch: int, k: int, modulus: int, policy: str) -> int:
    """Discantus pitch with pitch difference congruent to k, placed in the
    register at-or-above (or at-or-below) the cantus note."""
    k %= modulus
    if policy == "above":
        pitch = cantus_pitch + k
    elif policy == "below":
        pitch = cantus_pitch + k - (modulus if k else 0)
    else:
        raise DomainError(f"unknown octave policy {policy!r}")
    if not 0 <= pitch <= 127:
        raise DomainError(f"register overflow: discantus pitch {pitch}")
    return pitch


def from_intervals(
    iv: IntervalSequence,
    *,
    anchor: int = 60,
    octave_policy: str = "above",
    beat: Fraction | int = 1,
    loudness: int = 64,
    meta: Mapping | None = None,
) -> FirstSpeciesScore:
    """Render an interval sequence as a whole-note-per-position score.

    Cantus notes are placed in the octave at or above ``anchor``; the
    octave policy then places each discantus note against its cantus note.
    The projection back to intervals is the identity.
    """
    m = iv.modulus
    beat = _fraction(beat)
    cantus = []
    discantus = []
    for i, xi in enumerate(iv.intervals):
        c_pitch = anchor + ((xi.base - anchor) % m)
        if not 0 <= c_pitch <= 127:
            raise DomainError(f"register overflow: cantus pitch {c_pitch}")
        d_pitch = _realize(c_pitch, xi.eps, m, octave_policy)
        cantus.append(
            Note(onset=i * beat, duration=beat, pitch=c_pitch, voice=0, loudness=loudness)
        )
        discantus.append(
            Note(onset=i * beat, duration=beat, pitch=d_pitch, voice=1, loudness=loudness)
        )
    return FirstSpeciesScore(
        cantus=tuple(cantus),
        discantus=tuple(discantus),
        modulus=m,
        meta=dict(meta or {}),
    )


# ---------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class Violation:
    position: int
    kind: str  # "Dissonance" | "ForbiddenTransition"
    detail: str

    def to_dict(self) -> dict:
        return {"position": self.position, "kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class CheckReport:
    intervals: tuple[DualNumber, ...]
    consonant: tuple[bool, ...]
    admitted: tuple[bool | None, ...]
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "positions": [
                {"index": i, "interval": str(xi), "consonant": ok}
                for i, (xi, ok) in enumerate(zip(self.intervals, self.consonant))
            ],
            "transitions": [
                {"index": i, "admitted": adm}
                for i, adm in enumerate(self.admitted)
            ],
            "violations": [v.to_dict() for v in self.violations],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def check_first_species(score: FirstSpeciesScore, world: World) -> CheckReport:
    """Flag dissonant positions and forbidden transitions between
    consecutive consonant intervals."""
    if score.modulus != world.modulus:
        raise DomainError(
            f"score modulus {score.modulus} != world modulus {world.modulus}"
        )
    xs = to_intervals(score).intervals
    consonant = tuple(bool(world.kappa(xi)) for xi in xs)
    admitted: list[bool | None] = []
    violations: list[Violation] = []
    for i, (xi, ok) in enumerate(zip(xs, consonant)):
        if not ok:
            violations.append(
                Violation(
                    position=i,
                    kind="Dissonance",
                    detail=f"interval {xi} is dissonant",
                )
            )
    for i in range(len(xs) - 1):
        if consonant[i] and consonant[i + 1]:
            adm = bool(world.sigma(xs[i], xs[i + 1]))
            admitted.append(adm)
            if not adm:
                violations.append(
                    Violation(
                        position=i,
                        kind="ForbiddenTransition",
                        detail=f"{xs[i]} -> {xs[i + 1]} is not an admitted successor step",
                    )
                )
        else:
            admitted.append(None)
    return CheckReport(
        intervals=xs,
        consonant=consonant,
        admitted=tuple(admitted),
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# scales


@dataclass(frozen=True)
class Scale:
    """Pitch set generated from a root by a repeating step pattern."""

    root: int
    steps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(s) for s in self.steps))
        if not 0 <= self.root <= 127:
            raise DomainError(f"scale root {self.root} outside MIDI range")
        if not self.steps or any(s <= 0 for s in self.steps):
            raise DomainError("scale steps must be positive")
        if sum(self.steps) % 12:
            raise DomainError("scale step pattern must span whole octaves")

    @classmethod
    def preset(cls, name: str, root: int = 60) -> "Scale":
        try:
            return cls(root=root, steps=PRESET_SCALES[name.lower()])
        except KeyError:
            raise DomainError(f"unknown scale preset {name!r}") from None

    @cached_property
    def pitch_set(self) -> frozenset[int]:
        period = sum(self.steps)
        offsets = [0]
        for s in self.steps[:-1]:
            offsets.append(offsets[-1] + s)
        pitches = set()
        base = self.root % period
        for start in range(base - period, 128, period):
            for off in offsets:
                p = start + off
                if 0 <= p <= 127:
                    pitches.add(p)
        return frozenset(pitches)

    def __contains__(self, pitch: int) -> bool:
        return pitch in self.pitch_set


# ---------------------------------------------------------------------------
# seeded generation


def compose_random(
    world: World,
    cantus,
    *,
    seed: int = 0,
    scale: Scale | None = None,
    octave_policy: str = "above",
    step_budget: int = 1_000_000,
    loudness: int = 64,
) -> FirstSpeciesScore:
    """Compose a discantus against the given cantus firmus pitches.

    Position by position, a successor interval consistent with the next
    cantus note (and the scale, when given) is drawn uniformly from the
    admitted choices; dead ends backtrack depth-first within the step
    budget.  Deterministic for a fixed seed.
    """
    cantus = [int(p) for p in cantus]
    if not cantus:
        raise DomainError("cantus must not be empty")
    for p in cantus:
        if not 0 <= p <= 127:
            raise DomainError(f"cantus pitch {p} outside MIDI range")
    if scale is not None:
        missing = [p for p in cantus if p not in scale]
        if missing:
            raise UnsatisfiableError(
                f"cantus pitches {missing} are not in the scale"
            )
    m = world.modulus
    rng = random.Random(seed)
    table = successor_table(world.dichotomy)

    def options(i, prev_interval):
        base = cantus[i] % m
        if prev_interval is None:
            ks = [DualNumber(base, k, m) for k in sorted(world.dichotomy.x_part)]
        else:
            ks = sorted(xi for xi in table.successors(prev_interval) if xi.base == base)
        usable = []
        for xi in ks:
            if not world.kappa(xi):
                continue
            try:
                pitch = _realize(cantus[i], xi.eps, m, octave_policy)
            except DomainError:
                continue
            if scale is not None and pitch not in scale:
                continue
            usable.append((xi, pitch))
        rng.shuffle(usable)
        return usable

    steps = 0
    chosen: list[tuple[DualNumber, int]] = []
    stack = [options(0, None)]
    while stack:
        steps += 1
        if steps > step_budget:
            raise UnsatisfiableError(f"step budget {step_budget} exhausted")
        if not stack[-1]:
            stack.pop()
            if chosen:
                chosen.pop()
            continue
        xi, pitch = stack[-1].pop()
        chosen.append((xi, pitch))
        if len(chosen) == len(cantus):
            break
        stack.append(options(len(chosen), xi))
    if len(chosen) != len(cantus):
        raise UnsatisfiableError("no admissible discantus exists for this cantus")

    cantus_notes = tuple(
        Note(onset=i, duration=1, pitch=p, voice=0, loudness=loudness)
        for i, p in enumerate(cantus)
    )
    discantus_notes = tuple(
        Note(onset=i, duration=1, pitch=pitch, voice=1, loudness=loudness)
        for i, (_, pitch) in enumerate(chosen)
    )
    return FirstSpeciesScore(
        cantus=cantus_notes,
        discantus=discantus_notes,
        modulus=m,
        meta={"world": world.id, "seed": seed},
    )


# ---------------------------------------------------------------------------
# morphing


def morph_composition(
    score: FirstSpeciesScore,
    wm: WorldMorphism,
    *,
    anchor: int = 60,
    octave_policy: str = "above",
) -> FirstSpeciesScore:
    """Map the score's interval sequence pointwise through a world morphism
    and re-render it, keeping the source rhythm and loudness."""
    iv = to_intervals(score)
    if iv.modulus != wm.source.modulus:
        raise DomainError(
            f"score modulus {iv.modulus} != morphism source modulus {wm.source.modulus}"
        )
    m2 = wm.target.modulus
    mapped = [wm(xi) for xi in iv.intervals]
    cantus = []
    discantus = []
    for src_c, src_d, xi in zip(score.cantus, score.discantus, mapped):
        c_pitch = anchor + ((xi.base - anchor) % m2)
        if not 0 <= c_pitch <= 127:
            raise DomainError(f"register overflow: cantus pitch {c_pitch}")
        d_pitch = _realize(c_pitch, xi.eps, m2, octave_policy)
        cantus.append(
            Note(onset=src_c.onset, duration=src_c.duration, pitch=c_pitch,
                 voice=0, loudness=src_c.loudness)
        )
        discantus.append(
            Note(onset=src_d.onset, duration=src_d.duration, pitch=d_pitch,
                 voice=1, loudness=src_d.loudness)
        )
    meta = dict(score.meta)
    meta.update({"world": wm.target.id, "morphedFrom": wm.source.id})
    return FirstSpeciesScore(
        cantus=tuple(cantus), discantus=tuple(discantus), modulus=m2, meta=meta
    )


# ---------------------------------------------------------------------------
# JSON I/O


def score_to_dict(score: FirstSpeciesScore) -> dict:
    def voice(notes):
        return [
            {
                "onset": str(n.onset),
                "duration": str(n.duration),
                "pitch": n.pitch,
                "loudness": n.loudness,
            }
            for n in notes
        ]

    return {
        "schemaVersion": SCHEMA_VERSION,
        "modulus": score.modulus,
        "voices": {"cantus": voice(score.cantus), "discantus": voice(score.discantus)},
        "meta": dict(score.meta),
    }


def score_from_dict(doc) -> FirstSpeciesScore:
    if not isinstance(doc, dict):
        raise SchemaError("score document must be a JSON object")
    if doc.get("schemaVersion") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schemaVersion {doc.get('schemaVersion')!r}")
    modulus = doc.get("modulus")
    if not isinstance(modulus, int):
        raise SchemaError("modulus must be an integer")
    voices = doc.get("voices")
    if not isinstance(voices, dict) or set(voices) != {"cantus", "discantus"}:
        raise SchemaError("voices must contain exactly 'cantus' and 'discantus'")

    def notes(name, voice_no):
        seq = voices[name]
        if not isinstance(seq, list):
            raise SchemaError(f"{name} must be a list of notes")
        out = []
        for i, item in enumerate(seq):
            if not isinstance(item, dict):
                raise SchemaError(f"{name}[{i}] must be an object")
            try:
                out.append(
                    Note(
                        onset=Fraction(str(item["onset"])),
                        duration=Fraction(str(item["duration"])),
                        pitch=int(item["pitch"]),
                        voice=voice_no,
                        loudness=int(item.get("loudness", 64)),
                    )
                )
            except KeyError as exc:
                raise SchemaError(f"{name}[{i}] missing field {exc}") from None
            except (ValueError, ZeroDivisionError, TypeError, DomainError) as exc:
                raise SchemaError(f"{name}[{i}]: {exc}") from None
        return tuple(out)

    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise SchemaError("meta must be an object")
    try:
        return FirstSpeciesScore(
            cantus=notes("cantus", 0),
            discantus=notes("discantus", 1),
            modulus=modulus,
            meta=meta,
        )
    except DomainError as exc:
        raise SchemaError(str(exc)) from None


def write_score_json(score: FirstSpeciesScore, path=None, **kwargs) -> str:
    text = json.dumps(score_to_dict(score), **kwargs)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def read_score_json(data) -> FirstSpeciesScore:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"malformed JSON: {exc}") from None
    else:
        doc = data
    return score_from_dict(doc)
