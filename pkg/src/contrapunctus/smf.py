"""Minimal Standard MIDI File writer: format 1, one track per voice,
480 ticks per quarter, fixed default tempo."""

from __future__ import annotations

import struct
from fractions import Fraction

from .scores import FirstSpeciesScore

TICKS_PER_QUARTER = 480
DEFAULT_TEMPO_BPM = 120


def encode_vlq(value: int) -> bytes:
    """MIDI variable-length quantity, big-endian 7-bit groups."""
    if value < 0:
        raise ValueError("delta times must be non-negative")
    groups = [value & 0x7F]
    value >>= 7
    while value:
        groups.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(groups))


def _ticks(beats: Fraction) -> int:
    return round(beats * TICKS_PER_QUARTER)


def _track_chunk(events: list[tuple[int, bytes]]) -> bytes:
    """events: (absolute tick, payload); note-offs sort before note-ons."""
    events = sorted(events, key=lambda e: (e[0], e[1][0] & 0xF0 != 0x80))
    body = bytearray()
    clock = 0
    for tick, payload in events:
        body += encode_vlq(tick - clock)
        body += payload
        clock = tick
    body += encode_vlq(0) + bytes((0xFF, 0x2F, 0x00))
    return b"MTrk" + struct.pack(">I", len(body)) + bytes(body)


def encode_score(score: FirstSpeciesScore) -> bytes:
    """Serialize a two-voice score as an SMF format-1 byte string."""
    header = b"MThd" + struct.pack(">IHHH", 6, 1, 2, TICKS_PER_QUARTER)
    tempo = round(60_000_000 / DEFAULT_TEMPO_BPM)
    chunks = []
    for channel, (name, notes) in enumerate(
        (("cantus", score.cantus), ("discantus", score.discantus))
    ):
        events: list[tuple[int, bytes]] = [
            (0, bytes((0xFF, 0x03, len(name))) + name.encode("ascii"))
        ]
        if channel == 0:
            events.append((0, bytes((0xFF, 0x51, 0x03)) + struct.pack(">I", tempo)[1:]))
        for note in notes:
            on = _ticks(note.onset)
            off = _ticks(note.onset + note.duration)
            events.append((on, bytes((0x90 | channel, note.pitch, note.loudness))))
            events.append((off, bytes((0x80 | channel, note.pitch, 0))))
        chunks.append(_track_chunk(events))
    return header + b"".join(chunks)


def write_midi(score: FirstSpeciesScore, path) -> int:
    """Write the score as a MIDI file; returns the number of bytes written."""
    data = encode_score(score)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)
