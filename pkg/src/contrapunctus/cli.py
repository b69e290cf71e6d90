"""Command-line interface to the counterpoint engine.

Worlds are selected either by a Z_12 catalogue label (64, 68, 71, 75, 78,
82) or by an explicit residue set with a modulus, written ``0,2,3@6``.
Interval literals are written ``x+eK`` (e.g. ``0+e7``).  Machine-readable
output is requested with ``--json``; exit codes are 0 for success, 1 for
domain errors (including failed checks), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import DualNumber
from .dichotomies import (
    BUILTIN_REPRESENTATIVES,
    Dichotomy,
    StrongDichotomy,
    as_strong,
    classify_strong,
    diameter,
    span,
    strong_dichotomy,
)
from .errors import DomainError, SearchExhaustedError, UnknownWorldError
from .scores import (
    Scale,
    check_first_species,
    compose_random,
    morph_composition,
    read_score_json,
    to_intervals,
    write_score_json,
)
from .smf import write_midi
from .successors import admitted_successors, forbidden_parallels, world_id
from .worlds import (
    build_world,
    embedding_sequence,
    induce_world_morphism,
    strict_digraph,
    strict_morphisms,
)

DEFAULT_PORT = 8000


def resolve_world_selector(sel: str, modulus: int | None = None) -> StrongDichotomy:
    """'82' -> catalogue world; '0,2,3@6' or '0,2,3' with modulus -> custom."""
    sel = sel.strip()
    if "@" in sel:
        members_part, _, mod_part = sel.partition("@")
        return strong_dichotomy(int(mod_part), _parse_members(members_part))
    if sel.isdigit() and int(sel) in BUILTIN_REPRESENTATIVES:
        return strong_dichotomy(12, BUILTIN_REPRESENTATIVES[int(sel)])
    if "," in sel:
        if modulus is None:
            raise UnknownWorldError(
                f"selector {sel!r} needs an explicit modulus ('SET@MOD' or --modulus)"
            )
        return strong_dichotomy(modulus, _parse_members(sel))
    raise UnknownWorldError(f"unknown world label {sel!r}")


def _parse_members(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise UnknownWorldError(f"cannot parse residue set {text!r}") from None


def _parse_scale(text: str) -> Scale:
    tokens = [tok.strip() for tok in text.split(",")]
    root = int(tokens[0])
    if len(tokens) == 2 and not tokens[1].isdigit():
        return Scale.preset(tokens[1], root=root)
    return Scale(root=root, steps=tuple(int(t) for t in tokens[1:]))


def _emit(doc, as_json: bool, human_lines) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        for line in human_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args) -> int:
    table = classify_strong(args.modulus, force=args.force)
    doc = table.to_dict()
    lines = [f"{len(table.classes)} strong dichotomy classes of Z_{args.modulus}"]
    for entry in table.classes:
        tail = ""
        if entry.label is not None:
            rep = BUILTIN_REPRESENTATIVES[entry.label]
            pol = as_strong(Dichotomy(12, frozenset(rep))).polarity
            tail = f"  [class {entry.label}: {set(rep)} polarity {pol}]"
        geo = (
            f" diameter {entry.diameter} span {entry.span}"
            if entry.diameter is not None
            else ""
        )
        lines.append(
            f"  {set(entry.representative)} polarity {entry.polarity} "
            f"orbit {entry.orbit_size}{geo}{tail}"
        )
    _emit(doc, args.json, lines)
    return 0


def _world_info(sd: StrongDichotomy) -> dict:
    doc = {
        "id": world_id(sd),
        "modulus": sd.modulus,
        "x": sorted(sd.x_part),
        "y": sorted(sd.y_part),
        "polarity": {"t": sd.polarity.translation, "u": sd.polarity.multiplier},
        "forbiddenParallels": sorted(forbidden_parallels(sd)),
    }
    if sd.modulus == 12:
        dia = diameter(sd)
        doc["diameter"] = int(dia) if dia.denominator == 1 else str(dia)
        doc["span"] = span(sd)
    return doc


def _cmd_world(args) -> int:
    if (args.id is None) == (args.custom is None):
        raise UnknownWorldError("choose exactly one of --id or --custom")
    if args.id is not None:
        sd = resolve_world_selector(args.id)
    else:
        sd = strong_dichotomy(args.modulus or 12, _parse_members(args.custom))
    doc = _world_info(sd)
    lines = [
        f"world {doc['id']}: strong dichotomy mod {doc['modulus']}",
        f"  consonances X = {doc['x']}",
        f"  dissonances Y = {doc['y']}",
        f"  polarity {sd.polarity}",
        f"  forbidden parallels: {doc['forbiddenParallels'] or 'none'}",
    ]
    if "diameter" in doc:
        lines.append(f"  diameter {doc['diameter']}, span {doc['span']}")
    _emit(doc, args.json, lines)
    return 0


def _cmd_successors(args) -> int:
    sd = resolve_world_selector(args.world, args.modulus)
    xi = DualNumber.parse(args.interval, sd.modulus)
    succ = sorted(admitted_successors(sd, xi))
    doc = {
        "world": world_id(sd),
        "interval": str(xi),
        "count": len(succ),
        "successors": [str(s) for s in succ],
    }
    _emit(doc, args.json, [f"{len(succ)} admitted successors of {xi}:",
                           "  " + " ".join(str(s) for s in succ)])
    return 0


def _cmd_parallels(args) -> int:
    sd = resolve_world_selector(args.world, args.modulus)
    fps = sorted(forbidden_parallels(sd))
    doc = {"world": world_id(sd), "forbiddenParallels": fps}
    _emit(doc, args.json, [", ".join(str(k) for k in fps) if fps else "none"])
    return 0


def _cmd_check(args) -> int:
    sd = resolve_world_selector(args.world, args.modulus)
    with open(args.file, "r", encoding="utf-8") as fh:
        score = read_score_json(fh.read())
    report = check_first_species(score, build_world(sd))
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for v in report.violations:
            print(f"position {v.position}: {v.kind}: {v.detail}")
        print("PASS" if report.passed else f"FAIL ({len(report.violations)} violations)")
    return 0 if report.passed else 1


def _cmd_compose(args) -> int:
    sd = resolve_world_selector(args.world, args.modulus)
    cantus = _parse_members(args.cantus)
    scale = _parse_scale(args.scale) if args.scale else None
    score = compose_random(build_world(sd), cantus, seed=args.seed, scale=scale)
    wrote = False
    if args.midi:
        write_midi(score, args.midi)
        wrote = True
    if args.json_out:
        write_score_json(score, args.json_out, indent=2)
        wrote = True
    if not wrote:
        print(write_score_json(score, indent=2))
    return 0


def _cmd_morph(args) -> int:
    src_sd = resolve_world_selector(args.from_world, args.modulus)
    tgt_sd = resolve_world_selector(args.to_world, args.modulus)
    with open(args.file, "r", encoding="utf-8") as fh:
        score = read_score_json(fh.read())
    fragment = list(to_intervals(score).intervals)
    source = strict_digraph(build_world(src_sd, fragment))
    target = strict_digraph(build_world(tgt_sd))
    found = strict_morphisms(source, target, limit=1)
    if not found:
        raise SearchExhaustedError(
            f"no strict morphism from the composition's closure into world "
            f"{world_id(tgt_sd)}"
        )
    wm = induce_world_morphism(found[0])
    out = morph_composition(score, wm)
    wrote = False
    if args.midi:
        write_midi(out, args.midi)
        wrote = True
    if args.json_out:
        write_score_json(out, args.json_out, indent=2)
        wrote = True
    if not wrote:
        print(write_score_json(out, indent=2))
    return 0


def _cmd_embed(args) -> int:
    seq = embedding_sequence(args.levels, force=args.force)
    doc = {
        "levels": [
            {
                "level": lv.index,
                "modulus": lv.sd.modulus,
                "x": sorted(lv.sd.x_part),
                "polarity": {
                    "t": lv.sd.polarity.translation,
                    "u": lv.sd.polarity.multiplier,
                },
                "extensions": len(lv.candidates),
                "doublingOk": None if lv.verdict is None else lv.verdict.ok,
            }
            for lv in seq.levels
        ]
    }
    lines = []
    for lv in seq.levels:
        link = "" if lv.verdict is None else f"  doubling morphism ok: {lv.verdict.ok}"
        lines.append(
            f"level {lv.index}: Z_{lv.sd.modulus} X={sorted(lv.sd.x_part)} "
            f"polarity {lv.sd.polarity} ({len(lv.candidates)} candidates){link}"
        )
    _emit(doc, args.json, lines)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    port = args.port or int(os.environ.get("CONTRAPUNCTUS_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contrapunctus",
        description="strong dichotomies, admitted successors, and first-species counterpoint",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def world_opt(p):
        p.add_argument("--world", required=True, help="world selector: label or SET@MOD")
        p.add_argument("--modulus", type=int, help="modulus for a bare residue-set selector")

    p = sub.add_parser("classify", help="orbit classification of strong dichotomies")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--force", action="store_true", help="lift the size guard")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("world", help="inspect one world")
    p.add_argument("action", choices=["info"])
    p.add_argument("--id", help="catalogue label 64/68/71/75/78/82 or SET@MOD")
    p.add_argument("--custom", help="residue set, e.g. 0,2,3")
    p.add_argument("--modulus", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_world)

    p = sub.add_parser("successors", help="admitted successors of an interval")
    world_opt(p)
    p.add_argument("--interval", required=True, help="interval literal x+eK")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_successors)

    p = sub.add_parser("parallels", help="forbidden parallel interval numbers")
    world_opt(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_parallels)

    p = sub.add_parser("check", help="check a first-species score file")
    p.add_argument("file")
    world_opt(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("compose", help="seeded first-species composition")
    world_opt(p)
    p.add_argument("--cantus", required=True, help="comma-separated MIDI pitches")
    p.add_argument("--scale", help="root,steps... or root,presetname")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--midi", help="write a MIDI file here")
    p.add_argument("--json", dest="json_out", metavar="OUT", help="write score JSON here")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("morph", help="move a composition into another world")
    p.add_argument("file")
    p.add_argument("--from", dest="from_world", required=True)
    p.add_argument("--to", dest="to_world", required=True)
    p.add_argument("--modulus", type=int)
    p.add_argument("--midi", help="write a MIDI file here")
    p.add_argument("--json", dest="json_out", metavar="OUT", help="write score JSON here")
    p.set_defaults(func=_cmd_morph)

    p = sub.add_parser("embed", help="doubling chain of strong dichotomies")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int, help="default: $CONTRAPUNCTUS_PORT or 8000")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error[{exc.reason}]: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error[File]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
