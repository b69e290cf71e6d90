"""Stateless HTTP facade over the engine.

All JSON bodies follow the same layouts the CLI emits with ``--json``.
Schema violations answer 400; domain errors (dissonant interval, non-strong
set, unsatisfiable generation, ...) answer 422 with a machine-readable
``reason``; composed scores get ephemeral in-memory ids for MIDI export.
"""

from __future__ import annotations

import itertools
import threading
from typing import Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .algebra import DualNumber
from .cli import resolve_world_selector
from .dichotomies import (
    BUILTIN_REPRESENTATIVES,
    Dichotomy,
    as_strong,
    strong_dichotomy,
)
from .errors import (
    DomainError,
    NoAutocomplementarityError,
    NotRigidError,
    SchemaError,
    SearchExhaustedError,
)
from .scores import (
    Scale,
    check_first_species,
    compose_random,
    morph_composition,
    score_from_dict,
    score_to_dict,
    to_intervals,
    write_score_json,
)
from .smf import encode_score
from .successors import admitted_successors, world_id
from .worlds import build_world, induce_world_morphism, strict_digraph, strict_morphisms

MAX_STORED_SCORES = 128


class WorldSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    modulus: int
    x: list[int] = Field(alias="X")


WorldSelector = Union[str, WorldSpec]


class ValidateRequest(WorldSpec):
    pass


class SuccessorsRequest(BaseModel):
    world: WorldSelector
    interval: str


class CheckRequest(BaseModel):
    world: WorldSelector
    score: dict


class ScaleSpec(BaseModel):
    root: int
    steps: Optional[list[int]] = None
    preset: Optional[str] = None


class ComposeRequest(BaseModel):
    world: WorldSelector
    cantus: list[int]
    seed: int = 0
    scale: Optional[ScaleSpec] = None


class MorphRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    score: dict
    from_world: WorldSelector = Field(alias="from")
    to_world: WorldSelector = Field(alias="to")


class RegisterScoreRequest(BaseModel):
    score: dict


def _resolve(selector: WorldSelector):
    if isinstance(selector, WorldSpec):
        return strong_dichotomy(selector.modulus, selector.x)
    return resolve_world_selector(str(selector))


def _scale(spec: Optional[ScaleSpec]) -> Optional[Scale]:
    if spec is None:
        return None
    if spec.preset:
        return Scale.preset(spec.preset, root=spec.root)
    if not spec.steps:
        raise SchemaError("scale needs either steps or a preset name")
    return Scale(root=spec.root, steps=tuple(spec.steps))


def create_app() -> FastAPI:
    app = FastAPI(
        title="contrapunctus",
        description="strong dichotomies, admitted successors, counterpoint worlds",
        version="0.1.0",
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    scores: dict[str, object] = {}
    scores_lock = threading.Lock()
    next_id = itertools.count(1)

    @app.exception_handler(RequestValidationError)
    async def _invalid(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "Schema", "detail": exc.errors()},
        )

    @app.exception_handler(DomainError)
    async def _domain(request: Request, exc: DomainError):
        status = 400 if isinstance(exc, SchemaError) else 422
        return JSONResponse(
            status_code=status, content={"error": exc.reason, "detail": str(exc)}
        )

    @app.get("/worlds")
    def worlds(set: Optional[str] = None, modulus: Optional[int] = None):
        if set is not None:
            sd = strong_dichotomy(modulus or 12, [int(t) for t in set.split(",")])
            return {"worlds": [_world_doc(sd)]}
        return {
            "worlds": [
                _world_doc(strong_dichotomy(12, rep))
                for rep in BUILTIN_REPRESENTATIVES.values()
            ]
        }

    @app.post("/worlds/validate")
    def validate(req: ValidateRequest):
        try:
            sd = as_strong(Dichotomy(req.modulus, frozenset(req.x)))
        except (NotRigidError, NoAutocomplementarityError) as exc:
            return {"strong": False, "reason": exc.reason}
        return {
            "strong": True,
            "polarity": {
                "t": sd.polarity.translation,
                "u": sd.polarity.multiplier,
            },
        }

    @app.post("/successors")
    def successors(req: SuccessorsRequest):
        sd = _resolve(req.world)
        xi = DualNumber.parse(req.interval, sd.modulus)
        succ = sorted(admitted_successors(sd, xi))
        return {
            "world": world_id(sd),
            "interval": str(xi),
            "count": len(succ),
            "successors": [str(s) for s in succ],
        }

    @app.post("/check")
    def check(req: CheckRequest):
        sd = _resolve(req.world)
        score = score_from_dict(req.score)
        report = check_first_species(score, build_world(sd))
        return report.to_dict()

    def _store(score) -> str:
        with scores_lock:
            score_id = f"s{next(next_id)}"
            scores[score_id] = score
            while len(scores) > MAX_STORED_SCORES:
                scores.pop(next(iter(scores)))
        return score_id

    @app.post("/compose")
    def compose(req: ComposeRequest):
        sd = _resolve(req.world)
        score = compose_random(
            build_world(sd), req.cantus, seed=req.seed, scale=_scale(req.scale)
        )
        return {"id": _store(score), "score": score_to_dict(score)}

    @app.post("/score")
    def register_score(req: RegisterScoreRequest):
        """Store a client-built score so its exports come from the engine."""
        score = score_from_dict(req.score)
        return {"id": _store(score)}

    @app.post("/morph")
    def morph(req: MorphRequest):
        src_sd = _resolve(req.from_world)
        tgt_sd = _resolve(req.to_world)
        score = score_from_dict(req.score)
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
        return {"score": score_to_dict(morph_composition(score, wm))}

    def _stored(score_id: str):
        with scores_lock:
            return scores.get(score_id)

    @app.get("/score/{score_id}/midi")
    def score_midi(score_id: str):
        score = _stored(score_id)
        if score is None:
            return JSONResponse(
                status_code=404,
                content={"error": "NotFound", "detail": f"no score {score_id!r}"},
            )
        return Response(content=encode_score(score), media_type="audio/midi")

    @app.get("/score/{score_id}/json")
    def score_json(score_id: str):
        """The stored score in the exact serialization the CLI writes."""
        score = _stored(score_id)
        if score is None:
            return JSONResponse(
                status_code=404,
                content={"error": "NotFound", "detail": f"no score {score_id!r}"},
            )
        return Response(
            content=write_score_json(score, indent=2), media_type="application/json"
        )

    return app


def _world_doc(sd) -> dict:
    return {
        "id": world_id(sd),
        "modulus": sd.modulus,
        "x": sorted(sd.x_part),
        "y": sorted(sd.y_part),
        "polarity": {"t": sd.polarity.translation, "u": sd.polarity.multiplier},
    }
