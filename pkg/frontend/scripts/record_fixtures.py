"""Record real engine exchanges into tests/fixtures/engine.json.

The browser tests replay these against a fake fetch, so every verdict the
UI displays in them is literally an engine response.  Re-run after engine
changes:  python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import base64
import json
from pathlib import Path

from fastapi.testclient import TestClient

from contrapunctus.api import create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "engine.json"


def ui_score_doc(modulus, cantus, discantus, world_label):
    """Exactly the document ComposerState.toScoreDoc builds."""

    def note(i, p):
        return {"onset": str(i), "duration": "1", "pitch": p, "loudness": 64}

    return {
        "schemaVersion": 1,
        "modulus": modulus,
        "voices": {
            "cantus": [note(i, p) for i, p in enumerate(cantus)],
            "discantus": [note(i, p) for i, p in enumerate(discantus)],
        },
        "meta": {"world": world_label},
    }


def main():
    client = TestClient(create_app())
    exchanges = []

    def record(name, method, path, body=None, binary=False):
        if method == "GET":
            response = client.get(path)
        else:
            response = client.post(path, json=body)
        entry = {
            "name": name,
            "method": method,
            "path": path,
            "status": response.status_code,
        }
        if body is not None:
            entry["request"] = body
        if binary:
            entry["base64"] = base64.b64encode(response.content).decode("ascii")
        else:
            entry["json"] = response.json()
        exchanges.append(entry)
        return response

    # scenario: parallel fifths in the Fux world
    fifths = ui_score_doc(12, [60, 62], [67, 69], "82")
    record("check-parallel-fifths-82", "POST", "/check",
           {"world": "82", "score": fifths})

    # scenario: a fourth in the Fux world is dissonant
    fourth = ui_score_doc(12, [60, 62], [65, 69], "82")
    record("check-fourth-82", "POST", "/check", {"world": "82", "score": fourth})

    # scenario: same notes after switching to the mystic world
    fifths78 = ui_score_doc(12, [60, 62], [67, 69], "78")
    record("check-parallel-fifths-78", "POST", "/check",
           {"world": "78", "score": fifths78})

    # successor highlighting anchor
    record("successors-82-0e7", "POST", "/successors",
           {"world": "82", "interval": "0+e7"})

    # custom world validation
    record("validate-chromatic", "POST", "/worlds/validate",
           {"modulus": 12, "X": [0, 1, 2, 3, 4, 5]})
    record("validate-kd-member", "POST", "/worlds/validate",
           {"modulus": 12, "X": [0, 1, 4, 5, 6, 9]})

    # export: register a user-built score, then fetch engine-serialized bytes
    piece = ui_score_doc(12, [60, 62], [67, 64], "82")
    response = record("register-export-score", "POST", "/score", {"score": piece})
    score_id = response.json()["id"]
    record("export-json", "GET", f"/score/{score_id}/json", binary=True)
    record("export-midi", "GET", f"/score/{score_id}/midi", binary=True)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"exchanges": exchanges}, indent=2) + "\n")
    print(f"wrote {OUT} with {len(exchanges)} exchanges")


if __name__ == "__main__":
    main()
