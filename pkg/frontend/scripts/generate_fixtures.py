"""Regenerate the engine-produced test fixtures.

Run from the repository root with the engine package installed:

    python frontend/scripts/generate_fixtures.py

The UI tests treat these files as the engine's ground truth: the pattern
document the grid must produce, the analysis report the engine returns for
it, and a straight-feel timeline with its clock grid for playhead checks.
"""

import json
from pathlib import Path

from polyfeel import FeelProfile, Pattern, RenderOptions, analyze_pattern, render
from polyfeel.service import analyze_document

FIXTURES = Path(__file__).parent.parent / "tests" / "fixtures"

SON_CLAVE_DOC = {
    "pulsesPerBar": 16,
    "tempoBpm": 120.0,
    "bars": 1,
    "instruments": [
        {
            "name": "clave",
            "role": "normal",
            "timbres": ["stick"],
            "matrix": [[1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0]],
        }
    ],
}


def dump(name: str, payload) -> None:
    path = FIXTURES / name
    path.write_text(json.dumps(payload, indent=2) + "\n")
    print("wrote", path)


def main() -> None:
    dump("sonClavePattern.json", SON_CLAVE_DOC)
    dump("sonClaveAnalysis.json", analyze_document(SON_CLAVE_DOC))

    pattern = Pattern.from_dict(SON_CLAVE_DOC)
    analyses = analyze_pattern(pattern)
    timeline = render(
        pattern,
        [list(a.interpretations) for a in analyses],
        [a.phrases for a in analyses],
        FeelProfile(),
        RenderOptions(seed=0, switch_probability=0.0, walk_step=0.0),
    )
    doc = timeline.to_dict()
    doc["clock"] = [
        {"bar": bar, "pulse": pulse, "tMs": t_ms} for bar, pulse, t_ms in timeline.clock
    ]
    dump("sonClaveTimeline.json", doc)


if __name__ == "__main__":
    main()
