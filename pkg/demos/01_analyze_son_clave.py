"""Walk through the metric and phrase analysis of the Son-Clave.

The clave's five strokes on a 16-pulse cycle are famously ambiguous: the
opening can be heard as a triple-time figure that modulates into duple time.
This script derives the stroke/interval vectors, ranks the candidate
duple/triple readings, and shows where the phrase boundaries fall.
"""

import numpy as np

from polyfeel import (
    InstrumentTrack,
    enumerate_interpretations,
    event_onset_vector,
    gap_boundaries,
    ioi_vector,
    segment_phrases,
)

SON_CLAVE = [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0]

track = InstrumentTrack("clave", ("stick",), np.array([SON_CLAVE]))
onsets = event_onset_vector(track)
ioi = ioi_vector(onsets)

print("stroke counts per pulse:", onsets.tolist())
print("pulses to next stroke:  ", ioi.tolist())
print()

ranked = enumerate_interpretations(track)
print("top five duple/triple readings (3 = triple, 2 = duple):")
for i, interp in enumerate(ranked[:5], start=1):
    tiling = " + ".join(
        "%s[%d..%d]" % (s.kind, s.start, (s.start + s.length - 1) % 16)
        for s in interp.segments
    )
    print(
        "  #%d  score %.4f  %s  via %s"
        % (i, interp.score, "".join(map(str, interp.signature)), tiling)
    )
print()

print("gap-rule boundary proposals (pulse, gap ratio):")
for pulse, score in gap_boundaries(ioi):
    print("  pulse %2d  score %.2f" % (pulse, score))

structure = segment_phrases(onsets, ioi, ranked[0])
print("phrases under the top reading:")
for start, end in structure.phrases:
    print("  pulses %d..%d" % (start, end))
