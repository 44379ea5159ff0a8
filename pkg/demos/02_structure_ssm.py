"""Self-similarity matrices: the structural fingerprint of a lyric.

Each cell compares two lines (or two segments) by normalized character
edit distance. Repeated choruses appear as bright off-diagonal blocks.
"""

import random
from pathlib import Path

from lyriclayers import line_ssm, normalized_edit_distance, segment_ssm, write_ssm
from lyriclayers.synthetic import make_structured_song

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

print("normalized edit distances:")
for a, b in [("kitten", "sitting"), ("hold on", "hold on"), ("abc", "xyz")]:
    print(f"  {a!r} vs {b!r}: {normalized_edit_distance(a, b):.4f}")

song = make_structured_song(random.Random(3), "ssm-demo", high_repetition=True)
print(f"\nsong {song.id}: {len(song.segments)} segments, {song.line_count} lines")

m = line_ssm(song)
print(f"\nline SSM ({m.n}x{m.n}), shaded by similarity:")
shades = " .:-=+*#%@"
for row in m.values:
    print("  " + "".join(shades[min(int(v * 10), 9)] for v in row))

seg = segment_ssm(song)
print(f"\nsegment SSM ({seg.n}x{seg.n}):")
for row in seg.values:
    print("  " + " ".join(f"{v:.2f}" for v in row))

write_ssm(m, out / f"{song.id}.line.ssm")
write_ssm(seg, out / f"{song.id}.segment.ssm")
print(f"\nwrote both matrices to {out} (text format: header + 4-decimal rows)")
