"""The two volume constants and the polyhedra that realize them.

v8 is the volume of the regular ideal octahedron, the smallest ideal
right-angled polyhedron; v3 is the volume of the regular ideal tetrahedron.
The right-angled dodecahedron splits into 120 congruent orthoschemes.

    python demos/constants.py
"""

import math

from rightangled.catalog import compact_dodecahedron, ideal_octahedron
from rightangled.lobachevsky import lobachevsky, orthoscheme_volume, v3, v8
from rightangled.realization import realize
from rightangled.volume import volume

print(f"v8 = 8 Λ(π/4) = {v8():.15f}")
print(f"v3 = 3 Λ(π/3) = {v3():.15f}")
print(f"Λ(π/6) = {lobachevsky(math.pi / 6):.15f}  (= 3/2 Λ(π/3))")

octa = realize(ideal_octahedron())
print(f"realized octahedron: volume {volume(octa):.15f}, residual {octa.residual:.1e}")

dode = realize(compact_dodecahedron())
piece = orthoscheme_volume(math.pi / 5, math.pi / 3, math.pi / 4)
print(f"dodecahedron: volume {volume(dode):.12f}, 120 orthoschemes {120 * piece:.12f}")
