"""Glue P_3 and P_4 at their ends and look at what comes out.

The two paths share only their end vertices, so H is a 5-cycle. The ends are
two apart in P_3 and three apart in P_4, which makes the family non-isometric.
"""

from amalgadim import amalgamate_maps, is_isometric_family, local_metric_dimension
from amalgadim.families import empty, path

j = empty(2, "x")
a = amalgamate_maps(j, [
    (path(3, "u"), {"x1": "u1", "x2": "u3"}),
    (path(4, "v"), {"x1": "v1", "x2": "v4"}),
])

print("vertices of H:", ", ".join(a.h.vertices))
print("edges of H:   ", ", ".join(f"{u}-{v}" for u, v in a.h.edges))
ok, witness = is_isometric_family(a)
print("isometric:", ok, "" if ok else f"(x1,x2 at distance {witness[4]} in part {witness[0]}, {witness[5]} in part {witness[1]})")

for name, g in [("P_3", a.graph("1")), ("P_4", a.graph("2")), ("H", a.h)]:
    b = local_metric_dimension(g)
    print(f"dim_l({name}) = {b.size}, basis {set(b.witness)}")
