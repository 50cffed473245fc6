"""Two parts of local metric dimension 2 whose amalgam needs n + 1 vertices.

The first part is itself n copies of an 18-vertex block glued on three
vertices; the second is a small fan. Every block carries an edge that only a
vertex of that same block can tell apart, so the dimension grows with n.
"""

import time

from amalgadim import local_metric_dimension
from amalgadim.constructions import build_watermelon

for n in (4, 5, 6):
    a = build_watermelon(n).amalgam
    t = time.perf_counter()
    parts = [local_metric_dimension(a.graph(p)).size for p in a.part_ids]
    b = local_metric_dimension(a.h)
    print(f"n={n}: |V(H)|={a.n_h:3d}  part dims {parts}  dim_l(H)={b.size}  ({time.perf_counter() - t:.2f}s)")
    print("      basis:", ", ".join(b.witness))
