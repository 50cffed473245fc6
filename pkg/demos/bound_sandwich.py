"""Lower and upper bounds next to the exact value on a few amalgams.

Upper bounds come with a vertex set that was checked to resolve H; a bound
whose set fails that check is printed with a '!' mark.
"""

from amalgadim import bound_report
from amalgadim.constructions import (
    build_cota_sup_tight,
    build_fan_chain,
    build_k5_variant_pair,
    build_wheel_prism,
)

instances = [
    build_wheel_prism(5),
    build_wheel_prism(8),
    build_fan_chain(9, 3, "sum"),
    build_k5_variant_pair("covers"),
    build_cota_sup_tight(),
]

keys = ("upper_crude", "upper_iso", "upper_cotraversal", "upper_covers")
print(f"{'instance':28s} {'lower':>5s} {'exact':>5s}  " + "  ".join(f"{k[6:]:>12s}" for k in keys))
for inst in instances:
    r = bound_report(inst.amalgam, compute_exact=True)
    cells = []
    for k in keys:
        v = getattr(r, k)
        mark = "" if r.certified.get(k, True) else "!"
        cells.append(f"{'na' if v is None else str(v) + mark:>12s}")
    print(f"{inst.label:28s} {r.lower:5d} {r.exact:5d}  " + "  ".join(cells))
