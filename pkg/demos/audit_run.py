"""Random isometric amalgams checked against the invariants and the bounds.

Invariant violations would be bugs. Instances where the measured lower bound
exceeds the dimension, or where the covers witness fails to resolve H, are
counted and written out as bundles that the CLI can read back.
"""

import sys
import tempfile

from amalgadim.audit import fuzz
from amalgadim.formats import format_records

count = int(sys.argv[1]) if len(sys.argv) > 1 else 200
with tempfile.TemporaryDirectory() as tmp:
    summary = fuzz(count, 14, seed=7, bundle_dir=tmp)
    sys.stdout.write(format_records(summary.records()))
    if summary.bundles:
        first = summary.bundles[0]
        print(f"\nfirst bundle ({first.rsplit('/', 1)[-1]}):")
        with open(f"{first}/report.tsv") as fh:
            for line in fh:
                key, value = line.rstrip("\n").split("\t")
                if key in ("n_H", "lower", "upper_covers", "upper_covers.certified", "exact"):
                    print(f"  {key} = {value}")
