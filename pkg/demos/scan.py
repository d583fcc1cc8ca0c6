"""Scan a family over lengths and watch the exponents settle.

Equivalent CLI: sumprod scan --set 'gp:1:2:{n}' --values 4..64..x2
"""

import csv
import io
import sys

from sumprod.cli import SCAN_COLUMNS, scan_row

rows = [scan_row(f"convex:cubes:{n}", 50) for n in (4, 8, 16, 32, 64)]
w = csv.writer(sys.stdout)
keep = ["n", "sumset", "prodset", "energy", "expRatioDiff"]
idx = [SCAN_COLUMNS.index(c) for c in keep]
w.writerow(keep)
for row in rows:
    w.writerow([row[i][:8] for i in idx])
