"""Points on lines: counting incidences and rich points on a grid."""

from sumprod import Line, PlanarPointSet, Point2, check_st_reports, count_incidences, rich_points

n = 6
grid = PlanarPointSet(Point2(x, y) for x in range(n) for y in range(n))
lines = [Line(0, 1, c) for c in range(n)] + [Line(1, 0, c) for c in range(n)]
lines += [Line(1, -1, c) for c in range(-n + 1, n)]
# anti-diagonals through the lower-left half only
lines += [Line(1, 1, c) for c in range(n)]
print(f"{len(grid)} grid points, {len(lines)} lines")
print("incidences:", count_incidences(grid, lines))
for t in (3, 4):
    print(f"points on at least {t} lines:", len(rich_points(grid, lines, t)))

print("\nHow close is the grid to the incidence bound?")
for r in check_st_reports(grid, lines):
    if r.check_id == "incidence-bound":
        print(f"  I = {r.lhs}, (|P||L|)^(2/3) + |P| + |L| = {float(r.rhs):.1f}, ratio {float(r.ratio):.3f}")
