"""Run the exact inequality suite and inspect the effective constants."""

from sumprod import check_exact_inequalities, generate

A = generate("randint:1:1000:40:seed=3")
reports = check_exact_inequalities(A)
print(f"{len(reports)} checks on a random 40-element set\n")
for r in reports:
    print(f"{r.verdict:11s} {r.check_id:42s} ratio {float(r.ratio):10.4f}")
print("\nA ratio near 1 means the inequality is nearly tight for this set.")
