"""Walk through the origin-line construction for one set, stage by stage."""

from sumprod import generate, proof_chain

A = generate("convex:squares:24")
ch = proof_chain(A, "ratio", "diff")
print("set sizes:", ch.inputs)
print("decomposition:", ch.decomposition)
stage = None
for name, r in ch.steps:
    if name != stage:
        stage = name
        print(f"\n[{stage}]")
    print(f"  {r.verdict:11s} {r.check_id:45s} {float(r.ratio):.4g}")
print(f"\nobserved exponent log(|A-A| + |A:A|)/log|A| = {float(ch.theorem_exponent):.4f}")
