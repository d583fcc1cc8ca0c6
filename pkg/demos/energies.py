"""Structure versus growth: arithmetic and geometric progressions.

An arithmetic progression has a tiny sumset and a large product set; a
geometric progression is the reverse.  Energies count the coincidences
behind those sizes.
"""

from sumprod import additive_energy, cubic_energy, generate, multiplicative_energy
from sumprod.sets import set_size

for spec in ("ap:1:1:20", "gp:1:2:20", "convex:squares:20", "randint:1:10000:20:seed=1"):
    A = generate(spec)
    print(f"{spec:28s} |A+A|={set_size(A, A, 'sum'):4d} |A.A|={set_size(A, A, 'prod'):4d} "
          f"E+={additive_energy(A, A):6d} E*={multiplicative_energy(A):6d} "
          f"E3={cubic_energy(A):8d}")

print("\nA set of size n has E+ between n^2 (Sidon-like) and ~2n^3/3 (progression).")
