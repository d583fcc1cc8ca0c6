"""Deterministic corpus of test sets built from family specs."""

from sumprod import generate


def structured(max_len=64):
    specs = []
    for n in (2, 3, 4, 5, 8, 12, 16, 24, 32, 48, 64):
        if n <= max_len:
            specs += [f"ap:1:1:{n}", f"ap:-7/2:3:{n}", f"gp:1:2:{n}", f"gp:3:-3/2:{n}",
                      f"convex:squares:{n}", f"convex:cubes:{n}"]
    return specs


def random_specs(count, lo_len=2, hi_len=64, seed=0):
    """Random integer and Gaussian sets with lengths cycling through [lo_len, hi_len]."""
    specs = []
    span = hi_len - lo_len + 1
    for i in range(count):
        n = lo_len + (i * 37) % span
        if i % 3 == 2:
            specs.append(f"randgauss:-{n}:{n}:{n}:seed={seed + i}")
        else:
            specs.append(f"randint:1:{20 * n}:{n}:seed={seed + i}")
    return specs


def corpus(count=200, max_len=64):
    """``count`` sets; those containing 0 are skipped so every check applies."""
    specs = structured(max_len) + random_specs(2 * count, 2, max_len)
    out = []
    for s in specs:
        A = generate(s)
        if not A.has_zero():
            out.append((s, A))
        if len(out) == count:
            break
    return out
