from __future__ import annotations

import random
from fractions import Fraction

from graevkit.space import make_space


def random_space(rng: random.Random, max_points: int = 10):
    """Line points plus a positive bump per point: d = |x-y| + h(x) + h(y).

    The bump keeps the triangle inequality and makes the space non-collinear.
    K is a random subset, sometimes empty and sometimes several points.
    """
    n = rng.randint(2, max_points)
    names = [f"x{i}" for i in range(n)]
    coords = {p: Fraction(rng.randint(0, 400), rng.choice([100, 200, 300, 400])) for p in names}
    bump = {p: Fraction(rng.randint(0, 5), rng.choice([100, 1000])) for p in names}
    dists = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            dists[(a, b)] = abs(coords[a] - coords[b]) + bump[a] + bump[b]
    if any(v == 0 for v in dists.values()):
        return random_space(rng, max_points)
    size = rng.choice([0, 1, 1, 2, 3])
    K = rng.sample(names, min(size, n))
    return make_space(names, dists, K, name="random")
