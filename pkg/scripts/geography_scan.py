"""Scan small count polynomials and tabulate which block mixes realize them.

Enumerates all duality-compatible targets q + p + reflect(p) with small
coefficient budgets per dimension, runs the planner on each, and counts
how often each block kind appears.  Also prints the minimal fillable
polynomial for every odd classical invariant in range.
"""

import itertools
from collections import Counter

from legcob.geography import classical_fillable, realize
from legcob.laurent import LaurentPoly, tb_from_polynomial

MAX_DIM = 6
Q_BUDGET = 2  # extra self-dual terms per target
P_BUDGET = 2  # sphere-pair terms per target


def targets(n):
    """All q + p + reflect(p) with q_n = 1, q_0 = 0 and small support."""
    free = list(range(1, n))
    pairs = list(range(n // 2, n + 2))
    for qdeg in itertools.chain([()], itertools.combinations(free, 1),
                                itertools.combinations(free, Q_BUDGET)):
        q = LaurentPoly({n: 1}) + LaurentPoly({d: 1 for d in qdeg})
        for pdeg in itertools.chain([()], itertools.combinations(pairs, 1),
                                    itertools.combinations(pairs, P_BUDGET)):
            p = LaurentPoly({d: 1 for d in pdeg})
            yield q + p + p.reflect(n - 1)


def main():
    print("block usage over small targets")
    print(f"{'n':>3} {'targets':>8} {'Saucer':>7} {'Manifold':>9} "
          f"{'Sphere':>7} {'max blocks':>11}")
    for n in range(2, MAX_DIM + 1):
        kinds = Counter()
        biggest = 0
        seen = set()
        for target in targets(n):
            key = tuple(sorted(target.coeffs.items()))
            if key in seen:
                continue
            seen.add(key)
            plan = realize(target, n)
            assert plan.verified()
            kinds.update(b.kind for b in plan.blocks)
            biggest = max(biggest, len(plan.blocks))
        print(f"{n:>3} {len(seen):>8} {kinds['Saucer']:>7} "
              f"{kinds['Manifold']:>9} {kinds['Sphere']:>7} {biggest:>11}")

    print()
    print("minimal fillable polynomials, tb on the left")
    for n in (3, 5, 7):
        print(f"n = {n}")
        for tau in range(-9, 10, 2):
            poly, plan = classical_fillable(n, tau)
            assert tb_from_polynomial(poly, n) == tau
            print(f"  {tau:>4}  {poly}  "
                  f"[{', '.join(str(b) for b in plan.blocks)}]")


if __name__ == "__main__":
    main()
