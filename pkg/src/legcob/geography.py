"""Realization planner for count polynomials of fillable submanifolds.

Given a target Laurent polynomial P and a dimension n, find a connect
sum of standard building blocks whose count polynomial equals P exactly.
The available blocks and their polynomials:

    Saucer        t^n                          (spun one-chord disk)
    Manifold(a)   t^n + t^a,   1 <= a <= n-1   (spinning + surgery)
    HopfLink(a)   2t^n + t^a + t^(n-1-a)       (2-copy of a stabilized
                                                unknot; a not in {0, n-1})
    Sphere(a)     t^n + t^a + t^(n-1-a)        (Hopf link + 0-surgery)

A plan never claims more than it checks: the constructor replays the
connect sum of its block polynomials and stores the comparison, so a
plan object is a certificate.  Block provenance strings record the
construction recipe (spinning steps, stabilizations, surgeries) without
executing it; fronts are only built in dimension 1.
"""

from .errors import DomainError
from .exactseq import connect_sum
from .laurent import LaurentPoly, decompose, tb_from_polynomial


class Block:
    """One connect-sum summand with its count polynomial and recipe."""

    def __init__(self, kind, n, a=None):
        if n < 2:
            raise DomainError(f"block dimension must be >= 2, got {n}")
        self.kind = kind
        self.n = n
        self.a = a
        top = LaurentPoly({n: 1})
        if kind == "Saucer":
            if a is not None:
                raise DomainError("saucer block takes no degree parameter")
            self.gamma = top
            self.provenance = (
                "spin the one-chord disk family about its axis; the single "
                f"chord lands in degree {n}")
        elif kind == "Manifold":
            if a is None or not 1 <= a <= n - 1:
                raise DomainError(
                    f"manifold block degree must be in 1..{n - 1}, got {a}")
            self.gamma = top + LaurentPoly({a: 1})
            self.provenance = (
                f"spin a two-chord family so the second chord lands in "
                f"degree {a}; attach one index-{n - a - 1} surgery handle "
                "to connect the result")
        elif kind == "HopfLink":
            if a is None or a in (0, n - 1):
                raise DomainError(
                    f"hopf block degree must avoid 0 and {n - 1}, got {a}")
            self.gamma = top + top + LaurentPoly({a: 1}) \
                + LaurentPoly({n - 1 - a: 1})
            self.provenance = (
                f"two parallel copies of a {abs(a) + 1}-fold stabilized "
                f"unknot, linked once; chords in degrees {a} and {n - 1 - a} "
                f"plus two top chords")
        elif kind == "Sphere":
            if a is None:
                raise DomainError("sphere block needs a degree parameter")
            self.gamma = top + LaurentPoly({a: 1}) + LaurentPoly({n - 1 - a: 1})
            self.provenance = (
                f"hopf-link pair with chords in degrees {a} and {n - 1 - a}; "
                "one 0-surgery between the copies removes a top chord and "
                "joins them into a sphere")
        else:
            raise DomainError(f"unknown block kind {kind!r}")

    def __repr__(self):
        if self.a is None:
            return f"Block({self.kind}, n={self.n})"
        return f"Block({self.kind}({self.a}), n={self.n})"

    def to_dict(self):
        return {"kind": self.kind, "a": self.a, "gamma": str(self.gamma),
                "provenance": self.provenance}


class RealizationPlan:
    """A verified multiset of blocks realizing a target polynomial."""

    def __init__(self, n, blocks, target):
        if not blocks:
            raise DomainError("empty plan")
        self.n = n
        self.blocks = list(blocks)
        self.target = target
        self.recomposed = connect_sum([b.gamma for b in self.blocks], n)
        q = LaurentPoly({n: 1})
        for b in self.blocks:
            if b.kind == "Manifold":
                q = q + LaurentPoly({b.a: 1})
        self.betti_realized = [q.coeff(k) + q.coeff(n - k)
                               for k in range(n + 1)]

    def verified(self):
        return self.recomposed == self.target

    def __repr__(self):
        return (f"RealizationPlan(n={self.n}, target={self.target}, "
                f"blocks={self.blocks})")

    def to_dict(self):
        return {
            "n": self.n,
            "target": str(self.target),
            "blocks": [b.to_dict() for b in self.blocks],
            "betti_realized": self.betti_realized,
            "verification": {"recomposed": str(self.recomposed),
                             "equal": self.verified()},
        }


def _incompat_reason(poly, n):
    c = poly.coeff
    for d in sorted(poly.coeffs):
        if c(d) < 0:
            return f"negative coefficient {c(d)} at degree {d}"
    for d in sorted(poly.coeffs):
        if (d > n or d < -1) and c(d) != c(n - 1 - d):
            return (f"mirror law fails: coefficient {c(d)} at degree {d} "
                    f"but {c(n - 1 - d)} at degree {n - 1 - d}")
    if c(n) - c(-1) < 1:
        return (f"needs a spare top class: coefficient {c(n)} at degree {n} "
                f"against {c(-1)} at degree -1")
    return ("no splitting with a single top class and trivial class "
            "in degree 0")


def realize(poly, n, sphere_only=False):
    """Plan a connect sum of blocks whose count polynomial is poly.

    Splits poly = q + p + reflect(p) with q the self-dual part (one
    manifold block per q-term below the top) and p the sphere part.
    Policy: among valid splittings, keep as much as possible in q
    (fewest sphere blocks), tie-broken by ascending sphere degrees.
    sphere_only restricts to splittings with q = t^n.

    >>> realize(LaurentPoly.parse("t^3 + t^2"), 3).blocks
    [Block(Manifold(2), n=3)]
    """
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    candidates = [(q, p) for q, p in decompose(poly, n)
                  if q.coeff(n) == 1 and q.coeff(0) == 0]
    if not candidates:
        raise DomainError(
            f"not compatible with duality in connected form: "
            f"{_incompat_reason(poly, n)}")
    if sphere_only:
        top = LaurentPoly({n: 1})
        candidates = [(q, p) for q, p in candidates if q == top]
        if not candidates:
            raise DomainError(
                f"sphere-only plan impossible for {poly}: every splitting "
                "leaves terms that need manifold blocks")
    q, p = min(candidates,
               key=lambda qp: (qp[1].total_count(),
                               sorted(qp[1].coeffs.items())))
    blocks = []
    for a in range(1, n):
        blocks.extend(Block("Manifold", n, a) for _ in range(q.coeff(a)))
    for a in sorted(p.coeffs):
        blocks.extend(Block("Sphere", n, a) for _ in range(p.coeffs[a]))
    if not blocks:
        blocks = [Block("Saucer", n)]
    plan = RealizationPlan(n, blocks, poly)
    assert plan.verified(), f"plan replay mismatch: {plan.recomposed} != {poly}"
    return plan


def classical_fillable(n, tau):
    """The minimal-support count polynomial of a fillable sphere with the
    requested classical invariant, plus its realization plan.

    >>> P, _ = classical_fillable(5, 3)
    >>> str(P)
    't^5 + 2t^4 + 2'
    """
    if n % 2 == 0:
        raise DomainError(f"n must be odd, got {n}")
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if tau % 2 == 0:
        raise DomainError(f"tau must be odd, got {tau}")
    sign = -1 if ((n - 2) * (n - 1) // 2) % 2 else 1
    st = sign * tau
    if st > 0:
        k = (st - 1) // 2
        poly = LaurentPoly({n: 1, n - 1: k + 1, 0: k + 1})
    else:
        k = -(st + 1) // 2
        poly = LaurentPoly({n: k + 1, -1: k})
    assert tb_from_polynomial(poly, n) == tau
    plan = realize(poly, n)
    sphere_betti = [1 if k in (0, n) else 0 for k in range(n + 1)]
    assert plan.betti_realized == sphere_betti
    return poly, plan
