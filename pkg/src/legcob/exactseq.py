"""Rank feasibility for long exact sequences of finite dimensional spaces.

Only dimensions are modeled, never maps.  Exactness of

    0 -> V_1 -> V_2 -> ... -> V_L -> 0

over a field is equivalent to the existence of map ranks r_0..r_L with
r_0 = r_L = 0, every r_i >= 0 and dim V_i = r_(i-1) + r_i.  Feasibility
of fully known dims is a deterministic left-to-right scan; unknown dims
are searched within an explicit bound.  Graded dimension counts are
carried around as LaurentPoly (degree -> dimension).
"""

from .errors import DomainError
from .laurent import LaurentPoly, is_connected_form


def les_ranks(dims):
    """Interior map ranks of a fully known exact sequence, or None.

    >>> les_ranks([0, 0, 1, 2, 1])
    [0, 0, 1, 1]
    >>> les_ranks([1, 0, 1]) is None
    True
    """
    r = 0
    ranks = []
    for d in dims:
        r = d - r
        if r < 0:
            return None
        ranks.append(r)
    if r != 0:
        return None
    return ranks[:-1]


def les_solve(slots, min_ranks=None):
    """All assignments of the unknown slots making the sequence exact.

    INPUT: slots, a list whose entries are nonnegative ints (known dims)
    or None (unknown); optional min_ranks mapping a 0-based slot index i
    to a minimum rank for the map out of slot i.
    OUTPUT: sorted list of tuples, one value per None slot in order.  A
    fully known feasible sequence yields [()] and an infeasible one [].
    Unknown dims are searched up to max(max known + length, sum known + 1).
    """
    if not slots:
        raise DomainError("empty sequence")
    known = [d for d in slots if d is not None]
    if any(d < 0 for d in known):
        raise DomainError(f"negative dimension in {slots}")
    bound = max((max(known) if known else 0) + len(slots),
                sum(known) + 1)
    min_ranks = min_ranks or {}
    out = []

    def scan(i, r_prev, chosen):
        if i == len(slots):
            if r_prev == 0:
                out.append(tuple(chosen))
            return
        need = min_ranks.get(i, 0)
        d = slots[i]
        if d is not None:
            r = d - r_prev
            if r < 0 or r < need:
                return
            scan(i + 1, r, chosen)
        else:
            for r in range(need, bound - r_prev + 1):
                chosen.append(r_prev + r)
                scan(i + 1, r, chosen)
                chosen.pop()

    scan(0, 0, [])
    out.sort()
    return out


def zero_surgery_update(gamma_minus, n):
    """Count polynomial after a 0-surgery: subtract t^n, then recheck duality.

    >>> from .laurent import parse_poly
    >>> str(zero_surgery_update(parse_poly("2t^3 + t^2 + 1"), 3))
    't^3 + t^2 + 1'
    """
    have = gamma_minus.coeff(n)
    if have < 2:
        raise DomainError(
            f"precondition violated: coefficient of t^{n} is {have}, need >= 2")
    out = gamma_minus.subtract_monomial(n)
    if not is_connected_form(out, n):
        raise DomainError(
            f"duality violated: {out} admits no connected form at dimension {n}")
    return out


def connect_sum(gammas, n):
    """Fold count polynomials of summands: total minus (count-1) * t^n."""
    if not gammas:
        raise DomainError("empty connect sum")
    total = gammas[0]
    for g in gammas[1:]:
        total = (total + g).subtract_monomial(n)
    return total


def filling_polynomial(genus, components):
    """Graded dims of the relative cohomology of a surface filling.

    A connected genus-g surface with c boundary circles contributes
    (2g + c - 1) in degree 0 and 1 in degree 1.

    >>> str(filling_polynomial(1, 1))
    't + 2'
    >>> str(filling_polynomial(0, 2))
    't + 1'
    """
    if genus < 0 or components < 1:
        raise DomainError(
            f"bad surface data: genus {genus}, components {components}")
    return LaurentPoly({0: 2 * genus + components - 1, 1: 1})


def cobordism_les_constrain(first, third, min_connecting=None):
    """Feasible graded dims for the middle family of a three-periodic LES.

    The sequence is ... -> X_k -> Y_k -> Z_k -> X_(k+1) -> ... with
    X_k = first.coeff(k), Z_k = third.coeff(k+1) and Y unknown, exact and
    vanishing beyond both ends.  min_connecting maps a block degree k to
    a required minimum rank of the connecting map Z_k -> X_(k+1).

    Other interleavings reduce to this one by pre-shifting the inputs:
    for blocks [X^(k-1), Y, Z^k] pass first.shift(1) and third.shift(1),
    and put the fundamental-class constraint on min_connecting[n].

    OUTPUT: sorted list of LaurentPoly, one per feasible middle family.
    """
    degs = set(first.coeffs) | {d - 1 for d in third.coeffs}
    if min_connecting:
        degs |= set(min_connecting)
    if not degs:
        return [LaurentPoly({})]
    kmin, kmax = min(degs) - 1, max(degs) + 1
    slots = []
    unknown_degs = []
    min_ranks = {}
    for k in range(kmin, kmax + 1):
        slots.append(first.coeff(k))
        slots.append(None)
        unknown_degs.append(k)
        slots.append(third.coeff(k + 1))
        if min_connecting and k in min_connecting:
            min_ranks[len(slots) - 1] = min_connecting[k]
    results = []
    for assign in les_solve(slots, min_ranks=min_ranks):
        poly = LaurentPoly(dict(zip(unknown_degs, assign)))
        if poly not in results:
            results.append(poly)
    results.sort(key=lambda q: sorted(q.coeffs.items()))
    return results
