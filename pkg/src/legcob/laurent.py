"""Integer Laurent polynomials and duality-constrained decompositions.

The central solver here answers: given a candidate count polynomial P and
an ambient dimension n, in how many ways can P be written as

    P(t) = q(t) + p(t) + t^(n-1) * p(1/t)

with q, p having nonnegative integer coefficients, q supported in degrees
[0, n] with q_n >= 1, and p supported in degrees >= ceil((n-1)/2)?
Coefficients of P above degree n or below degree 0 force coefficients of
p outright; the only genuine freedom is a finite band in the middle, so
the enumeration is exact and fast.
"""

import itertools
import re

from .errors import DomainError


class LaurentPoly:
    """A Laurent polynomial in one variable with integer coefficients.

    Stored as a sparse degree -> coefficient dict; zero coefficients are
    never kept.

    >>> str(LaurentPoly({5: 1, 4: 2, 0: 2}))
    't^5 + 2t^4 + 2'
    """

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for d, c in coeffs.items():
                if c:
                    self.coeffs[int(d)] = int(c)

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls({degree: coeff})

    @classmethod
    def parse(cls, text):
        return parse_poly(text)

    def coeff(self, degree):
        return self.coeffs.get(degree, 0)

    def degrees(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def copy(self):
        return LaurentPoly(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) - c
        return LaurentPoly(out)

    def scale(self, k):
        return LaurentPoly({d: k * c for d, c in self.coeffs.items()})

    def reflect(self, pivot):
        """The polynomial t^pivot * self(1/t), i.e. degree d -> pivot - d."""
        return LaurentPoly({pivot - d: c for d, c in self.coeffs.items()})

    def shift(self, j):
        """Multiply by t^j, i.e. degree d -> d + j."""
        return LaurentPoly({d + j: c for d, c in self.coeffs.items()})

    def subtract_monomial(self, degree, count=1):
        """Remove count copies of t^degree, refusing to go negative."""
        have = self.coeff(degree)
        if have < count:
            raise DomainError(
                f"coefficient underflow at degree {degree}: have {have}, need {count}")
        out = dict(self.coeffs)
        out[degree] = have - count
        return LaurentPoly(out)

    def evaluate(self, x):
        """Evaluate at x.  Exact integer arithmetic for x = 1 or x = -1."""
        if x in (1, -1):
            return sum(c * (1 if d % 2 == 0 else x)
                       for d, c in self.coeffs.items())
        total = 0
        for d, c in self.coeffs.items():
            total += c * x ** d
        return total

    def total_count(self):
        """Sum of all coefficients, i.e. the value at t = 1."""
        return sum(self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            c = self.coeffs[d]
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "t" if d == 1 else (f"t^{d}" if d > 0 else f"t^({d})")
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((c > 0, body))
        out = parts[0][1] if parts[0][0] else "-" + parts[0][1]
        for positive, body in parts[1:]:
            out += (" + " if positive else " - ") + body
        return out


_TERM_RE = re.compile(r"(\d+)?\*?(t(\^\(?(-?\d+)\)?)?)?")


def parse_poly(text):
    """Parse a polynomial string such as 't^5 + 2t^4 + 2' or '3t^-1 + t'.

    A term is an integer, 't', or 'Ct^E' with integer exponent E; a
    negative exponent may be parenthesized.  Returns a LaurentPoly.
    """
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty polynomial string")
    coeffs = {}
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while True:
        j = i
        depth = 0
        while j < len(s):
            ch = s[j]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0 and s[j - 1] != "^":
                break
            j += 1
        term = s[i:j]
        m = _TERM_RE.fullmatch(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise DomainError(f"cannot parse term {term!r} in {text!r}")
        coeff = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            deg = 0
        elif m.group(4) is None:
            deg = 1
        else:
            deg = int(m.group(4))
        coeffs[deg] = coeffs.get(deg, 0) + sign * coeff
        if j >= len(s):
            break
        sign = -1 if s[j] == "-" else 1
        i = j + 1
        if i >= len(s):
            raise DomainError(f"trailing sign in {text!r}")
    return LaurentPoly(coeffs)


def decompose(poly, n, betti=None, window=64):
    """Enumerate all (q, p) with poly = q + p + p.reflect(n-1).

    INPUT: poly with nonnegative coefficients, dimension n >= 1, optional
    betti sequence (indexable by 0..n) demanding q_k + q_(n-k) = betti[k],
    and a degree window bound: poly must be supported in [-window, n+window].

    OUTPUT: a deterministically sorted list of (q, p) LaurentPoly pairs;
    empty when no decomposition exists.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    lo, hi = -window, n + window
    for d in poly.coeffs:
        if d < lo or d > hi:
            raise DomainError(f"degree {d} outside search window [{lo}, {hi}]")
    c = poly.coeff

    # Degrees above n can only come from p itself, degrees below 0 only
    # from the reflected copy.  Both force p and must agree.
    forced = {}
    high = set()
    for d in poly.coeffs:
        if d > n:
            high.add(d)
        elif d < -1:
            high.add(n - 1 - d)
    for d in high:
        if c(d) != c(n - 1 - d):
            return []
        if c(d):
            forced[d] = c(d)
    if c(-1):
        forced[n] = c(-1)
    if c(n) - c(-1) < 1:
        return []

    mid_lo = n // 2  # equals ceil((n - 1) / 2)
    free_degrees = list(range(mid_lo, n))
    bounds = []
    for i in free_degrees:
        if 2 * i == n - 1:
            bounds.append(c(i) // 2)
        else:
            bounds.append(min(c(i), c(n - 1 - i)))
    if any(b < 0 for b in bounds):
        return []

    results = []
    for combo in itertools.product(*(range(b + 1) for b in bounds)):
        p = dict(forced)
        for i, v in zip(free_degrees, combo):
            if v:
                p[i] = v
        q = {}
        ok = True
        for d in range(0, n + 1):
            qd = c(d) - p.get(d, 0) - p.get(n - 1 - d, 0)
            if qd < 0:
                ok = False
                break
            if qd:
                q[d] = qd
        if not ok or q.get(n, 0) < 1:
            continue
        if betti is not None:
            if any(q.get(k, 0) + q.get(n - k, 0) != betti[k]
                   for k in range(0, n + 1)):
                continue
        results.append((LaurentPoly(q), LaurentPoly(p)))
    results.sort(key=lambda qp: (sorted(qp[1].coeffs.items()),
                                 sorted(qp[0].coeffs.items())))
    return results


def is_connected_form(poly, n, window=64):
    """True when some decomposition has q_n = 1 and q_0 = 0."""
    for q, _ in decompose(poly, n, window=window):
        if q.coeff(n) == 1 and q.coeff(0) == 0:
            return True
    return False


def tb_from_polynomial(poly, n):
    """Classical invariant read off the count polynomial in dimension n.

    >>> tb_from_polynomial(parse_poly("t"), 1)
    -1
    >>> tb_from_polynomial(parse_poly("2 + t"), 1)
    1
    >>> tb_from_polynomial(parse_poly("t^5 + 2t^4 + 2"), 5)
    3
    """
    sign = -1 if ((n - 2) * (n - 1) // 2) % 2 else 1
    return sign * poly.evaluate(-1)
