"""Numerical laboratory for linear-at-infinity generating families.

A family f(x, eta) on R^n x R^N is stored as a polynomial core, a
nonzero linear tail A(eta), and a cutoff radius R: f equals the core
inside the ball of radius R, equals A(eta) outside radius 2R, and is
glued on the collar by the standard exp(-1/s) smoothstep.  First
derivatives are analytic everywhere (core, tail, and bump terms);
second derivatives are central differences of the analytic gradient.

The operations follow the front/chord dictionary: the fiber-critical
set {d_eta f = 0} projects to the front via (x, d_x f, f), and the
positive-value critical points of the difference
delta(x, eta, eta~) = f(x, eta~) - f(x, eta) are the Reeb chords.  A
chord in Morse index i contributes t^(i - (N+1)) to the count
polynomial estimate.  The estimate is chain-level: no differentials
are computed, and a warning is attached when two chords land in
adjacent degrees.

Morse indices come from an in-module cyclic Jacobi eigensolver (the
Hessians are at most 6x6); numpy is used for array arithmetic and for
batched linear solves inside Newton iterations.
"""

import math

import numpy as np

from .errors import DomainError
from .laurent import LaurentPoly
from .mpoly import MultiPoly, parse_mpoly


# --- smoothstep -------------------------------------------------------

def _bump(u):
    u = np.asarray(u, float)
    out = np.zeros_like(u)
    pos = u > 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(-1.0 / u[pos])
    return out


def _bump_d(u):
    u = np.asarray(u, float)
    out = np.zeros_like(u)
    pos = u > 1e-12
    out[pos] = np.exp(-1.0 / u[pos]) / u[pos] ** 2
    return out


def smoothstep(u):
    """0 for u <= 0, 1 for u >= 1, smooth exp-based blend between."""
    b1 = _bump(u)
    b2 = _bump(1.0 - np.asarray(u, float))
    return b1 / (b1 + b2)


def smoothstep_d(u):
    b1, b2 = _bump(u), _bump(1.0 - np.asarray(u, float))
    db1, db2 = _bump_d(u), _bump_d(1.0 - np.asarray(u, float))
    return (db1 * b2 + b1 * db2) / (b1 + b2) ** 2


# --- in-module symmetric eigensolver ---------------------------------

def sym_eigenvalues(mat, sweeps=60, tol=1e-13):
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi, sorted."""
    a = [[float(v) for v in row] for row in mat]
    d = len(a)
    for _ in range(sweeps):
        off = max((abs(a[p][q]) for p in range(d) for q in range(p + 1, d)),
                  default=0.0)
        scale = max(1.0, max(abs(a[i][i]) for i in range(d)))
        if off < tol * scale:
            break
        for p in range(d):
            for q in range(p + 1, d):
                if abs(a[p][q]) < tol * scale:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(d):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(d):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    return sorted(a[i][i] for i in range(d))


def _min_singular_value(jac):
    """Smallest singular value of a short wide matrix (rows <= 2)."""
    j = np.asarray(jac, float)
    gram = j @ j.T
    eigs = sym_eigenvalues(gram)
    return math.sqrt(max(eigs[0], 0.0))


# --- families ---------------------------------------------------------

class GeneratingFamily:
    """Polynomial core + linear tail + cutoff radius.

    core is a MultiPoly in the variables x1..xn, e1..eN (in that
    order); tail is the list of N coefficients of A(eta).
    """

    def __init__(self, n, N, core, tail, R):
        if n not in (1, 2) or N not in (1, 2):
            raise DomainError(
                f"base and fiber dimensions must be 1 or 2, got {n}, {N}")
        if core.nvars != n + N:
            raise DomainError(
                f"core has {core.nvars} variables, expected {n + N}")
        tail = [float(t) for t in tail]
        if len(tail) != N or not any(tail):
            raise DomainError(f"tail must be a nonzero linear form on "
                              f"{N} fiber variables, got {tail}")
        if R <= 0:
            raise DomainError(f"cutoff radius must be positive, got {R}")
        self.n = n
        self.N = N
        self.core = core
        self.tail = tail
        self.R = float(R)
        self._dx = [core.diff(i) for i in range(n)]
        self._de = [core.diff(n + j) for j in range(N)]

    def var_names(self):
        return ([f"x{i + 1}" for i in range(self.n)]
                + [f"e{j + 1}" for j in range(self.N)])

    def extent(self):
        """Radius beyond which the family is exactly its tail."""
        return 2.0 * self.R

    def _cols(self, X, E):
        return [X[:, i] for i in range(self.n)] \
            + [E[:, j] for j in range(self.N)]

    def _blend(self, X, E):
        r = np.sqrt((X * X).sum(axis=1) + (E * E).sum(axis=1))
        u = (r - self.R) / self.R
        return r, smoothstep(u), smoothstep_d(u) / self.R

    def tail_value(self, E):
        return E @ np.asarray(self.tail)

    def value(self, X, E):
        X, E = np.asarray(X, float), np.asarray(E, float)
        core_v = self.core.evaluate(self._cols(X, E))
        _, s, _ = self._blend(X, E)
        return core_v + s * (self.tail_value(E) - core_v)

    def grad_x(self, X, E):
        X, E = np.asarray(X, float), np.asarray(E, float)
        cols = self._cols(X, E)
        core_v = self.core.evaluate(cols)
        r, s, sd = self._blend(X, E)
        gap = self.tail_value(E) - core_v
        inv_r = np.where(r > 0, 1.0 / np.maximum(r, 1e-300), 0.0)
        out = np.empty_like(X)
        for i in range(self.n):
            gi = self._dx[i].evaluate(cols)
            out[:, i] = (1.0 - s) * gi + sd * X[:, i] * inv_r * gap
        return out

    def grad_eta(self, X, E):
        X, E = np.asarray(X, float), np.asarray(E, float)
        cols = self._cols(X, E)
        core_v = self.core.evaluate(cols)
        r, s, sd = self._blend(X, E)
        gap = self.tail_value(E) - core_v
        inv_r = np.where(r > 0, 1.0 / np.maximum(r, 1e-300), 0.0)
        out = np.empty_like(E)
        for j in range(self.N):
            gj = self._de[j].evaluate(cols)
            out[:, j] = ((1.0 - s) * gj + s * self.tail[j]
                         + sd * E[:, j] * inv_r * gap)
        return out

    def value_at(self, x, eta):
        return float(self.value(np.atleast_2d(np.asarray(x, float)),
                                np.atleast_2d(np.asarray(eta, float)))[0])

    def __repr__(self):
        return (f"GeneratingFamily(n={self.n}, N={self.N}, "
                f"core={self.core.format(self.var_names())!r}, "
                f"tail={self.tail}, R={self.R})")


class CompositeFamily:
    """Fiber-disjoint sum of families sharing one linear tail.

    Each part is a family translated in the fiber by its center; the
    sum is tail(eta) + sum_i (part_i(x, eta - c_i) - tail(eta - c_i)).
    Because every part equals its tail outside the ball of radius 2R_i,
    the sum is exactly part_i + tail(c_i) near center i and exactly the
    tail elsewhere, provided the translated supports are disjoint.
    """

    def __init__(self, parts, centers):
        if not parts or len(parts) != len(centers):
            raise DomainError("composite needs one fiber center per part")
        base = parts[0]
        self.n, self.N = base.n, base.N
        self.tail = list(base.tail)
        self.parts = []
        reach = 1.0
        for fam, center in zip(parts, centers):
            if fam.n != self.n or fam.N != self.N or fam.tail != self.tail:
                raise DomainError(
                    "composite parts must share base dim, fiber dim, "
                    "and tail")
            center = tuple(float(c) for c in center)
            self.parts.append((fam, center))
            reach = max(reach, math.hypot(*center) + fam.extent())
        for i, (fa, ca) in enumerate(self.parts):
            for fb, cb in self.parts[i + 1:]:
                gap = math.hypot(*(a - b for a, b in zip(ca, cb)))
                if gap < fa.extent() + fb.extent():
                    raise DomainError(
                        f"fiber supports overlap: centers {ca} and {cb} "
                        f"are {gap:g} apart, need "
                        f"{fa.extent() + fb.extent():g}")
        self.R = reach / 2.0

    def extent(self):
        return 2.0 * self.R

    def tail_value(self, E):
        return E @ np.asarray(self.tail)

    def value(self, X, E):
        X, E = np.asarray(X, float), np.asarray(E, float)
        total = self.tail_value(E).astype(float)
        for fam, center in self.parts:
            El = E - np.asarray(center)
            total = total + fam.value(X, El) - fam.tail_value(El)
        return total

    def grad_x(self, X, E):
        X, E = np.asarray(X, float), np.asarray(E, float)
        out = np.zeros_like(X)
        for fam, center in self.parts:
            out += fam.grad_x(X, E - np.asarray(center))
        return out

    def grad_eta(self, X, E):
        X, E = np.asarray(X, float), np.asarray(E, float)
        out = np.tile(np.asarray(self.tail, float), (len(E), 1))
        for fam, center in self.parts:
            out += fam.grad_eta(X, E - np.asarray(center)) \
                - np.asarray(fam.tail)
        return out

    def value_at(self, x, eta):
        return float(self.value(np.atleast_2d(np.asarray(x, float)),
                                np.atleast_2d(np.asarray(eta, float)))[0])

    def __repr__(self):
        return (f"CompositeFamily(n={self.n}, N={self.N}, "
                f"parts={len(self.parts)}, tail={self.tail}, R={self.R})")


# --- standard families ------------------------------------------------

def unknot_family(tail=-200.0):
    """One-chord family: front z = +-2(1-x^2)^(3/2) with cusps at x = +-1.

    The steep tail keeps the collar free of spurious fiber-critical
    points: on R <= r <= 2R every term of d_eta f is strictly negative
    once tail < -(3 + 3(2R)^2 + (2R)^2).
    """
    core = parse_mpoly("3*e1 - 3*x1^2*e1 - e1^3", ["x1", "e1"])
    return GeneratingFamily(1, 1, core, [tail], 3.0)


def scaled_unknot_family(k=2.0):
    """The unknot core with both wells deepened by the factor k."""
    core = parse_mpoly("3*e1 - 3*x1^2*e1 - e1^3", ["x1", "e1"]).scale(k)
    return GeneratingFamily(1, 1, core, [-400.0], 3.0)


def shifted_unknot_family(c=0.3):
    """Unknot family recentred at x = c (breaks the x -> -x symmetry)."""
    core = parse_mpoly("3*e1 - 3*x1^2*e1 - e1^3",
                       ["x1", "e1"]).shift(0, -c)
    return GeneratingFamily(1, 1, core, [-260.0], 3.0 + abs(c))


def linear_family(tail=(-5.0,), R=2.0, n=1):
    """The tail itself as a family: core == A(eta), so f == A globally
    and the fiber-critical set is empty."""
    tail = list(tail)
    N = len(tail)
    core = MultiPoly(n + N)
    for j, c in enumerate(tail):
        core = core + MultiPoly(
            n + N, {tuple(1 if k == n + j else 0 for k in range(n + N)): c})
    return GeneratingFamily(n, N, core, tail, R)


def fish_family(pull=-1.0):
    """Kink family -(e^4 + pull*e^2) + x*e.

    In the core region the fiber derivative is a cubic: three roots for
    small |x| when pull < 0 (the swallowtail wedge |x| < 4/(3*sqrt(6))
    at pull = -1), one root for large |x|.  Because the core is even in
    eta while the tail is linear, one extra branch always lives in the
    collar where the blend turns the downward quartic end around; root
    counts in tests refer to the core region |eta| <= 1.5.
    """
    core = parse_mpoly("-e1^4 + x1*e1", ["x1", "e1"]) \
        + MultiPoly(2, {(0, 2): -pull})
    return GeneratingFamily(1, 1, core, [-60.0], 2.0)


def stacked_pair_family(separation=6.5, z_shift=5.0, steepen=2.0,
                        widen=1.25):
    """Fiber-disjoint sum of two one-chord families.

    The copies sit at fiber centers -+separation, which the shared
    tail turns into a large front separation in z.  The second copy is
    steepened (no parallel strands, which would make mixed chords
    tangentially degenerate) and widened (cusps at x = +-widen instead
    of +-1, so no two cusps are vertically aligned); z_shift nudges it
    inside its own band.
    """
    tail = [-400.0]
    base = parse_mpoly("3*e1 - 3*x1^2*e1 - e1^3", ["x1", "e1"])
    low = GeneratingFamily(1, 1, base, tail, 3.0)
    k, w = steepen, widen
    high_core = parse_mpoly(
        f"{3 * k}*e1 - {3 * k / w ** 2}*x1^2*e1 - {k}*e1^3 + {z_shift}",
        ["x1", "e1"])
    high = GeneratingFamily(1, 1, high_core, tail, 3.0)
    return CompositeFamily([low, high], [(-separation,), (separation,)])


# --- gf-file format ---------------------------------------------------

def parse_gf_file(text):
    """Parse the n= / N= / core= / tail= / R= family format.

    >>> f = parse_gf_file("n=1\\nN=1\\ncore=3*e1 - 3*x1^2*e1 - e1^3\\n"
    ...                   "tail=-30*e1\\nR=3")
    >>> f.n, f.N, f.R
    (1, 1, 3.0)
    """
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"bad gf-file line {line!r}")
        key, _, val = line.partition("=")
        fields[key.strip()] = val.strip()
    for key in ("n", "N", "core", "tail", "R"):
        if key not in fields:
            raise DomainError(f"gf-file missing field {key}=")
    n, N = int(fields["n"]), int(fields["N"])
    names = [f"x{i + 1}" for i in range(n)] + [f"e{j + 1}" for j in range(N)]
    core = parse_mpoly(fields["core"], names)
    tail_poly = parse_mpoly(fields["tail"], names)
    tail = [0.0] * N
    for exps, c in tail_poly.terms.items():
        degree = sum(exps)
        if degree != 1 or any(exps[:n]):
            raise DomainError(
                f"tail must be linear in the fiber variables, got "
                f"{fields['tail']!r}")
        tail[exps[n:].index(1)] = c
    return GeneratingFamily(n, N, core, tail, float(fields["R"]))


def format_gf_file(fam):
    names = fam.var_names()
    tail_poly = MultiPoly(fam.n + fam.N)
    for j, c in enumerate(fam.tail):
        tail_poly = tail_poly + MultiPoly(
            fam.n + fam.N, {tuple(1 if k == fam.n + j else 0
                                  for k in range(fam.n + fam.N)): c})
    return (f"n={fam.n}\nN={fam.N}\ncore={fam.core.format(names)}\n"
            f"tail={tail_poly.format(names)}\nR={_num(fam.R)}\n")


def _num(v):
    return str(int(v)) if float(v).is_integer() else repr(float(v))


# --- fiber-critical set ----------------------------------------------

class FiberPoint:
    """A sample of the fiber-critical set with its front tags."""

    def __init__(self, x, eta, z, p):
        self.x = x
        self.eta = eta
        self.z = z
        self.p = p

    def __repr__(self):
        return f"FiberPoint(x={self.x}, eta={self.eta}, z={self.z:.6g})"


def _x_grid(fam, step):
    ext = fam.extent()
    axis = np.arange(-ext, ext + step / 2.0, step)
    if fam.n == 1:
        return axis.reshape(-1, 1)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([g1.ravel(), g2.ravel()])


def _solve_fiber_1d(fam, xs, step, newton_tol, accept_tol):
    """eta roots of grad_eta over each x row; N = 1 scan + Newton."""
    ext = fam.extent()
    es = np.arange(-ext, ext + step / 2.0, step)
    me = len(es)
    found_x, found_e = [], []
    chunk = max(1, 200000 // me)
    for lo in range(0, len(xs), chunk):
        xc = xs[lo:lo + chunk]
        mx = len(xc)
        X = np.repeat(xc, me, axis=0)
        E = np.tile(es, mx).reshape(-1, 1)
        g = fam.grad_eta(X, E)[:, 0].reshape(mx, me)
        ga, gb = g[:, :-1], g[:, 1:]
        hit = np.sign(ga) * np.sign(gb) <= 0
        hit &= ~((ga == 0) & (gb == 0))
        rows, cols = np.nonzero(hit)
        if not len(rows):
            continue
        denom = gb[rows, cols] - ga[rows, cols]
        frac = np.where(np.abs(denom) > 1e-300,
                        -ga[rows, cols] / np.where(denom == 0, 1, denom), 0.5)
        e0 = es[cols] + np.clip(frac, 0.0, 1.0) * step
        Xs = xs[lo + rows]
        e0 = e0.reshape(-1, 1)
        h = 1e-6
        for _ in range(60):
            g0 = fam.grad_eta(Xs, e0)[:, 0]
            if np.max(np.abs(g0)) < newton_tol:
                break
            dg = (fam.grad_eta(Xs, e0 + h)[:, 0]
                  - fam.grad_eta(Xs, e0 - h)[:, 0]) / (2 * h)
            dg = np.where(np.abs(dg) > 1e-14, dg, 1e-14)
            e0 = e0 - (g0 / dg).reshape(-1, 1)
        g0 = np.abs(fam.grad_eta(Xs, e0)[:, 0])
        ok = g0 < accept_tol
        found_x.append(Xs[ok])
        found_e.append(e0[ok])
    if not found_x:
        return np.empty((0, fam.n)), np.empty((0, 1))
    return np.concatenate(found_x), np.concatenate(found_e)


def _solve_fiber_2d(fam, xs, step, newton_tol, accept_tol):
    """N = 2: seed where |grad_eta| is small on the grid, then Newton."""
    ext = fam.extent()
    es = np.arange(-ext, ext + step / 2.0, step)
    E1, E2 = np.meshgrid(es, es, indexing="ij")
    eta_grid = np.column_stack([E1.ravel(), E2.ravel()])
    me = len(eta_grid)
    seed_thresh = 4.0 * step
    found_x, found_e = [], []
    chunk = max(1, 200000 // me)
    h = 1e-6
    for lo in range(0, len(xs), chunk):
        xc = xs[lo:lo + chunk]
        mx = len(xc)
        X = np.repeat(xc, me, axis=0)
        E = np.tile(eta_grid, (mx, 1))
        g = fam.grad_eta(X, E)
        norm = np.abs(g).max(axis=1)
        pick = norm < seed_thresh
        if not pick.any():
            continue
        Xs, Es = X[pick], E[pick]
        for _ in range(60):
            g0 = fam.grad_eta(Xs, Es)
            if np.max(np.abs(g0)) < newton_tol:
                break
            jac = np.empty((len(Es), 2, 2))
            for k in range(2):
                dE = np.zeros_like(Es)
                dE[:, k] = h
                jac[:, :, k] = (fam.grad_eta(Xs, Es + dE)
                                - fam.grad_eta(Xs, Es - dE)) / (2 * h)
            det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
            det = np.where(np.abs(det) > 1e-14, det, 1e-14)
            step0 = np.empty_like(Es)
            step0[:, 0] = (jac[:, 1, 1] * g0[:, 0]
                           - jac[:, 0, 1] * g0[:, 1]) / det
            step0[:, 1] = (-jac[:, 1, 0] * g0[:, 0]
                           + jac[:, 0, 0] * g0[:, 1]) / det
            Es = Es - np.clip(step0, -0.5, 0.5)
        g0 = np.abs(fam.grad_eta(Xs, Es)).max(axis=1)
        ok = g0 < accept_tol
        found_x.append(Xs[ok])
        found_e.append(Es[ok])
    if not found_x:
        return np.empty((0, fam.n)), np.empty((0, 2))
    return np.concatenate(found_x), np.concatenate(found_e)


def fiber_critical_set(fam, step=0.05, newton_tol=1e-12, accept_tol=1e-9,
                       require=False):
    """Newton-polished samples of the fiber-critical set, tagged with the
    front data (x, eta, z = f, p = d_x f).  One sample per (x gridpoint,
    eta branch); x stays on the grid, eta is polished.
    """
    xs = _x_grid(fam, step)
    if fam.N == 1:
        X, E = _solve_fiber_1d(fam, xs, step, newton_tol, accept_tol)
    else:
        X, E = _solve_fiber_2d(fam, xs, step, newton_tol, accept_tol)
    points = []
    if len(X):
        Z = fam.value(X, E)
        P = fam.grad_x(X, E)
        seen = {}
        for i in range(len(X)):
            key = (tuple(np.round(X[i], 9)), tuple(np.round(E[i], 7)))
            if key in seen:
                continue
            seen[key] = True
            points.append(FiberPoint(tuple(X[i]), tuple(E[i]),
                                     float(Z[i]), tuple(P[i])))
    points.sort(key=lambda q: (q.x, q.eta))
    if require and not points:
        raise DomainError("no fiber critical points found")
    return points


def fiber_regularity_margin(fam, points, h=1e-6):
    """min over samples of the smallest singular value of D(d_eta f)."""
    if not points:
        return None
    margin = math.inf
    for q in points:
        x = np.array([q.x], float)
        e = np.array([q.eta], float)
        jac = np.empty((fam.N, fam.n + fam.N))
        for k in range(fam.n):
            dX = np.zeros_like(x)
            dX[0, k] = h
            jac[:, k] = (fam.grad_eta(x + dX, e)
                         - fam.grad_eta(x - dX, e))[0] / (2 * h)
        for k in range(fam.N):
            dE = np.zeros_like(e)
            dE[0, k] = h
            jac[:, fam.n + k] = (fam.grad_eta(x, e + dE)
                                 - fam.grad_eta(x, e - dE))[0] / (2 * h)
        margin = min(margin, _min_singular_value(jac))
    return margin


# --- difference-function critical points ------------------------------

class CriticalPoint:
    """A critical point of the difference function.

    coords = (x, eta, eta~); value = difference there; index = Morse
    index; min_abs_hessian_eigenvalue = nondegeneracy margin.  The
    chord's degree contribution is index - (N+1).
    """

    def __init__(self, coords, value, index, margin, N):
        self.coords = coords
        self.value = value
        self.index = index
        self.min_abs_hessian_eigenvalue = margin
        self.N = N

    @property
    def degree(self):
        return self.index - (self.N + 1)

    def to_dict(self):
        x, eta, eta2 = self.coords
        return {"x": list(x), "eta": list(eta), "eta_tilde": list(eta2),
                "value": self.value, "index": self.index,
                "degree": self.degree,
                "margin": self.min_abs_hessian_eigenvalue}

    def __repr__(self):
        return (f"CriticalPoint(value={self.value:.6g}, index={self.index}, "
                f"coords={self.coords})")


def _diff_gradient(fam, pts):
    """Gradient of the difference function at pts (m, n+2N)."""
    n, N = fam.n, fam.N
    X = pts[:, :n]
    E1 = pts[:, n:n + N]
    E2 = pts[:, n + N:]
    return np.concatenate([
        fam.grad_x(X, E2) - fam.grad_x(X, E1),
        -fam.grad_eta(X, E1),
        fam.grad_eta(X, E2),
    ], axis=1)


def _diff_value(fam, pts):
    n, N = fam.n, fam.N
    return (fam.value(pts[:, :n], pts[:, n + N:])
            - fam.value(pts[:, :n], pts[:, n:n + N]))


def _diff_hessian(fam, pt, h=1e-5):
    d = len(pt)
    hess = np.empty((d, d))
    for k in range(d):
        dp = np.zeros((1, d))
        dp[0, k] = h
        hess[:, k] = (_diff_gradient(fam, pt[None, :] + dp)
                      - _diff_gradient(fam, pt[None, :] - dp))[0] / (2 * h)
    return (hess + hess.T) / 2.0


def _newton_critical(fam, seeds, newton_tol=1e-12, accept_tol=1e-9,
                     iters=80, h=1e-6):
    pts = seeds.copy()
    d = pts.shape[1]
    for _ in range(iters):
        res = _diff_gradient(fam, pts)
        if np.max(np.abs(res)) < newton_tol:
            break
        jac = np.empty((len(pts), d, d))
        for k in range(d):
            dp = np.zeros((1, d))
            dp[0, k] = h
            jac[:, :, k] = (_diff_gradient(fam, pts + dp)
                            - _diff_gradient(fam, pts - dp)) / (2 * h)
        dets = np.linalg.det(jac)
        good = np.abs(dets) > 1e-14
        if not good.any():
            break
        step = np.zeros_like(pts)
        step[good] = np.linalg.solve(jac[good], res[good][..., None])[..., 0]
        pts = pts - np.clip(step, -0.5, 0.5)
    res = np.max(np.abs(_diff_gradient(fam, pts)), axis=1)
    return pts[res < accept_tol]


def _cluster(pts, tol=1e-5):
    out = []
    for p in sorted(map(tuple, pts)):
        if any(max(abs(a - b) for a, b in zip(q, p)) < tol for q in out):
            continue
        out.append(p)
    return [np.array(p) for p in out]


def reeb_chords(fam, step=0.05, value_floor=1e-6, margin_tol=1e-8,
                pair_tol=1e-9):
    """Enumerate the critical points of the difference function.

    Returns (chords, gamma_estimate, report): chords are the
    positive-value points sorted by value then coords, gamma_estimate
    sums t^(index - (N+1)) over them, and the report records value
    thresholds, the duality pairing, and whether the estimate is only
    chain-level (adjacent degrees present).  The full signed
    enumeration is checked for duality: every point must have a mirror
    partner (x, eta~, eta) with opposite value and complementary index.
    """
    n, N = fam.n, fam.N
    fiber = fiber_critical_set(fam, step)
    by_x = {}
    for q in fiber:
        by_x.setdefault(q.x, []).append(q.eta)
    seeds = []
    for x, branches in by_x.items():
        for i, ei in enumerate(branches):
            for j, ej in enumerate(branches):
                if i != j:
                    seeds.append(list(x) + list(ei) + list(ej))
    if not seeds:
        return [], LaurentPoly({}), _chord_report([], N, step, value_floor,
                                                  margin_tol)
    converged = _newton_critical(fam, np.asarray(seeds, float))
    vals = _diff_value(fam, converged)
    keep = np.abs(vals) > value_floor
    points = []
    for pt in _cluster(converged[keep]):
        value = float(_diff_value(fam, pt[None, :])[0])
        hess = _diff_hessian(fam, pt)
        eigs = sym_eigenvalues(hess)
        margin = min(abs(v) for v in eigs)
        coords = (tuple(pt[:n]), tuple(pt[n:n + N]), tuple(pt[n + N:]))
        if margin < margin_tol:
            raise DomainError(
                f"degenerate critical point at {coords}: min |eigenvalue| "
                f"{margin:.3e}")
        index = sum(1 for v in eigs if v < 0)
        points.append(CriticalPoint(coords, value, index, margin, N))
    _audit_duality(points, n, N, pair_tol)
    chords = sorted((p for p in points if p.value > 0),
                    key=lambda p: (p.value, p.coords))
    gamma = LaurentPoly({})
    for p in chords:
        gamma = gamma + LaurentPoly({p.degree: 1})
    report = _chord_report(chords, N, step, value_floor, margin_tol)
    return chords, gamma, report


def _chord_report(chords, N, step, value_floor, margin_tol):
    values = [p.value for p in chords]
    degrees = sorted({p.degree for p in chords})
    adjacent = any(d + 1 in degrees for d in degrees)
    report = {
        "count": len(chords),
        "epsilon": min(values) / 2.0 if values else None,
        "omega": 2.0 * max(values) if values else None,
        "chain_level_only": adjacent,
        "warnings": (["chain-level estimate only: chords in adjacent "
                      "degrees, differentials not computed"]
                     if adjacent else []),
        "tolerances": {"grid_step": step, "value_floor": value_floor,
                       "margin_tol": margin_tol},
    }
    return report


def _audit_duality(points, n, N, tol):
    total = n + 2 * N
    for p in points:
        x, e1, e2 = p.coords
        target = list(x) + list(e2) + list(e1)
        partner = None
        for q in points:
            qx, qe1, qe2 = q.coords
            flat = list(qx) + list(qe1) + list(qe2)
            if max(abs(a - b) for a, b in zip(flat, target)) < 1e-5:
                partner = q
                break
        if partner is None or abs(partner.value + p.value) > tol \
                or partner.index + p.index != total:
            raise DomainError(
                f"duality violated: point at {p.coords} value {p.value:.6g} "
                f"index {p.index} lacks a mirror partner with value "
                f"{-p.value:.6g} and index {total - p.index}")


# --- spinning ---------------------------------------------------------

def spin(path, theta_samples=8, axis_band=0.4, tol=1e-9):
    """Rotate a 1-d base family about the x = 0 axis.

    path is either a single family (constant path) or a callable
    theta -> family on [0, 2pi).  The construction replaces x^2 by
    x1^2 + x2^2 in the core, which is exact for theta-constant paths
    with even cores; theta-variation near the axis and odd radial
    terms both obstruct a smooth spun family and are rejected.
    """
    if callable(path):
        thetas = [2.0 * math.pi * k / theta_samples
                  for k in range(theta_samples)]
        fams = [path(t) for t in thetas]
    else:
        fams = [path]
    base = fams[0]
    if base.n != 1:
        raise DomainError(f"spin needs a 1-dimensional base, got n={base.n}")
    for fam in fams[1:]:
        if fam.N != base.N or fam.R != base.R or fam.tail != base.tail:
            raise DomainError(
                "spin needs a shared tail and cutoff across the path")
    ext = base.extent()
    exs = np.arange(0.0, ext + 0.05, 0.1).reshape(-1, 1)
    ees = np.arange(-ext, ext + 0.05, 0.2)
    X = np.repeat(exs, len(ees), axis=0)
    E = np.tile(ees, len(exs)).reshape(-1, base.N)
    if base.N == 2:
        E = np.column_stack([E[:, 0], np.zeros(len(E))])
    ref = fams[0].value(X, E)
    for fam in fams[1:]:
        dev = np.max(np.abs(fam.value(X, E) - ref))
        if dev > tol:
            near = np.abs(X[:, 0]) <= axis_band
            axis_dev = np.max(np.abs(fam.value(X, E) - ref)[near])
            if axis_dev > tol:
                raise DomainError(
                    f"not spinnable: θ-dependence near axis "
                    f"(variation {axis_dev:.3e})")
            raise DomainError(
                f"spin is implemented for θ-constant paths; the path "
                f"varies by {dev:.3e} away from the axis")
    if any(e[0] % 2 for e in base.core.terms):
        slope = max(abs(c) for e, c in base.core.terms.items() if e[0] % 2)
        raise DomainError(
            f"not spinnable: θ-dependence near axis (odd radial terms of "
            f"size {slope:g} give the gradient a direction-dependent limit)")
    spun_core = base.core.insert_rotation(0)
    return GeneratingFamily(2, base.N, spun_core, base.tail, base.R)


# --- immersed filling family ------------------------------------------

class ImmersedFilling:
    """The two-parameter interpolation from a linear slice to t * f.

    F(t, x, eta) = t*(sigma(t) f + (1-sigma(t)) A(eta)) - eps(t)*eta,
    with sigma the smoothstep rising on [1, 2]; eps(t) holds the
    regular value eps_G up to t = 2 and ramps linearly to 0 at t_plus.
    Every t-slice is again a polynomial-core family (slice_family).
    """

    def __init__(self, fam, eps_G, t_plus, report):
        self.family = fam
        self.eps_G = eps_G
        self.t_minus = 1.0
        self.t_plus = float(t_plus)
        self.report = report

    def sigma(self, t):
        return float(smoothstep(np.asarray(t, float) - 1.0))

    def eps(self, t):
        if t <= 2.0:
            return self.eps_G
        if t >= self.t_plus:
            return [0.0] * self.family.N
        frac = (self.t_plus - t) / (self.t_plus - 2.0)
        return [e * frac for e in self.eps_G]

    def slice_family(self, t):
        fam = self.family
        s = self.sigma(t)
        eps = self.eps(t)
        nv = fam.n + fam.N
        core = fam.core.scale(t * s)
        for j in range(fam.N):
            ej = {tuple(1 if k == fam.n + j else 0 for k in range(nv)):
                  t * (1.0 - s) * fam.tail[j] - eps[j]}
            core = core + MultiPoly(nv, ej)
        tail = [t * fam.tail[j] - eps[j] for j in range(fam.N)]
        return GeneratingFamily(fam.n, fam.N, core, tail, fam.R)

    def value(self, t, X, E):
        fam = self.family
        s = self.sigma(t)
        eps = np.asarray(self.eps(t))
        base = t * (s * fam.value(X, E) + (1.0 - s) * fam.tail_value(E))
        return base - np.asarray(E, float) @ eps


def immersed_filling_family(fam, t_plus=3.0, budget=40, step=0.2,
                            margin_tol=1e-6, seed=0):
    """Build the filling interpolation and certify its slice conditions.

    Searches decreasing offsets eps_G until 0 is a regular value of the
    fiber derivative of every sampled slice (the Jacobian in (t, x,
    eta) keeps a singular-value margin); then checks on sample grids
    that slices are exactly linear for t <= 1, exactly t*f for
    t >= t_plus, and exactly the tail far from the origin.
    """
    if t_plus <= 2.0:
        raise DomainError(f"t_plus must exceed 2, got {t_plus}")
    rng = np.random.default_rng(seed)
    t_samples = [0.5, 1.0, 1.3, 1.6, 1.9, 2.2, 2.6, t_plus, t_plus + 0.5]
    chosen = None
    for k in range(budget):
        mag = 0.5 * (0.7 ** (k // 4))
        direction = rng.normal(size=fam.N)
        direction /= max(np.abs(direction).max(), 1e-12)
        eps_G = list(mag * direction)
        probe = ImmersedFilling(fam, eps_G, t_plus, None)
        margin = math.inf
        ok = True
        for t in t_samples:
            sl = probe.slice_family(t)
            if not any(sl.tail):
                ok = False
                break
            pts = fiber_critical_set(sl, step=step)
            m = fiber_regularity_margin(sl, pts)
            if m is not None:
                margin = min(margin, m)
                if m < margin_tol:
                    ok = False
                    break
        if ok:
            chosen = (eps_G, margin)
            break
    if chosen is None:
        raise DomainError(
            f"failed to locate regular value ε_G after {budget} samples")
    eps_G, margin = chosen
    filling = ImmersedFilling(fam, eps_G, t_plus, None)
    xs = np.linspace(-fam.extent(), fam.extent(), 9).reshape(-1, 1)
    if fam.n == 2:
        xs = np.column_stack([xs[:, 0], xs[::-1, 0]])
    es = np.linspace(-fam.extent(), fam.extent(), 9).reshape(-1, fam.N) \
        if fam.N == 1 else np.column_stack(
            [np.linspace(-fam.extent(), fam.extent(), 9)] * 2)
    conditions = {}
    dev = 0.0
    far = np.full((9, fam.N), 1.5 * fam.extent())
    for t in t_samples:
        want = t * filling.family.tail_value(far) \
            - far @ np.asarray(filling.eps(t))
        dev = max(dev, float(np.max(np.abs(
            filling.value(t, np.zeros((9, fam.n)) + 2.5 * fam.extent(), far)
            - want))))
    conditions["linear_at_infinity"] = dev < 1e-9
    dev_low = max(float(np.max(np.abs(
        filling.value(t, xs, es)
        - (t * fam.tail_value(es) - es @ np.asarray(eps_G)))))
        for t in (0.3, 0.7, 1.0))
    conditions["linear_below_t_minus"] = dev_low < 1e-9
    dev_high = max(float(np.max(np.abs(
        filling.value(t, xs, es) - t * fam.value(xs, es))))
        for t in (t_plus, t_plus + 1.0))
    conditions["scaled_family_above_t_plus"] = dev_high < 1e-9
    conditions["fiber_derivative_regular"] = margin >= margin_tol
    report = {
        "eps_G": eps_G,
        "t_minus": 1.0,
        "t_plus": t_plus,
        "regularity_margin": margin,
        "conditions": conditions,
        "sigma": "exp-bump smoothstep rising on [1, 2]",
        "eps_path": "constant eps_G up to t = 2, linear ramp to 0 at t_plus",
        "tolerances": {"margin_tol": margin_tol, "slice_grid_step": step},
    }
    filling.report = report
    return filling


# --- embeddedness along a path ----------------------------------------

def embeddedness_check(path, t_minus, t_plus, samples=9, step=0.1,
                       death_tol=1e-3, dt=1e-4):
    """Certify the chord-length inequality along a family path.

    path: callable t -> family on [t_minus, t_plus], t_minus > 0.
    Enumerates the difference-function critical points at sampled
    times; h is the smallest |value| seen, max_dt the largest time
    derivative of the difference function at those points, and the
    path passes when h/t stays above |d_t delta| everywhere sampled.
    The reported slowdown is the factor a time reparameterization must
    stretch the path by to restore the inequality when it fails.
    """
    if t_minus <= 0:
        raise DomainError(f"t_minus must be positive, got {t_minus}")
    ts = np.linspace(t_minus, t_plus, samples)
    h_min = math.inf
    max_dt = 0.0
    slowdown = 0.0
    for t in ts:
        fam = path(t)
        chords, _, _ = reeb_chords(fam, step=step)
        if not chords:
            raise DomainError(
                f"chord death along path: no chords at t = {t:.6g}")
        values = [p.value for p in chords]
        h_t = min(values)
        if h_t < death_tol:
            raise DomainError(
                f"chord death along path: minimal value {h_t:.3e} "
                f"at t = {t:.6g}")
        h_min = min(h_min, h_t)
        lo = path(max(t - dt, t_minus))
        hi = path(min(t + dt, t_plus))
        span = min(t + dt, t_plus) - max(t - dt, t_minus)
        for p in chords:
            pt = np.array([list(p.coords[0]) + list(p.coords[1])
                           + list(p.coords[2])])
            d_hi = float(_diff_value(hi, pt)[0])
            d_lo = float(_diff_value(lo, pt)[0])
            rate = abs(d_hi - d_lo) / span
            max_dt = max(max_dt, rate)
            slowdown = max(slowdown, float(rate * t) / h_min)
    ok = slowdown < 1.0
    return {"h": h_min, "max_dt": max_dt, "ok": ok,
            "slowdown": slowdown,
            "t_samples": list(map(float, ts)),
            "tolerances": {"grid_step": step, "death_tol": death_tol}}
