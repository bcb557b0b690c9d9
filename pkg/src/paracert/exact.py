"""Exact rational scalars and dense linear algebra over the rationals.

Everything certified in this package funnels through the elimination
routines here.  Scalars are `fractions.Fraction` (always in lowest terms,
positive denominator); vectors are lists of Fraction, matrices lists of
row lists.  No routine in this module ever rounds.

Pivoting is "first nonzero" throughout: determinism matters more than
speed at the dimensions we run (a few hundred at most).
"""

from __future__ import annotations

from fractions import Fraction

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class Infeasible(Exception):
    """A linear system (equalities and/or strict inequalities) has no solution."""


class DegenerateRestriction(Exception):
    """A bilinear form restricted to a subspace is singular."""


class DegenerateForm(Exception):
    """A bilinear form on the whole space is singular."""


def rat(x) -> Fraction:
    """Coerce ints, rationals and 'p/q' strings to Fraction. Floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating point input refused; pass int, Fraction or 'p/q' string")
    return Fraction(x)


def vec(entries) -> list:
    return [rat(x) for x in entries]


def zeros(n: int) -> list:
    return [ZERO] * n


def unit(n: int, i: int) -> list:
    v = [ZERO] * n
    v[i] = ONE
    return v


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot product")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vadd(u, v) -> list:
    return [a + b for a, b in zip(u, v)]


def vsub(u, v) -> list:
    return [a - b for a, b in zip(u, v)]


def vscale(c, u) -> list:
    c = rat(c)
    return [c * a for a in u]


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def mat_vec(A, x) -> list:
    return [dot(row, x) for row in A]


def transpose(A) -> list:
    return [list(col) for col in zip(*A)]


def _rref(A):
    """Reduced row echelon form with first-nonzero pivoting.

    Returns (R, pivot_columns).  A is not modified.
    """
    R = [list(row) for row in A]
    nrows = len(R)
    ncols = len(R[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if R[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        R[r], R[pivot_row] = R[pivot_row], R[r]
        inv = ONE / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def rank(A) -> int:
    if not A:
        return 0
    _, pivots = _rref(A)
    return len(pivots)


def kernel(A) -> list:
    """Basis of the null space of A, one vector per free column.

    The count always equals cols(A) - rank(A); an injective A yields [].
    """
    if not A:
        return []
    ncols = len(A[0])
    R, pivots = _rref(A)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve_affine(A, b):
    """Solve A x = b exactly.

    Returns (particular, homogeneous_basis) with homogeneous_basis = kernel(A).
    Raises Infeasible when b is outside the column space.
    """
    if len(A) != len(b):
        raise ValueError("rows(A) must equal len(b)")
    if not A:
        return [], []
    ncols = len(A[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = _rref(aug)
    for r in range(len(R)):
        if all(R[r][c] == 0 for c in range(ncols)) and R[r][ncols] != 0:
            raise Infeasible("right-hand side not in column space")
    x = zeros(ncols)
    for r, p in enumerate(pivots):
        if p == ncols:
            raise Infeasible("right-hand side not in column space")
        x[p] = R[r][ncols]
    return x, kernel(A)


class Echelon:
    """Incrementally maintained row-reduced spanning set.

    Supports membership tests, independent-vector insertion and coordinate
    recovery against the accepted members (combination coefficients are
    tracked alongside each reduced row, so `coordinates` costs one reduction
    pass, not an elimination).  The backbone of every subspace computation
    in the package.
    """

    def __init__(self, dim: int, vectors=None):
        self.dim = dim
        self.rows = []        # reduced rows, each normalized to pivot 1
        self.pivots = []      # pivot column of each row
        self.combos = []      # row = sum combos[r][k] * member_k
        self._members = []    # original vectors that were accepted
        if vectors:
            for v in vectors:
                self.add(v)

    def _reduce(self, v, track=False):
        v = list(v)
        mu = {} if track else None
        for r, (row, p) in enumerate(zip(self.rows, self.pivots)):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
                if track:
                    for k, c in self.combos[r].items():
                        mu[k] = mu.get(k, ZERO) + f * c
        return (v, mu) if track else v

    def add(self, v) -> bool:
        """Insert v; returns True when v was independent of the current span."""
        w, mu = self._reduce(v, track=True)
        for c in range(self.dim):
            if w[c] != 0:
                inv = ONE / w[c]
                w = [x * inv for x in w]
                combo = {k: -inv * val for k, val in mu.items() if val != 0}
                combo[len(self._members)] = inv
                self.rows.append(w)
                self.pivots.append(c)
                self.combos.append(combo)
                self._members.append(list(v))
                return True
        return False

    def contains(self, v) -> bool:
        return is_zero_vec(self._reduce(v))

    def residual(self, v) -> list:
        return self._reduce(v)

    def coordinates(self, v):
        """Coordinates of v against the accepted member vectors, or None."""
        w, mu = self._reduce(v, track=True)
        if not is_zero_vec(w):
            return None
        out = zeros(len(self._members))
        for k, c in mu.items():
            out[k] = c
        return out

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list:
        return [list(v) for v in self._members]


def span_basis(vectors, dim: int) -> list:
    """Independent subset of `vectors` spanning the same space, in input order."""
    ech = Echelon(dim)
    out = []
    for v in vectors:
        if ech.add(v):
            out.append(list(v))
    return out


def intersect_spans(basis_a, basis_b, dim: int) -> list:
    """Basis of span(basis_a) ∩ span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    cols = [list(v) for v in basis_a] + [list(v) for v in basis_b]
    A = transpose(cols)
    na = len(basis_a)
    out = []
    ech = Echelon(dim)
    for k in kernel(A):
        v = zeros(dim)
        for i in range(na):
            if k[i] != 0:
                v = vadd(v, vscale(k[i], basis_a[i]))
        if not is_zero_vec(v) and ech.add(v):
            out.append(v)
    return out


def project_orthogonal(v, subspace, form):
    """Form-orthogonal projection of v onto span(subspace).

    `form` is the Gram matrix of a symmetric bilinear form on the ambient
    space.  Raises DegenerateRestriction when the form restricted to the
    subspace is singular.
    """
    if not subspace:
        return zeros(len(v))
    fv = mat_vec(form, v)
    G = [[dot(b_i, mat_vec(form, b_j)) for b_j in subspace] for b_i in subspace]
    if rank(G) < len(subspace):
        raise DegenerateRestriction("form restricted to subspace is singular")
    rhs = [dot(b_i, fv) for b_i in subspace]
    x, _ = solve_affine(G, rhs)
    out = zeros(len(v))
    for c, b in zip(x, subspace):
        if c != 0:
            out = vadd(out, vscale(c, b))
    return out


def sparse_rank(columns) -> int:
    """Rank of a sparse matrix given as columns {row_key: Fraction}.

    Fraction-free: each column is scaled to content-free integers (rank is
    scale invariant) and eliminated by integer cross-multiplication with
    content stripping, so no gcd-heavy Fraction arithmetic runs in the loop.
    """
    from math import gcd, lcm

    def to_int(col):
        den = 1
        for v in col.values():
            den = lcm(den, v.denominator)
        out = {k: int(v * den) for k, v in col.items() if v != 0}
        g = 0
        for v in out.values():
            g = gcd(g, v)
        if g > 1:
            out = {k: v // g for k, v in out.items()}
        return out

    pivots = {}   # pivot row key -> integer column dict
    rank = 0
    for col in columns:
        cur = to_int(col)
        while cur:
            key = min(cur)
            piv = pivots.get(key)
            if piv is None:
                pivots[key] = cur
                rank += 1
                break
            a, b = piv[key], cur[key]
            nxt = {}
            for k, v in cur.items():
                nxt[k] = a * v
            for k, v in piv.items():
                nxt[k] = nxt.get(k, 0) - b * v
            cur = {k: v for k, v in nxt.items() if v != 0}
            if cur:
                g = 0
                for v in cur.values():
                    g = gcd(g, v)
                if g > 1:
                    cur = {k: v // g for k, v in cur.items()}
    return rank


# ---------------------------------------------------------------------------
# Exact linear feasibility via Fourier-Motzkin elimination.
# ---------------------------------------------------------------------------

def _normalize_row(coeffs, rhs):
    for c in coeffs:
        if c != 0:
            scale = ONE / abs(c)
            return tuple(x * scale for x in coeffs), rhs * scale
    return tuple(coeffs), rhs


def _fm_solve(rows, d):
    """Solve {c . t > r} strictly by eliminating the last variable.

    Returns a witness list of length d, or raises Infeasible.
    """
    # Constant rows decide feasibility immediately.
    kept = []
    seen = set()
    for coeffs, rhs in rows:
        if all(c == 0 for c in coeffs):
            if rhs >= 0:
                raise Infeasible("contradictory constant constraint")
            continue
        key = _normalize_row(coeffs, rhs)
        if key in seen:
            continue
        seen.add(key)
        kept.append((list(key[0]), key[1]))
    if d == 0:
        return []
    lows, highs, flats = [], [], []
    for coeffs, rhs in kept:
        a = coeffs[d - 1]
        rest = coeffs[: d - 1]
        if a > 0:
            lows.append((rest, rhs, a))
        elif a < 0:
            highs.append((rest, rhs, a))
        else:
            flats.append((rest, rhs))
    reduced = list(flats)
    for lc, lr, a in lows:
        for hc, hr, b in highs:
            # t_d > (lr - lc.t')/a and t_d < (hr - hc.t')/b with a>0>b
            coeffs = [a * hc[i] - b * lc[i] for i in range(d - 1)]
            reduced.append((coeffs, a * hr - b * lr))
    tail = _fm_solve(reduced, d - 1)
    lo, hi = None, None
    for lc, lr, a in lows:
        bound = (lr - dot(lc, tail)) / a
        if lo is None or bound > lo:
            lo = bound
    for hc, hr, b in highs:
        bound = (hr - dot(hc, tail)) / b
        if hi is None or bound < hi:
            hi = bound
    if lo is None and hi is None:
        t = ZERO
    elif lo is None:
        t = hi - 1
    elif hi is None:
        t = lo + 1
    else:
        if not lo < hi:
            raise Infeasible("empty interval after elimination")
        t = (lo + hi) / 2
    return tail + [t]


def linear_feasibility(equalities, strict_inequalities, dim: int):
    """Exact point satisfying every a.x = b and every c.x > r, or Infeasible.

    Equalities are substituted out by elimination first, then the strict
    system is resolved by Fourier-Motzkin; the returned witness satisfies
    every constraint exactly (no heuristics, no rounding).
    """
    for a, _ in list(equalities) + list(strict_inequalities):
        if len(a) != dim:
            raise ValueError("constraint dimension mismatch")
    if equalities:
        A = [list(a) for a, _ in equalities]
        b = [rat(s) for _, s in equalities]
        try:
            x0, hom = solve_affine(A, b)
        except Infeasible:
            raise Infeasible("equality system inconsistent")
    else:
        x0, hom = zeros(dim), [unit(dim, i) for i in range(dim)]
    # Substitute x = x0 + N t into the strict inequalities.
    rows = []
    for c, r in strict_inequalities:
        coeffs = [dot(c, n) for n in hom]
        rows.append((coeffs, rat(r) - dot(c, x0)))
    t = _fm_solve(rows, len(hom))
    x = list(x0)
    for ti, n in zip(t, hom):
        if ti != 0:
            x = vadd(x, vscale(ti, n))
    for a, b_ in equalities:
        assert dot(a, x) == rat(b_)
    for c, r in strict_inequalities:
        if not dot(c, x) > rat(r):
            raise AssertionError("Fourier-Motzkin witness failed substitution check")
    return x
