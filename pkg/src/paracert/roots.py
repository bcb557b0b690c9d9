"""Compatible restricted root systems: joint ad-eigenspace decomposition,
positivity, simplicity, reflections, and the Killing inner product on the
dual of the split Cartan.

Covectors on the split Cartan are stored as tuples of exact values against
the supplied Cartan basis.  Eigenvalues are found over Q only (minimal
polynomial plus rational-root extraction); anything irrational aborts with
a diagnostic instead of approximating.
"""

from __future__ import annotations

from fractions import Fraction

from . import exact
from .exact import ONE, ZERO, Echelon
from .lie import LieAlgebra, Subspace


class NotSimultaneouslyDiagonalizable(Exception):
    """ad of the witness Cartan element is not rationally diagonalizable."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__("ad(H) not simultaneously diagonalizable over Q")


class IsotropicRoot(Exception):
    """Reflection requested in a covector with kappa(alpha, alpha) = 0."""


class NotSimple(Exception):
    """The root system decomposes into orthogonal components."""


# -- small exact polynomial helpers (coefficients low to high) --------------

def _ptrim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _pmul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b != 0:
                out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p, q):
    p = list(p)
    out = [ZERO] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and _ptrim(p):
        p = _ptrim(p)
        if len(p) < len(q):
            break
        f = p[-1] / q[-1]
        shift = len(p) - len(q)
        out[shift] = f
        for i, b in enumerate(q):
            p[shift + i] -= f * b
        p = p[:-1]
    return _ptrim(out), _ptrim(p)


def _pgcd(p, q):
    p, q = _ptrim(list(p)), _ptrim(list(q))
    while q:
        _, r = _pdivmod(p, q)
        p, q = q, r
    if p:
        lead = p[-1]
        p = [a / lead for a in p]
    return p


def _plcm(p, q):
    if not p:
        return list(q)
    if not q:
        return list(p)
    g = _pgcd(p, q)
    quo, rem = _pdivmod(_pmul(p, q), g)
    assert not rem
    lead = quo[-1]
    return [a / lead for a in quo]


def _peval(p, x):
    acc = ZERO
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(p):
    """All rational roots of p with multiplicity, or None when a nonconstant
    factor without rational roots remains."""
    p = _ptrim(list(p))
    if len(p) <= 1:
        return []
    roots = []
    while len(p) > 1 and p[0] == 0:
        roots.append(ZERO)
        p = p[1:]
    while len(p) > 1:
        from math import lcm
        den = 1
        for a in p:
            den = lcm(den, a.denominator)
        ip = [int(a * den) for a in p]
        found = None
        for qd in _divisors(ip[-1]):
            for pd in _divisors(ip[0]) if ip[0] != 0 else [0]:
                for cand in (Fraction(pd, qd), Fraction(-pd, qd)):
                    if _peval(p, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        p, rem = _pdivmod(p, [-found, ONE])
        assert not rem
    return roots


def _min_poly(M):
    """Minimal polynomial of the square matrix M (monic, low-to-high)."""
    n = len(M)
    poly = []
    for probe_idx in range(n):
        v = exact.unit(n, probe_idx)
        if poly and exact.is_zero_vec(_apply_poly(M, poly, v)):
            continue
        seq = [v]
        ech = Echelon(n)
        ech.add(v)
        solver_vectors = [v]
        while True:
            w = exact.mat_vec(M, seq[-1])
            if ech.add(w):
                seq.append(w)
                solver_vectors.append(w)
                continue
            A = exact.transpose(solver_vectors)
            x, _ = exact.solve_affine(A, w)
            ann = [-c for c in x] + [ONE]
            poly = _plcm(poly, ann) if poly else ann
            break
    return poly if poly else [ZERO, ONE]


def _apply_poly(M, p, v):
    acc = exact.zeros(len(v))
    power = list(v)
    for a in p:
        if a != 0:
            acc = exact.vadd(acc, exact.vscale(a, power))
        power = exact.mat_vec(M, power)
    return acc


def rational_eigenvalues(M):
    """Distinct rational eigenvalues when M is diagonalizable over Q, else None."""
    p = _min_poly(M)
    roots = rational_roots(p)
    if roots is None or len(roots) != len(p) - 1:
        return None
    if len(set(roots)) != len(roots):
        return None  # minimal polynomial not squarefree: not diagonalizable
    return sorted(set(roots))


# ---------------------------------------------------------------------------


class RestrictedRootSystem:
    """Exact simultaneous eigenspace decomposition under a split Cartan.

    Fields follow the standard picture: `roots` are nonzero joint-eigenvalue
    covectors (tuples of values on the Cartan basis), `zero_space` is the
    centralizer of the Cartan, `positives` the eps-lexicographically positive
    roots and `simples` those positives that are not sums of two positives.
    """

    def __init__(self, algebra, cartan_basis, theta, root_spaces, zero_space,
                 eps_frame, eps_covectors, eps_labels):
        self.algebra = algebra
        self.cartan = Subspace(algebra, cartan_basis, role="a")
        self.cartan_basis = [list(v) for v in cartan_basis]
        self.theta = theta
        self.root_spaces = root_spaces
        self.zero_space = zero_space
        self.eps_frame = eps_frame          # frame vectors in Cartan coordinates
        self.eps_covectors = eps_covectors  # eps_l as covectors on the Cartan basis
        self.eps_labels = eps_labels
        self._a_gram = None
        self._dual_cache = {}
        self._simple_coeff_cache = {}

        roots_all = list(root_spaces.keys())
        pos = [nu for nu in roots_all if self.is_positive(nu)]
        self.positives = sorted(pos, key=self._order_key)
        self.negatives = sorted([nu for nu in roots_all if not self.is_positive(nu)],
                                key=self._order_key)
        self.roots = self.positives + self.negatives
        self.simples = self._find_simples()

    # -- covector plumbing ---------------------------------------------------

    def rank(self) -> int:
        return len(self.cartan_basis)

    def eps_coords(self, nu) -> tuple:
        return tuple(exact.dot(list(nu), f) for f in self.eps_frame)

    def _order_key(self, nu):
        # canonical order: group by first supporting eps index, then
        # ascending lexicographic on the eps tuple (for sl_m this is the
        # familiar (i, j) order on eps_i - eps_j)
        eps = self.eps_coords(nu)
        first = next((k for k, c in enumerate(eps) if c != 0), len(eps))
        return (first, eps)

    def is_positive(self, nu) -> bool:
        for c in self.eps_coords(nu):
            if c != 0:
                return c > 0
        return False

    def render(self, nu) -> str:
        parts = []
        for c, lab in zip(self.eps_coords(nu), self.eps_labels):
            if c == 0:
                continue
            if c == 1:
                term = lab
            elif c == -1:
                term = f"-{lab}"
            else:
                term = f"{c}{lab}"
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts) if parts else "0"

    def covector_from_eps(self, coeffs) -> tuple:
        out = [ZERO] * self.rank()
        for c, cov in zip(coeffs, self.eps_covectors):
            c = exact.rat(c)
            if c != 0:
                out = [a + c * b for a, b in zip(out, cov)]
        return tuple(out)

    def a_coords(self, v):
        """Cartan-basis coordinates of a vector lying in the Cartan."""
        return self.cartan.coordinates(v)

    def evaluate(self, nu, H_a_coords) -> Fraction:
        return exact.dot(list(nu), list(H_a_coords))

    # -- Killing machinery on the Cartan -------------------------------------

    def a_gram(self):
        if self._a_gram is None:
            self._a_gram = [
                [self.algebra.killing_form(x, y) for y in self.cartan_basis]
                for x in self.cartan_basis
            ]
        return self._a_gram

    def dual_a(self, nu):
        """nu^kappa as Cartan-basis coordinates."""
        key = tuple(nu)
        if key not in self._dual_cache:
            x, _ = exact.solve_affine(self.a_gram(), list(nu))
            self._dual_cache[key] = x
        return list(self._dual_cache[key])

    def dual(self, nu):
        """nu^kappa as a full algebra coordinate vector."""
        x = self.dual_a(nu)
        out = exact.zeros(self.algebra.dim)
        for c, b in zip(x, self.cartan_basis):
            if c != 0:
                out = exact.vadd(out, exact.vscale(c, b))
        return out

    def inner(self, nu1, nu2) -> Fraction:
        return exact.dot(list(nu1), self.dual_a(nu2))

    def reflect(self, alpha, nu) -> tuple:
        aa = self.inner(alpha, alpha)
        if aa == 0:
            raise IsotropicRoot("reflection in an isotropic covector")
        f = 2 * self.inner(alpha, nu) / aa
        return tuple(n - f * a for n, a in zip(nu, alpha))

    # -- structure ------------------------------------------------------------

    def root_space(self, nu) -> Subspace:
        return self.root_spaces[tuple(nu)]

    def is_root(self, nu) -> bool:
        return tuple(nu) in self.root_spaces

    def _find_simples(self):
        pos_set = set(self.positives)
        simples = []
        for alpha in self.positives:
            decomposable = False
            for beta in self.positives:
                rem = tuple(a - b for a, b in zip(alpha, beta))
                if rem != tuple([ZERO] * self.rank()) and rem in pos_set:
                    decomposable = True
                    break
            if not decomposable:
                simples.append(alpha)
        return simples

    def simple_coefficients(self, nu):
        """Expansion of nu over the simple roots (unique on span of Delta)."""
        key = tuple(nu)
        if key not in self._simple_coeff_cache:
            A = exact.transpose([list(s) for s in self.simples])
            x, _ = exact.solve_affine(A, list(nu))
            self._simple_coeff_cache[key] = x
        return list(self._simple_coeff_cache[key])

    def height(self, nu) -> Fraction:
        return sum(self.simple_coefficients(nu), ZERO)

    def highest_root(self) -> tuple:
        if not self.simples:
            raise NotSimple("no roots")
        # simplicity: the simple-root graph must be connected
        k = len(self.simples)
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in range(k):
                if j not in seen and self.inner(self.simples[i], self.simples[j]) != 0:
                    seen.add(j)
                    frontier.append(j)
        if len(seen) != k:
            raise NotSimple("root system decomposes")
        out = []
        for mu in self.positives:
            if all(not self.is_root(tuple(m + a for m, a in zip(mu, alpha)))
                   for alpha in self.simples):
                out.append(mu)
        if len(out) != 1:
            raise NotSimple(f"highest root not unique ({len(out)} candidates)")
        return out[0]

    def dimension_audit(self):
        total = self.zero_space.dim + sum(s.dim for s in self.root_spaces.values())
        return total == self.algebra.dim, total


def decompose(algebra: LieAlgebra, cartan_basis, theta,
              eps_frame=None, eps_covectors=None, eps_labels=None,
              preferred_bases=None) -> RestrictedRootSystem:
    """Exact restricted-root decomposition of `algebra` under `cartan_basis`.

    theta is the Cartan involution as a coordinate matrix; it must restrict
    to -id on the Cartan and exchange opposite root spaces (both certified).
    `preferred_bases` optionally pins the basis of named root spaces (given
    as eps-independent covector tuples) to specific spanning vectors.
    """
    dim = algebra.dim
    r = len(cartan_basis)
    for i in range(r):
        for j in range(i + 1, r):
            if not exact.is_zero_vec(algebra.bracket(cartan_basis[i], cartan_basis[j])):
                raise ValueError("Cartan basis is not abelian")

    blocks = [([exact.unit(dim, i) for i in range(dim)], ())]
    for H in cartan_basis:
        new_blocks = []
        for basis, tup in blocks:
            sub = Echelon(dim, basis)
            cols = []
            for b in basis:
                img = algebra.bracket(H, b)
                x = sub.coordinates(img)
                if x is None:
                    raise NotSimultaneouslyDiagonalizable(H)
                cols.append(x)
            M = exact.transpose(cols)
            eigs = rational_eigenvalues(M)
            if eigs is None:
                raise NotSimultaneouslyDiagonalizable(H)
            covered = 0
            for lam in eigs:
                Ml = [list(row) for row in M]
                for t in range(len(basis)):
                    Ml[t][t] -= lam
                ker = exact.kernel(Ml)
                if not ker:
                    continue
                vecs = []
                for kv in ker:
                    v = exact.zeros(dim)
                    for c, b in zip(kv, basis):
                        if c != 0:
                            v = exact.vadd(v, exact.vscale(c, b))
                    vecs.append(v)
                covered += len(vecs)
                new_blocks.append((vecs, tup + (lam,)))
            if covered != len(basis):
                raise NotSimultaneouslyDiagonalizable(H)
        blocks = new_blocks

    zero_tuple = tuple([ZERO] * r)
    zero_vecs = []
    root_spaces = {}
    for basis, tup in blocks:
        if tup == zero_tuple:
            zero_vecs.extend(basis)
        else:
            root_spaces.setdefault(tup, []).extend(basis)

    zero_space = Subspace(algebra, exact.span_basis(zero_vecs, dim), role="m+a")
    spaces = {}
    for nu, vecs in root_spaces.items():
        spaces[nu] = Subspace(algebra, exact.span_basis(vecs, dim), role="g_nu")

    if preferred_bases:
        for nu, vecs in preferred_bases.items():
            nu = tuple(exact.rat(c) for c in nu)
            if nu not in spaces:
                raise ValueError("preferred basis given for a non-root")
            candidate = Subspace(algebra, vecs, role="g_nu")
            if candidate.dim != spaces[nu].dim or not spaces[nu].contains_subspace(candidate):
                raise ValueError("preferred basis does not span the root space")
            spaces[nu] = candidate

    if eps_frame is None:
        eps_frame = [exact.unit(r, i) for i in range(r)]
        eps_covectors = [tuple(exact.unit(r, i)) for i in range(r)]
        eps_labels = [f"f{i+1}" for i in range(r)]

    system = RestrictedRootSystem(
        algebra, cartan_basis, theta, spaces, zero_space,
        eps_frame, eps_covectors, eps_labels,
    )

    ok, total = system.dimension_audit()
    if not ok:
        raise AssertionError(f"dimension audit failed: {total} != {dim}")
    for nu in system.roots:
        neg = tuple(-c for c in nu)
        if neg not in spaces:
            raise AssertionError("root set is not symmetric")
        if spaces[nu].dim != spaces[neg].dim:
            raise AssertionError("opposite root spaces differ in dimension")
    # theta certification: -id on the Cartan, g_nu -> g_{-nu}
    for H in cartan_basis:
        img = exact.mat_vec(theta, H)
        if not exact.is_zero_vec(exact.vadd(img, H)):
            raise AssertionError("theta does not restrict to -id on the Cartan")
    for nu in system.roots:
        neg = tuple(-c for c in nu)
        target = spaces[neg]
        for b in spaces[nu].basis:
            if not target.contains(exact.mat_vec(theta, b)):
                raise AssertionError("theta does not exchange opposite root spaces")
    # every positive root decomposes over the simples with nonnegative integers
    for nu in system.positives:
        coeffs = system.simple_coefficients(nu)
        for c in coeffs:
            if c < 0 or c.denominator != 1:
                raise AssertionError("positive root is not a nonnegative integer "
                                     "combination of simples")
    return system
