"""Finite-dimensional Lie algebras over exact rationals via structure constants.

A LieAlgebra stores the table c[i][j] = [e_i, e_j] sparsely (dict of
coefficients per basis pair).  Antisymmetry and the Jacobi identity are
certified on every basis triple at construction; the Killing form is the
trace form of the adjoint representation, computed exactly.
"""

from __future__ import annotations

from fractions import Fraction

from . import exact
from .exact import ONE, ZERO, Echelon, rat


class JacobiViolation(Exception):
    """The Jacobi identity fails; carries a witness basis triple."""

    def __init__(self, triple, value):
        self.triple = triple
        self.value = value
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


class NotClosed(Exception):
    """A subspace is not closed under the bracket; carries a witness pair."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__("subspace not closed under bracket")


def _sp_add(acc: dict, other: dict, factor=ONE):
    for k, v in other.items():
        new = acc.get(k, ZERO) + factor * v
        if new == 0:
            acc.pop(k, None)
        else:
            acc[k] = new
    return acc


class LieAlgebra:
    """Lie algebra over Q given by structure constants on a labelled basis.

    `structure` maps ordered pairs (i, j) with i < j to sparse vectors
    {k: coefficient} for [e_i, e_j]; the antisymmetric completion is
    implicit.  Construction certifies Jacobi on all basis triples unless
    `validate=False` (only used internally after an equivalent check).
    """

    def __init__(self, dim: int, structure: dict, basis_labels=None, validate: bool = True):
        self.dim = dim
        self.basis_labels = list(basis_labels) if basis_labels else [f"e{i+1}" for i in range(dim)]
        if len(self.basis_labels) != dim:
            raise ValueError("label count must equal dim")
        self._table = {}
        for (i, j), entry in structure.items():
            if i == j:
                if any(v != 0 for v in entry.values()):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            key = (i, j) if i < j else (j, i)
            vals = {k: rat(v) for k, v in entry.items() if v != 0}
            if i > j:
                vals = {k: -v for k, v in vals.items()}
            if key in self._table and self._table[key] != vals:
                raise ValueError(f"conflicting structure constants for pair {key}")
            if vals:
                self._table[key] = vals
        self._gram = None
        self._gram_rank = None
        if validate:
            self.check_jacobi()

    # -- brackets ----------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        entry = self._table.get((j, i), {})
        return {k: -v for k, v in entry.items()}

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        acc: dict = {}
        for i, xi in x.items():
            for j, yj in y.items():
                if i == j:
                    continue
                entry = self.bracket_basis(i, j)
                if entry:
                    _sp_add(acc, entry, xi * yj)
        return acc

    def bracket(self, X, Y) -> list:
        """[X, Y] for dense coordinate vectors X, Y."""
        if len(X) != self.dim or len(Y) != self.dim:
            raise ValueError("dimension mismatch in bracket")
        xs = {i: v for i, v in enumerate(X) if v != 0}
        ys = {j: v for j, v in enumerate(Y) if v != 0}
        acc = self.bracket_sparse(xs, ys)
        out = exact.zeros(self.dim)
        for k, v in acc.items():
            out[k] = v
        return out

    def check_jacobi(self):
        """Certify [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0 on all triples."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                cij = self._table.get((i, j))
                for k in range(j + 1, self.dim):
                    acc: dict = {}
                    if cij:
                        for l, v in cij.items():
                            _sp_add(acc, self.bracket_basis(l, k), v)
                    cjk = self._table.get((j, k))
                    if cjk:
                        for l, v in cjk.items():
                            _sp_add(acc, self.bracket_basis(l, i), v)
                    cik = self._table.get((i, k))
                    if cik:
                        for l, v in cik.items():
                            # [e_k, e_i] = -c[i][k]
                            _sp_add(acc, self.bracket_basis(l, j), -v)
                    if acc:
                        raise JacobiViolation((i, j, k), acc)

    # -- Killing form ------------------------------------------------------

    def _ad_rows(self, i: int) -> dict:
        """Sparse description of ad(e_i): maps j -> {k: coeff of e_k in [e_i, e_j]}."""
        rows = {}
        for j in range(self.dim):
            entry = self.bracket_basis(i, j)
            if entry:
                rows[j] = entry
        return rows

    def killing_gram(self) -> list:
        """Gram matrix G[i][j] = trace(ad e_i . ad e_j), cached."""
        if self._gram is None:
            ads = [self._ad_rows(i) for i in range(self.dim)]
            G = [[ZERO] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                for j in range(i, self.dim):
                    s = ZERO
                    for k, row in ads[j].items():
                        adi = ads[i]
                        for l, v in row.items():
                            back = adi.get(l)
                            if back:
                                w = back.get(k)
                                if w:
                                    s += v * w
                    G[i][j] = s
                    G[j][i] = s
            self._gram = G
        return self._gram

    def killing_form(self, X, Y) -> Fraction:
        G = self.killing_gram()
        s = ZERO
        for i, xi in enumerate(X):
            if xi == 0:
                continue
            row = G[i]
            for j, yj in enumerate(Y):
                if yj != 0:
                    s += xi * row[j] * yj
        return s

    def killing_dual(self, psi) -> list:
        """The vector Z with kappa(Z, Y) = psi(Y) for all Y; exact round-trip.

        psi is given by its values on the basis.  Raises DegenerateForm when
        the algebra is not semisimple (singular Killing form).
        """
        G = self.killing_gram()
        if self._gram_rank is None:
            self._gram_rank = exact.rank(G)
        if self._gram_rank < self.dim:
            raise exact.DegenerateForm("Killing form is degenerate; algebra not semisimple")
        x, _ = exact.solve_affine(G, list(psi))
        return x

    def ad_matrix(self, X) -> list:
        """Dense matrix of ad(X) acting on coordinates."""
        cols = [self.bracket(X, exact.unit(self.dim, j)) for j in range(self.dim)]
        return exact.transpose(cols)

    def is_ad_nilpotent(self, X) -> bool:
        """True iff ad(X) is nilpotent, decided by iterated image spans."""
        current = [exact.unit(self.dim, i) for i in range(self.dim)]
        for _ in range(self.dim + 1):
            nxt = []
            ech = Echelon(self.dim)
            for v in current:
                w = self.bracket(X, v)
                if not exact.is_zero_vec(w) and ech.add(w):
                    nxt.append(w)
            if not nxt:
                return True
            if len(nxt) == len(current):
                return False
            current = nxt
        return False


class Subspace:
    """Subspace of a LieAlgebra's coordinate space, with an explicit basis."""

    def __init__(self, parent: LieAlgebra, basis, role: str = ""):
        self.parent = parent
        self.role = role
        self._ech = Echelon(parent.dim)
        self.basis = []
        for v in basis:
            if self._ech.add(v):
                self.basis.append(list(v))
            else:
                raise ValueError("subspace basis is linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return self._ech.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v):
        return self._ech.coordinates(v)

    def intersect(self, other: "Subspace") -> "Subspace":
        inter = exact.intersect_spans(self.basis, other.basis, self.parent.dim)
        return Subspace(self.parent, inter, role=f"({self.role})∩({other.role})")

    def sum_with(self, other: "Subspace") -> "Subspace":
        ech = Echelon(self.parent.dim)
        basis = []
        for v in self.basis + other.basis:
            if ech.add(v):
                basis.append(v)
        return Subspace(self.parent, basis, role=f"({self.role})+({other.role})")


def is_ideal(S: Subspace, ambient: Subspace, bracket=None):
    """Decide [ambient, S] ⊆ S; returns (True, None) or (False, witness_pair)."""
    if S.parent is not ambient.parent:
        raise ValueError("subspaces must share a parent algebra")
    br = bracket if bracket is not None else S.parent.bracket
    for a in ambient.basis:
        for s in S.basis:
            w = br(a, s)
            if not S.contains(w):
                return False, (a, s)
    return True, None


def derived_series(S: Subspace, bracket=None):
    """Derived series of S under the given bracket.

    Returns (chain, solvable) where chain is the list of subspaces
    D^0 = S, D^{i+1} = [D^i, D^i], stopping at stabilization; solvable
    iff the chain terminates at {0}.  Raises NotClosed (with a witness
    pair) when S is not a subalgebra for the given bracket.
    """
    algebra = S.parent
    br = bracket if bracket is not None else algebra.bracket
    for i, a in enumerate(S.basis):
        for b in S.basis[i + 1:]:
            w = br(a, b)
            if not S.contains(w):
                raise NotClosed((a, b))
    chain = [S]
    current = S
    while True:
        ech = Echelon(algebra.dim)
        basis = []
        for i, a in enumerate(current.basis):
            for b in current.basis[i + 1:]:
                w = br(a, b)
                if not exact.is_zero_vec(w) and ech.add(w):
                    basis.append(w)
        nxt = Subspace(algebra, basis, role=f"D({current.role})")
        if nxt.dim == current.dim:
            return chain, nxt.dim == 0
        chain.append(nxt)
        if nxt.dim == 0:
            return chain, True
        current = nxt
