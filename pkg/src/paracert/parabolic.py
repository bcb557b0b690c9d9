"""Parabolic gradings from crossed simple restricted roots: grading element,
graded components, the positive-part root set, the center/semisimple split
of the Cartan inside g_0, and the scaling-element predicate.
"""

from __future__ import annotations

from fractions import Fraction

from . import exact
from .exact import ONE, ZERO
from .lie import Subspace
from .roots import RestrictedRootSystem


class ParabolicGrading:
    """|k|-grading of a restricted-root-decomposed algebra.

    Built by `grade`; every structural invariant (bracket grading, Killing
    pairing, generation of p_+ by g_1 and of g_- by g_{-1}, integrality of
    root values on the grading element) is certified at construction.
    """

    def __init__(self, system: RestrictedRootSystem, crossed):
        self.system = system
        algebra = system.algebra
        self.algebra = algebra
        self.crossed = [tuple(c) for c in crossed]

        crossed_set = set(self.crossed)
        simple_set = set(system.simples)
        if not crossed_set:
            raise ValueError("at least one simple root must be crossed")
        if not crossed_set <= simple_set:
            raise ValueError("crossed roots must be simple")

        # E_gr: the unique Cartan element with value 1 on crossed simples, 0 else
        A = [list(s) for s in system.simples]
        b = [ONE if tuple(s) in crossed_set else ZERO for s in system.simples]
        x, hom = exact.solve_affine(A, b)
        if hom:
            raise ValueError("grading element is not unique; Cartan too large")
        self.E_gr_a = x                         # Cartan coordinates
        self.E_gr = self._from_a(x)             # algebra coordinates

        # root values on E_gr must be integers, bounded by the depth
        self.root_grade = {}
        for nu in system.roots:
            val = system.evaluate(nu, self.E_gr_a)
            if val.denominator != 1:
                raise AssertionError(f"non-integer grade {val} for a root")
            self.root_grade[nu] = int(val)
        self.depth = max(abs(v) for v in self.root_grade.values())
        if self.depth == 0:
            raise ValueError("crossing produced the trivial grading")

        self.delta_plus_p = [nu for nu in system.positives if self.root_grade[nu] > 0]
        if any(self.root_grade[nu] < 0 for nu in system.positives):
            raise AssertionError("compatibility failure: a positive root has "
                                 "negative grade")

        dim = algebra.dim
        comp_vectors = {i: [] for i in range(-self.depth, self.depth + 1)}
        comp_vectors[0].extend(system.zero_space.basis)
        for nu in system.roots:
            comp_vectors[self.root_grade[nu]].extend(system.root_space(nu).basis)
        self.components = {
            i: Subspace(algebra, vecs, role=f"g_{i}")
            for i, vecs in comp_vectors.items()
        }
        if sum(c.dim for c in self.components.values()) != dim:
            raise AssertionError("graded components do not exhaust the algebra")

        self.p_plus = self._span_range(1, self.depth, "p_+")
        self.g_minus = self._span_range(-self.depth, -1, "g_-")
        self.p = self._span_range(0, self.depth, "p")
        self.g0 = self.components[0]

        # z(g_0) ∩ a and its kappa-orthocomplement in a
        delta_g0 = [nu for nu in system.roots if self.root_grade[nu] == 0]
        rank = system.rank()
        rows = [list(nu) for nu in delta_g0]
        if rows:
            kern = exact.kernel(rows)
        else:
            kern = [exact.unit(rank, i) for i in range(rank)]
        self.z_g0_a_coords = kern
        Ga = system.a_gram()
        ortho_rows = [exact.mat_vec(Ga, z) for z in kern]
        self.g0ss_a_coords = exact.kernel(ortho_rows) if ortho_rows else \
            [exact.unit(rank, i) for i in range(rank)]
        self.z_g0_a = Subspace(algebra, [self._from_a(z) for z in kern], role="z(g0)∩a")
        self.g0ss_a = Subspace(
            algebra, [self._from_a(z) for z in self.g0ss_a_coords], role="g0ss∩a")
        if self.z_g0_a.dim + self.g0ss_a.dim != rank:
            raise AssertionError("Cartan does not split against z(g_0)")

        self._certify()

    # -- helpers ---------------------------------------------------------------

    def _from_a(self, a_coords):
        out = exact.zeros(self.algebra.dim)
        for c, b in zip(a_coords, self.system.cartan_basis):
            if c != 0:
                out = exact.vadd(out, exact.vscale(c, b))
        return out

    def _span_range(self, lo, hi, role):
        vecs = []
        for i in range(lo, hi + 1):
            if i != 0 and i in self.components:
                vecs.extend(self.components[i].basis)
            elif i == 0 and lo <= 0 <= hi:
                vecs.extend(self.components[0].basis)
        return Subspace(self.algebra, vecs, role=role)

    def grade_of_vector(self, v):
        """Grade of a vector supported in one component, else None."""
        for i, comp in self.components.items():
            if comp.contains(v):
                return i
        return None

    def _certify(self):
        algebra = self.algebra
        # [E_gr, X] = iX on every component basis vector
        for i, comp in self.components.items():
            for b in comp.basis:
                img = algebra.bracket(self.E_gr, b)
                if not exact.is_zero_vec(exact.vsub(img, exact.vscale(i, b))):
                    raise AssertionError(f"grading element fails on g_{i}")
        # bracket grading and Killing pairing, exhaustively on component bases
        items = sorted(self.components.items())
        for i, ci in items:
            for j, cj in items:
                if i > j:
                    continue
                target = self.components.get(i + j)
                for x in ci.basis:
                    for y in cj.basis:
                        w = algebra.bracket(x, y)
                        if exact.is_zero_vec(w):
                            continue
                        if target is None or not target.contains(w):
                            raise AssertionError(f"[g_{i}, g_{j}] escapes g_{i+j}")
                if i + j != 0:
                    for x in ci.basis:
                        for y in cj.basis:
                            if algebra.killing_form(x, y) != 0:
                                raise AssertionError(
                                    f"kappa(g_{i}, g_{j}) != 0 with i+j != 0")
        # p_+ is bracket-generated by g_1, g_- by g_{-1}
        for start, role in ((1, self.p_plus), (-1, self.g_minus)):
            gen = self.components[start]
            ech = exact.Echelon(algebra.dim, gen.basis)
            frontier = list(gen.basis)
            while frontier:
                new = []
                for f in frontier:
                    for g1 in self.components[start].basis:
                        w = algebra.bracket(g1, f)
                        if not exact.is_zero_vec(w) and ech.add(w):
                            new.append(w)
                frontier = new
            if ech.rank != role.dim:
                raise AssertionError("nilpotent part not generated by its "
                                     "first grading component")

    # -- operations --------------------------------------------------------------

    def is_scaling_element(self, Z) -> bool:
        """True iff Z lies in z(g_0) ∩ a and no positive-part root kills it."""
        if not self.z_g0_a.contains(Z):
            return False
        a = self.system.a_coords(Z)
        if a is None:
            return False
        return all(self.system.evaluate(nu, a) != 0 for nu in self.delta_plus_p)

    def homogeneity(self, weight_sum) -> Fraction:
        """Value of a covector on the grading element."""
        return self.system.evaluate(weight_sum, self.E_gr_a)


def grade(system: RestrictedRootSystem, crossed_simples) -> ParabolicGrading:
    """ParabolicGrading from a set of crossed simple restricted roots."""
    return ParabolicGrading(system, crossed_simples)
