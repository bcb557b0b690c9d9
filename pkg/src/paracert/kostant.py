"""Chain complex Lambda^k p_+ (x) g for k <= 3: codifferential, differential,
Laplacian, homogeneity/weight bookkeeping, lowest-weight testing, Hodge
audit, and seed-candidate enumeration.

Chains are stored sparsely against the induced basis
{(Y_{i_1})_kappa ^ ... ^ (Y_{i_k})_kappa (x) e_j}, with the Y's drawn from
an ordered basis of p_+ adapted to the root decomposition and the e_j from
a root-adapted basis of g.  The g_- basis is chosen kappa-dual to the p_+
basis, so evaluating a chain on basis wedges of g_- is a coordinate lookup;
that one convention fixes every sign below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .exact import ONE, ZERO
from .parabolic import ParabolicGrading


class AuditFailure(Exception):
    """A Hodge-decomposition dimension identity failed (implementation bug)."""


class HypothesisNotMet(Exception):
    """Preconditions of the lowest-weight structure lemma do not apply."""


def _sort_with_sign(seq):
    lst = list(seq)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for i in range(len(lst) - 1):
        if lst[i] == lst[i + 1]:
            return None, 0
    return tuple(lst), sign


class ChainElement:
    """Sparse element of Lambda^k p_+ (x) g attached to a ChainComplex."""

    __slots__ = ("complex", "degree", "coeffs")

    def __init__(self, cx: "ChainComplex", degree: int, coeffs=None):
        self.complex = cx
        self.degree = degree
        self.coeffs = {}
        if coeffs:
            for key, val in coeffs.items():
                if val != 0:
                    self.coeffs[key] = val

    def copy(self):
        return ChainElement(self.complex, self.degree, dict(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def add_term(self, wedge, j, val):
        if val == 0:
            return
        key = (wedge, j)
        new = self.coeffs.get(key, ZERO) + val
        if new == 0:
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = new

    def __add__(self, other):
        out = self.copy()
        for (w, j), v in other.coeffs.items():
            out.add_term(w, j, v)
        return out

    def __sub__(self, other):
        out = self.copy()
        for (w, j), v in other.coeffs.items():
            out.add_term(w, j, -v)
        return out

    def scale(self, f):
        f = exact.rat(f)
        return ChainElement(self.complex, self.degree,
                            {k: f * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, ChainElement) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def weight(self):
        """Common a-weight of all terms, or None when mixed."""
        w = None
        for (wedge, j) in self.coeffs:
            cur = self.complex.key_weight(wedge, j)
            if w is None:
                w = cur
            elif w != cur:
                return None
        return w

    def homogeneity(self):
        """Common grading-element eigenvalue of all terms, or None when mixed."""
        h = None
        for (wedge, j) in self.coeffs:
            cur = self.complex.key_homogeneity(wedge, j)
            if h is None:
                h = cur
            elif h != cur:
                return None
        return h

    def render(self) -> list:
        cx = self.complex
        out = []
        for (wedge, j), v in sorted(self.coeffs.items()):
            slots = "^".join(cx.p_plus_labels[a] for a in wedge)
            out.append((slots, cx.adapted_labels[j], str(v)))
        return out

    def __repr__(self):
        return f"ChainElement(deg={self.degree}, terms={len(self.coeffs)})"


@dataclass
class Candidate:
    """Certified seed candidate emitted by the enumeration."""
    beta: tuple
    gamma: tuple
    zeta: tuple
    chain: ChainElement


@dataclass
class LemmaVerdict:
    ok: bool
    zeta_in_minus_positives: bool
    beta_simple: bool
    gamma_simple: bool


@dataclass
class HodgeBlockReport:
    degree: int
    homogeneity: int
    dim_block: int
    dim_im_d: int
    dim_ker_box: int
    dim_im_dstar: int
    dim_ker_d: int
    dim_ker_dstar: int


class ChainComplex:
    """Operator context for Lambda^k p_+ (x) g over a fixed parabolic grading."""

    def __init__(self, grading: ParabolicGrading):
        self.grading = grading
        self.system = grading.system
        self.algebra = grading.algebra
        sys = self.system
        dim = self.algebra.dim

        # ordered p_+ basis: root spaces of Delta^+(p_+) in canonical order
        self.p_roots = []          # root per p_+ basis slot
        self.p_plus_vectors = []
        self.p_plus_labels = []
        for nu in grading.delta_plus_p:
            space = sys.root_space(nu)
            for t, b in enumerate(space.basis):
                self.p_roots.append(nu)
                self.p_plus_vectors.append(b)
                tag = f"#{t+1}" if space.dim > 1 else ""
                self.p_plus_labels.append(f"Y[{sys.render(nu)}{tag}]")
        self.n_plus = len(self.p_plus_vectors)

        # kappa-dual basis of g_-: block-diagonal per opposite root pair
        self.g_minus_vectors = [None] * self.n_plus
        slot = 0
        for nu in grading.delta_plus_p:
            d = sys.root_space(nu).dim
            neg = tuple(-c for c in nu)
            wbasis = sys.root_space(neg).basis
            K = [[self.algebra.killing_form(self.p_plus_vectors[slot + a], w)
                  for w in wbasis] for a in range(d)]
            Kinv_cols = []
            for a in range(d):
                x, _ = exact.solve_affine(K, exact.unit(d, a))
                Kinv_cols.append(x)
            for a in range(d):
                v = exact.zeros(dim)
                for c, w in zip(Kinv_cols[a], wbasis):
                    if c != 0:
                        v = exact.vadd(v, exact.vscale(c, w))
                self.g_minus_vectors[slot + a] = v
            slot += d

        # adapted basis of g: [Y-segment | V-segment | g_0 root spaces | zero space]
        vectors = []
        info = []   # (weight tuple, grade, label)
        for a, v in enumerate(self.p_plus_vectors):
            vectors.append(v)
            nu = self.p_roots[a]
            info.append((nu, grading.root_grade[nu], self.p_plus_labels[a]))
        for a, v in enumerate(self.g_minus_vectors):
            nu = self.p_roots[a]
            neg = tuple(-c for c in nu)
            vectors.append(v)
            info.append((neg, -grading.root_grade[nu], f"V[{sys.render(neg)}#{a+1}]"))
        zero_weight = tuple([ZERO] * sys.rank())
        self.g0_root_indices = {}
        for nu in sys.roots:
            if grading.root_grade[nu] == 0:
                idxs = []
                for t, b in enumerate(sys.root_space(nu).basis):
                    idxs.append(len(vectors))
                    vectors.append(b)
                    info.append((nu, 0, f"g0[{sys.render(nu)}#{t+1}]"))
                self.g0_root_indices[nu] = idxs
        self.zero_indices = []
        for t, b in enumerate(sys.zero_space.basis):
            self.zero_indices.append(len(vectors))
            vectors.append(b)
            info.append((zero_weight, 0, f"m+a#{t+1}"))
        assert len(vectors) == dim
        self.adapted_vectors = vectors
        self.adapted_weights = [w for w, _, _ in info]
        self.adapted_grades = [g for _, g, _ in info]
        self.adapted_labels = [l for _, _, l in info]
        self.v_offset = self.n_plus

        T = exact.transpose(vectors)
        self._Tinv_rows, piv = exact._rref([row + exact.unit(dim, i)
                                            for i, row in enumerate(T)])
        assert len(piv) == dim
        self._Tinv = [row[dim:] for row in self._Tinv_rows]
        self._bracket_cache = {}
        self._lowering_indices = None

    # -- coordinate plumbing -------------------------------------------------

    def to_adapted(self, v) -> dict:
        """Sparse adapted coordinates of a native coordinate vector."""
        out = {}
        for i, row in enumerate(self._Tinv):
            s = ZERO
            for j, x in enumerate(v):
                if x != 0 and row[j] != 0:
                    s += row[j] * x
            if s != 0:
                out[i] = s
        return out

    def from_adapted(self, sparse: dict) -> list:
        out = exact.zeros(self.algebra.dim)
        for i, c in sparse.items():
            if c != 0:
                out = exact.vadd(out, exact.vscale(c, self.adapted_vectors[i]))
        return out

    def bracket_adapted(self, i: int, j: int) -> dict:
        """[adapted_i, adapted_j] in sparse adapted coordinates, cached."""
        if i == j:
            return {}
        if i > j:
            return {k: -v for k, v in self.bracket_adapted(j, i).items()}
        key = (i, j)
        hit = self._bracket_cache.get(key)
        if hit is None:
            w = self.algebra.bracket(self.adapted_vectors[i], self.adapted_vectors[j])
            hit = self.to_adapted(w)
            self._bracket_cache[key] = hit
        return hit

    def _bracket_sparse(self, x: dict, y: dict) -> dict:
        acc = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for k, v in self.bracket_adapted(i, j).items():
                    new = acc.get(k, ZERO) + xi * yj * v
                    if new == 0:
                        acc.pop(k, None)
                    else:
                        acc[k] = new
        return acc

    def key_weight(self, wedge, j) -> tuple:
        acc = list(self.adapted_weights[j])
        for a in wedge:
            nu = self.p_roots[a]
            acc = [x + y for x, y in zip(acc, nu)]
        return tuple(acc)

    def key_homogeneity(self, wedge, j) -> int:
        h = self.adapted_grades[j]
        for a in wedge:
            h += self.grading.root_grade[self.p_roots[a]]
        return h

    def zero(self, degree: int) -> ChainElement:
        return ChainElement(self, degree)

    def unit_chain(self, wedge, j) -> ChainElement:
        wedge, sign = _sort_with_sign(wedge)
        if wedge is None:
            return self.zero(0)
        c = ChainElement(self, len(wedge))
        c.add_term(wedge, j, exact.rat(sign))
        return c

    # -- operators -------------------------------------------------------------

    def codifferential(self, c: ChainElement) -> ChainElement:
        """Kostant codifferential: degree k -> k-1, two-sum formula."""
        if c.degree < 1:
            raise ValueError("codifferential needs degree >= 1")
        out = ChainElement(self, c.degree - 1)
        for (wedge, j), q in c.coeffs.items():
            k = len(wedge)
            for t in range(k):
                sign = -ONE if (t + 1) % 2 else ONE
                rest = wedge[:t] + wedge[t + 1:]
                br = self.bracket_adapted(wedge[t], j)
                for l, v in br.items():
                    out.add_term(rest, l, q * sign * v)
            for t in range(k):
                for s in range(t + 1, k):
                    sign = ONE if (t + s) % 2 == 0 else -ONE
                    rest = tuple(x for u, x in enumerate(wedge) if u not in (t, s))
                    br = self.bracket_adapted(wedge[t], wedge[s])
                    for l, v in br.items():
                        if l >= self.n_plus:
                            raise AssertionError("[p_+, p_+] escaped p_+")
                        new_wedge, s2 = _sort_with_sign((l,) + rest)
                        if new_wedge is None:
                            continue
                        out.add_term(new_wedge, j, q * sign * s2 * v)
        return out

    def evaluate(self, c: ChainElement, wedge) -> dict:
        """c evaluated on the dual-basis wedge V_{b_0} ^ ... (sparse g-vector)."""
        wedge, sign = _sort_with_sign(wedge)
        if wedge is None:
            return {}
        vals = self._evaluate_keyed(c, wedge)
        return {j: sign * v for j, v in vals.items()} if sign != 1 else vals

    def _evaluate_keyed(self, c: ChainElement, wedge):
        targets = {}
        for (w, j), v in c.coeffs.items():
            if w == wedge:
                targets[j] = v
        return targets

    def _vv_pairs_hitting(self, a: int) -> list:
        """Pairs (t, s) with a g_{-a}-component in [V_t, V_s], precomputed."""
        if not hasattr(self, "_vv_index"):
            index = {x: [] for x in range(self.n_plus)}
            for t in range(self.n_plus):
                for s in range(t + 1, self.n_plus):
                    br = self.bracket_adapted(self.v_offset + t, self.v_offset + s)
                    for l in br:
                        index[l - self.v_offset].append((t, s))
            self._vv_index = index
        return self._vv_index[a]

    def _differential_combos(self, c: ChainElement, k: int):
        combos = set()
        for (W, _) in c.coeffs:
            others = [x for x in range(self.n_plus) if x not in W]
            for x in others:
                combos.add(tuple(sorted(W + (x,))))
            for a in W:
                rest = tuple(y for y in W if y != a)
                for (t, s) in self._vv_pairs_hitting(a):
                    if t in rest or s in rest:
                        continue
                    combos.add(tuple(sorted(rest + (t, s))))
        return sorted(combos)

    def differential(self, c: ChainElement) -> ChainElement:
        """Chevalley-Eilenberg differential on g_- cochains: degree k -> k+1."""
        if c.degree > 2:
            raise ValueError("differential only defined up to degree 2 here")
        k = c.degree
        out = ChainElement(self, k + 1)
        for combo in self._differential_combos(c, k):
            acc = {}
            for t in range(k + 1):
                rest = combo[:t] + combo[t + 1:]
                val = self._evaluate_keyed(c, rest)
                if val:
                    sign = ONE if t % 2 == 0 else -ONE
                    br = self._bracket_sparse({self.v_offset + combo[t]: ONE}, val)
                    for l, v in br.items():
                        new = acc.get(l, ZERO) + sign * v
                        if new == 0:
                            acc.pop(l, None)
                        else:
                            acc[l] = new
            for t in range(k + 1):
                for s in range(t + 1, k + 1):
                    sign = ONE if (t + s) % 2 == 0 else -ONE
                    rest = tuple(x for u, x in enumerate(combo) if u not in (t, s))
                    br = self.bracket_adapted(self.v_offset + combo[t],
                                              self.v_offset + combo[s])
                    for l, bv in br.items():
                        if not (self.v_offset <= l < 2 * self.n_plus):
                            raise AssertionError("[g_-, g_-] escaped g_-")
                        a = l - self.v_offset
                        ext, s2 = _sort_with_sign((a,) + rest)
                        if ext is None:
                            continue
                        val = self._evaluate_keyed(c, ext)
                        for l2, v in val.items():
                            coef = sign * s2 * bv * v
                            new = acc.get(l2, ZERO) + coef
                            if new == 0:
                                acc.pop(l2, None)
                            else:
                                acc[l2] = new
            for l, v in acc.items():
                out.add_term(combo, l, v)
        return out

    def laplacian(self, c: ChainElement) -> ChainElement:
        """Kostant Laplacian codiff(diff(c)) + diff(codiff(c)) for 1 <= k <= 2."""
        if not 1 <= c.degree <= 2:
            raise ValueError("Laplacian defined for degrees 1 and 2")
        return self.codifferential(self.differential(c)) + \
            self.differential(self.codifferential(c))

    def g0_action(self, Z, c: ChainElement) -> ChainElement:
        """Derivation action of Z in g_0 on wedge slots and value slot."""
        z = self.to_adapted(Z) if not isinstance(Z, dict) else dict(Z)
        for idx in z:
            if self.adapted_grades[idx] != 0:
                raise ValueError("g0_action requires Z in g_0")
        out = ChainElement(self, c.degree)
        for (wedge, j), q in c.coeffs.items():
            for t in range(len(wedge)):
                br = self._bracket_sparse(z, {wedge[t]: ONE})
                for l, v in br.items():
                    if l >= self.n_plus:
                        raise AssertionError("[g_0, p_+] escaped p_+")
                    seq = list(wedge)
                    seq[t] = l
                    new_wedge, s2 = _sort_with_sign(seq)
                    if new_wedge is None:
                        continue
                    out.add_term(new_wedge, j, q * s2 * v)
            br = self._bracket_sparse(z, {j: ONE})
            for l, v in br.items():
                out.add_term(wedge, l, q * v)
        return out

    def lowering_indices(self) -> list:
        """Adapted indices of all negative-g_0-root basis vectors."""
        if self._lowering_indices is None:
            idxs = []
            for nu, lst in sorted(self.g0_root_indices.items(),
                                  key=lambda kv: self.system._order_key(kv[0])):
                if not self.system.is_positive(nu):
                    idxs.extend(lst)
            self._lowering_indices = idxs
        return self._lowering_indices

    def is_lowest_weight(self, c: ChainElement) -> bool:
        """Annihilation by every root-space basis vector of every negative
        g_0-root (the lowering operators available in the restricted setting)."""
        if c.is_zero():
            return True
        if c.weight() is None:
            raise ValueError("chain is not weight-homogeneous")
        for idx in self.lowering_indices():
            if not self.g0_action({idx: ONE}, c).is_zero():
                return False
        return True

    # -- blocks and audit --------------------------------------------------------

    def block_keys(self, degree: int, homogeneity=None) -> list:
        keys = []
        for wedge in itertools.combinations(range(self.n_plus), degree):
            for j in range(self.algebra.dim):
                if homogeneity is None or self.key_homogeneity(wedge, j) == homogeneity:
                    keys.append((wedge, j))
        return keys

    def homogeneities(self, degree: int) -> list:
        vals = set()
        for wedge in itertools.combinations(range(self.n_plus), degree):
            base = sum(self.grading.root_grade[self.p_roots[a]] for a in wedge)
            for g in set(self.adapted_grades):
                vals.add(base + g)
        return sorted(vals)

    def _operator_matrix(self, op, src_keys, dst_keys):
        index = {k: i for i, k in enumerate(dst_keys)}
        cols = []
        for (wedge, j) in src_keys:
            img = op(self.unit_chain(wedge, j))
            col = exact.zeros(len(dst_keys))
            for key, v in img.coeffs.items():
                if key not in index:
                    raise AuditFailure(f"operator left the expected block at {key}")
                col[index[key]] = v
            cols.append(col)
        return exact.transpose(cols) if cols else []

    def _keys_by_weight(self, degree: int, homogeneity: int) -> dict:
        out = {}
        for key in self.block_keys(degree, homogeneity):
            out.setdefault(self.key_weight(*key), []).append(key)
        return out

    def hodge_audit(self, degree: int, homogeneity=None):
        """Dimension report(s) certifying im(d) + ker(box) + im(d*) = block.

        With homogeneity None, audits every homogeneity block of the degree.
        All three operators preserve the a-weight as well as the homogeneity,
        so each block is audited weight-by-weight and the dimensions summed;
        a weight escaping its block raises AuditFailure immediately.
        """
        if degree not in (1, 2):
            raise ValueError("audit applies to degrees 1 and 2")
        if homogeneity is None:
            return [self.hodge_audit(degree, h) for h in self.homogeneities(degree)]
        blk_w = self._keys_by_weight(degree, homogeneity)
        below_w = self._keys_by_weight(degree - 1, homogeneity)
        above_w = self._keys_by_weight(degree + 1, homogeneity)
        dim_block = sum(len(v) for v in blk_w.values())
        rank_d = rank_dstar = ker_box = ker_d = ker_dstar = 0
        weights = set(blk_w) | set(below_w) | set(above_w)

        def image_columns(op, src_keys, dst_degree, w):
            cols = []
            for (wedge, j) in src_keys:
                img = op(self.unit_chain(wedge, j))
                for key in img.coeffs:
                    if (len(key[0]) != dst_degree
                            or self.key_homogeneity(*key) != homogeneity
                            or self.key_weight(*key) != w):
                        raise AuditFailure(f"operator left its block at {key}")
                cols.append(img.coeffs)
            return cols

        for w in sorted(weights):
            blk = blk_w.get(w, [])
            below = below_w.get(w, [])
            above = above_w.get(w, [])
            n = len(blk)
            if below and blk:
                rank_d += exact.sparse_rank(
                    image_columns(self.differential, below, degree, w))
            if above and blk:
                rank_dstar += exact.sparse_rank(
                    image_columns(self.codifferential, above, degree, w))
            if not blk:
                continue
            ker_box += n - exact.sparse_rank(
                image_columns(self.laplacian, blk, degree, w))
            if above:
                ker_d += n - exact.sparse_rank(
                    image_columns(self.differential, blk, degree + 1, w))
            else:
                ker_d += n
            if below:
                ker_dstar += n - exact.sparse_rank(
                    image_columns(self.codifferential, blk, degree - 1, w))
            else:
                ker_dstar += n
        report = HodgeBlockReport(degree, homogeneity, dim_block, rank_d,
                                  ker_box, rank_dstar, ker_d, ker_dstar)
        if rank_d + ker_box + rank_dstar != dim_block:
            raise AuditFailure(report)
        if ker_d != rank_d + ker_box or ker_dstar != rank_dstar + ker_box:
            raise AuditFailure(report)
        return report

    # -- candidate enumeration ----------------------------------------------------

    def is_split(self) -> bool:
        return (self.system.zero_space.dim == self.system.rank()
                and all(s.dim == 1 for s in self.system.root_spaces.values()))

    def _certify_candidate(self, c: ChainElement) -> bool:
        h = c.homogeneity()
        if h is None or h <= 0:
            return False
        return self.laplacian(c).is_zero() and self.is_lowest_weight(c)

    def _p_index_of_root(self, nu) -> list:
        return [a for a in range(self.n_plus) if self.p_roots[a] == tuple(nu)]

    def adapted_indices_of_root(self, nu) -> list:
        nu = tuple(nu)
        out = []
        for j in range(self.algebra.dim):
            if self.adapted_grades[j] is not None and self.adapted_weights[j] == nu:
                out.append(j)
        return out

    def seed_support_units(self, beta, gamma, zeta):
        """Canonical list of unit chains spanning the (beta, gamma, zeta) support."""
        beta, gamma, zeta = tuple(beta), tuple(gamma), tuple(zeta)
        bi = self._p_index_of_root(beta)
        gi = self._p_index_of_root(gamma)
        zi = self.adapted_indices_of_root(zeta)
        units = []
        if beta == gamma:
            pairs = [(a, b) for a, b in itertools.combinations(bi, 2)]
        else:
            pairs = [(a, b) for a in bi for b in gi]
        for (a, b) in pairs:
            for t in zi:
                units.append(self.unit_chain((a, b), t))
        return [u for u in units if not u.is_zero()]

    def _candidates_for_triple(self, beta, gamma, zeta):
        units = self.seed_support_units(beta, gamma, zeta)
        if not units:
            return []
        images = []
        for u in units:
            img = [self.laplacian(u)]
            for idx in self.lowering_indices():
                img.append(self.g0_action({idx: ONE}, u))
            images.append(img)
        keys = []
        key_index = {}
        for img in images:
            for part in img:
                for key in part.coeffs:
                    if key not in key_index:
                        key_index[key] = len(keys)
                        keys.append(key)
        if not keys:
            kernel_coords = [exact.unit(len(units), i) for i in range(len(units))]
        else:
            rows = []
            n_ops = len(images[0])
            for op_i in range(n_ops):
                block_rows = [exact.zeros(len(units)) for _ in keys]
                for u_i, img in enumerate(images):
                    for key, v in img[op_i].coeffs.items():
                        block_rows[key_index[key]][u_i] = v
                rows.extend(block_rows)
            kernel_coords = exact.kernel(rows)
        out = []
        for x in kernel_coords:
            chain = self.zero(2)
            for c, u in zip(x, units):
                if c != 0:
                    chain = chain + u.scale(c)
            if not chain.is_zero() and self._certify_candidate(chain):
                out.append(Candidate(tuple(beta), tuple(gamma), tuple(zeta), chain))
        return out

    def enumerate_candidates(self, triples=None) -> list:
        """Certified lowest weight vectors of positive homogeneity in ker(box).

        Split systems are seeded by the Bott-Borel-Weil lowest-weight form
        over ordered pairs of distinct simples and then certified directly;
        non-split systems scan (beta, gamma, zeta) support triples and solve
        for the joint kernel of the Laplacian and all lowering operators.
        `triples` optionally restricts the non-split scan (used by the
        parallel driver).
        """
        sys = self.system
        out = []
        seen = set()

        def emit(beta, gamma, zeta, chain):
            key = self._normalize_key(beta, gamma, zeta, chain)
            if key not in seen:
                seen.add(key)
                out.append(Candidate(tuple(beta), tuple(gamma), tuple(zeta), chain))

        if self.is_split() and triples is None:
            mu = sys.highest_root()
            for ai in sys.simples:
                for aj in sys.simples:
                    if ai == aj:
                        continue
                    beta = ai
                    gamma = sys.reflect(ai, aj)
                    zeta = tuple(-c for c in sys.reflect(ai, sys.reflect(aj, mu)))
                    if beta not in set(self.grading.delta_plus_p):
                        continue
                    if gamma not in set(self.grading.delta_plus_p):
                        continue
                    if not sys.is_root(zeta):
                        continue
                    wsum = tuple(b + g + z for b, g, z in zip(beta, gamma, zeta))
                    if self.grading.homogeneity(wsum) <= 0:
                        continue
                    a = self._p_index_of_root(beta)[0]
                    b = self._p_index_of_root(gamma)[0]
                    t = self.adapted_indices_of_root(zeta)[0]
                    chain = self.unit_chain((a, b), t)
                    if not chain.is_zero() and self._certify_candidate(chain):
                        emit(beta, gamma, zeta, chain)
            return out

        if triples is None:
            triples = self.scan_triples()
        for (beta, gamma, zeta) in triples:
            for cand in self._candidates_for_triple(beta, gamma, zeta):
                emit(cand.beta, cand.gamma, cand.zeta, cand.chain)
        return out

    def scan_triples(self) -> list:
        """Canonically ordered support triples with positive homogeneity."""
        triples = []
        plus = self.grading.delta_plus_p
        for i, beta in enumerate(plus):
            for gamma in plus[i:]:
                for zeta in self.system.roots:
                    wsum = tuple(b + g + z for b, g, z in zip(beta, gamma, zeta))
                    if self.grading.homogeneity(wsum) > 0:
                        triples.append((beta, gamma, zeta))
        return triples

    def _normalize_key(self, beta, gamma, zeta, chain: ChainElement):
        items = sorted(chain.coeffs.items())
        lead = items[0][1]
        norm = tuple((k, str(v / lead)) for k, v in items)
        pair = tuple(sorted((tuple(beta), tuple(gamma))))
        return (pair, tuple(zeta), norm)

    def lemma_assume_check(self, beta, gamma, zeta, c: ChainElement) -> LemmaVerdict:
        """Structure check for lowest weight vectors with nonpositive value root.

        Preconditions (else HypothesisNotMet): zeta outside Delta^+(p_+) and
        beta - gamma outside Delta^+.  The verdict asserts zeta in -Delta^+
        and that beta or gamma is simple; a False verdict is a consistency
        violation worth reporting, not an input error.
        """
        sys = self.system
        beta, gamma, zeta = tuple(beta), tuple(gamma), tuple(zeta)
        if zeta in set(self.grading.delta_plus_p):
            raise HypothesisNotMet("zeta lies in Delta^+(p_+)")
        diff = tuple(b - g for b, g in zip(beta, gamma))
        if diff in set(sys.positives):
            raise HypothesisNotMet("beta - gamma is a positive root")
        neg = tuple(-z for z in zeta)
        zeta_neg = neg in set(sys.positives)
        beta_simple = beta in set(sys.simples)
        gamma_simple = gamma in set(sys.simples)
        return LemmaVerdict(zeta_neg and (beta_simple or gamma_simple),
                            zeta_neg, beta_simple, gamma_simple)
