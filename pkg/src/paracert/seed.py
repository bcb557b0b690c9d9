"""Seed certification: stabilizer algebra, the Kruglikov-The property, the
deformed algebra with its Jacobi certificate, and the harmonic-seed verdict
with solvability analysis.

Evaluation convention (shared with the chain complex): a wedge slot (Y)_kappa
pairs against g_- through kappa(Y, .), and a chain's coordinates against the
dual bases ARE its values on basis wedges.  Vectors of g evaluate through
their g_- projection (the g/p identification).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exact, lie
from .exact import ONE, ZERO
from .kostant import ChainComplex, ChainElement
from .lie import JacobiViolation, LieAlgebra, Subspace


@dataclass
class Seed:
    """Candidate curvature seed sum_k (eta_{beta,k})_k ^ (eta_{gamma,k})_k (x) eta_{zeta,k}."""
    beta: tuple
    gamma: tuple
    zeta: tuple
    omega: ChainElement
    terms: list = field(default_factory=list)
    name: str = ""

    def weight(self) -> tuple:
        return tuple(b + g + z for b, g, z in zip(self.beta, self.gamma, self.zeta))


def make_seed(cx: ChainComplex, beta, gamma, zeta, terms, name="") -> Seed:
    """Assemble a Seed from per-term root-space coordinates.

    Each term is (coeff, beta_coords, gamma_coords, zeta_coords) with the
    coordinate lists taken against the pinned bases of g_beta, g_gamma and
    g_zeta respectively.
    """
    beta, gamma, zeta = tuple(beta), tuple(gamma), tuple(zeta)
    bi = cx._p_index_of_root(beta)
    gi = cx._p_index_of_root(gamma)
    zi = cx.adapted_indices_of_root(zeta)
    omega = cx.zero(2)
    for (coeff, bc, gc, zc) in terms:
        coeff = exact.rat(coeff)
        if len(bc) != len(bi) or len(gc) != len(gi) or len(zc) != len(zi):
            raise ValueError("term coordinates do not match root space dimensions")
        for a, ca in zip(bi, bc):
            ca = exact.rat(ca)
            if ca == 0:
                continue
            for b, cb in zip(gi, gc):
                cb = exact.rat(cb)
                if cb == 0 or a == b:
                    continue
                for t, ct in zip(zi, zc):
                    ct = exact.rat(ct)
                    if ct == 0:
                        continue
                    wedge, sign = (a, b), 1
                    if a > b:
                        wedge, sign = (b, a), -1
                    omega.add_term(wedge, t, coeff * ca * cb * ct * sign)
    return Seed(beta, gamma, zeta, omega, terms=list(terms), name=name)


# ---------------------------------------------------------------------------


def stabilizer_adapted(cx: ChainComplex, omega: ChainElement) -> list:
    """Basis of k_Omega as sparse adapted-coordinate dicts.

    The action of g_0 on chains preserves weights, so the kernel splits
    over the g_0 weight blocks; solving per block keeps every basis vector
    supported in a single root space (or the centralizer block).
    """
    blocks = list(cx.g0_root_indices.values()) + [cx.zero_indices]
    out = []
    for block in blocks:
        if not block:
            continue
        images = [cx.g0_action({idx: ONE}, omega) for idx in block]
        keys = sorted({k for img in images for k in img.coeffs})
        if not keys:
            out.extend({idx: ONE} for idx in block)
            continue
        index = {k: i for i, k in enumerate(keys)}
        rows = [exact.zeros(len(block)) for _ in keys]
        for col, img in enumerate(images):
            for k, v in img.coeffs.items():
                rows[index[k]][col] = v
        for x in exact.kernel(rows):
            out.append({idx: c for idx, c in zip(block, x) if c != 0})
    return out


def stabilizer_algebra(cx: ChainComplex, omega: ChainElement) -> Subspace:
    """k_Omega: kernel of Z |-> Z . Omega on g_0."""
    vectors = [cx.from_adapted(d) for d in stabilizer_adapted(cx, omega)]
    return Subspace(cx.algebra, vectors, role="k_Omega")


def omega_pair_values(cx: ChainComplex, omega: ChainElement) -> dict:
    """Omega evaluated on dual-basis wedges: {(a, b): sparse g-vector}, a < b."""
    out = {}
    for (wedge, j), v in omega.coeffs.items():
        slot = out.setdefault(wedge, {})
        slot[j] = slot.get(j, ZERO) + v
    return out


def omega_eval(cx: ChainComplex, pair_values: dict, xa: dict, ya: dict) -> dict:
    """Omega(X ^ Y) for sparse adapted vectors, through their g_- projections."""
    lo, hi = cx.v_offset, 2 * cx.n_plus
    xs = {i - lo: v for i, v in xa.items() if lo <= i < hi}
    ys = {i - lo: v for i, v in ya.items() if lo <= i < hi}
    acc: dict = {}
    for a, va in xs.items():
        for b, vb in ys.items():
            if a == b:
                continue
            key, sign = ((a, b), ONE) if a < b else ((b, a), -ONE)
            vals = pair_values.get(key)
            if not vals:
                continue
            f = va * vb * sign
            for j, w in vals.items():
                new = acc.get(j, ZERO) + f * w
                if new == 0:
                    acc.pop(j, None)
                else:
                    acc[j] = new
    return acc


@dataclass
class OmegaMaps:
    image: Subspace            # im(Omega) inside g
    kernel_pairs: list         # basis of ker(Omega) in Lambda^2 g_- pair coords
    wedge_id_image: list       # spanning set of im(Omega ^ id), same coords


def omega_image_kernel(cx: ChainComplex, omega: ChainElement) -> OmegaMaps:
    """im(Omega), ker(Omega) and the image of the Omega ^ id map, all exact."""
    pair_values = omega_pair_values(cx, omega)
    n = cx.n_plus
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    pair_index = {p: i for i, p in enumerate(pairs)}
    dim = cx.algebra.dim
    image_vecs = []
    cols = []
    for p in pairs:
        vals = pair_values.get(p, {})
        col = exact.zeros(dim)
        for j, v in vals.items():
            col = exact.vadd(col, exact.vscale(v, cx.adapted_vectors[j]))
        cols.append(col)
        if not exact.is_zero_vec(col):
            image_vecs.append(col)
    image = Subspace(cx.algebra, exact.span_basis(image_vecs, dim), role="im(Omega)")
    kernel_pairs = exact.kernel(exact.transpose(cols)) if pairs else []

    wedge_id = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                form = {}
                for (x, y, z, sgn) in ((a, b, c, 1), (a, c, b, -1), (b, c, a, 1)):
                    vals = pair_values.get((x, y), {})
                    for j, v in vals.items():
                        # project Omega(Vx ^ Vy) to g_- and wedge with V_z
                        if cx.v_offset <= j < 2 * cx.n_plus:
                            u = j - cx.v_offset
                            if u == z:
                                continue
                            key, s2 = ((u, z), 1) if u < z else ((z, u), -1)
                            val = form.get(key, ZERO) + sgn * s2 * v
                            if val == 0:
                                form.pop(key, None)
                            else:
                                form[key] = val
                if form:
                    row = exact.zeros(len(pairs))
                    for key, v in form.items():
                        row[pair_index[key]] = v
                    wedge_id.append(row)
    wedge_id = exact.span_basis(wedge_id, len(pairs)) if pairs else []
    return OmegaMaps(image, kernel_pairs, wedge_id)


@dataclass
class KTVerdict:
    ok: bool
    image_in_g_minus_plus_k: bool
    wedge_id_in_kernel: bool
    witness: object = None


def check_kruglikov_the(cx: ChainComplex, omega: ChainElement,
                        stabilizer: Subspace = None,
                        maps: OmegaMaps = None) -> KTVerdict:
    """Decide im(Omega) ⊆ g_- + k_Omega and im(Omega ^ id) ⊆ ker(Omega)."""
    if stabilizer is None:
        stabilizer = stabilizer_algebra(cx, omega)
    if maps is None:
        maps = omega_image_kernel(cx, omega)
    target = cx.grading.g_minus.sum_with(stabilizer)
    incl1, witness = True, None
    for v in maps.image.basis:
        if not target.contains(v):
            incl1, witness = False, v
            break
    pair_values = omega_pair_values(cx, omega)
    incl2 = True
    n = cx.n_plus
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for row in maps.wedge_id_image:
        acc: dict = {}
        for coef, p in zip(row, pairs):
            if coef == 0:
                continue
            for j, v in pair_values.get(p, {}).items():
                new = acc.get(j, ZERO) + coef * v
                if new == 0:
                    acc.pop(j, None)
                else:
                    acc[j] = new
        if acc:
            incl2, witness = False, (witness or row)
            break
    return KTVerdict(incl1 and incl2, incl1, incl2, witness)


# ---------------------------------------------------------------------------


@dataclass
class DeformedAlgebra:
    """g_- + k_Omega carrying [X,Y] - Omega(X ^ Y), with certificates."""
    carrier: Subspace          # inside the ambient algebra
    structure: LieAlgebra      # in carrier coordinates, Jacobi-certified
    carrier_basis: list
    k_omega: Subspace
    f_carrier: Subspace        # f_Omega = g_- + im(Omega), carrier coordinates
    n_carrier: Subspace        # n_Omega = f_Omega ∩ k_Omega, carrier coordinates
    ambient_of: object         # carrier coords -> ambient vector
    deformed_bracket_ambient: object
    d_omega_zero: bool
    d_omega_witness: object = None
    omega: ChainElement = None


def _sp_combine(acc, other, factor):
    for k, v in other.items():
        new = acc.get(k, ZERO) + factor * v
        if new == 0:
            acc.pop(k, None)
        else:
            acc[k] = new
    return acc


def build_deformed_algebra(cx: ChainComplex, omega: ChainElement,
                           stabilizer: Subspace = None) -> DeformedAlgebra:
    """Structure constants of the deformed bracket on g_- + k_Omega.

    Jacobi is certified on all carrier triples at construction, and the
    trilinear obstruction map from the bracket-derivation proof is evaluated
    and certified zero on all basis triples as an independent cross-check.
    All bookkeeping runs in root-adapted coordinates, where the carrier
    basis is sparse.
    """
    algebra = cx.algebra
    if stabilizer is not None:
        adapted = [cx.to_adapted(v) for v in stabilizer.basis]
    else:
        adapted = stabilizer_adapted(cx, omega)
        stabilizer = Subspace(algebra, [cx.from_adapted(d) for d in adapted],
                              role="k_Omega")
    pair_values = omega_pair_values(cx, omega)
    n = cx.n_plus
    adapted = [{cx.v_offset + a: ONE} for a in range(n)] + adapted
    carrier_basis = [cx.from_adapted(d) for d in adapted]
    carrier = Subspace(algebra, carrier_basis, role="j_Omega")
    m = len(carrier_basis)

    # coordinate solver over adapted coordinate space
    carrier_ech = exact.Echelon(algebra.dim)
    for d in adapted:
        dense = exact.zeros(algebra.dim)
        for idx, c in d.items():
            dense[idx] = c
        if not carrier_ech.add(dense):
            raise ValueError("carrier basis degenerate")

    def omega_of(xa, ya):
        return omega_eval(cx, pair_values, xa, ya)

    def nat_ad(i, j):
        return cx._bracket_sparse(adapted[i], adapted[j])

    def deformed_ad(i, j):
        acc = dict(nat_ad(i, j))
        return _sp_combine(acc, omega_of(adapted[i], adapted[j]), -ONE)

    def deformed_ambient(X, Y):
        xa, ya = cx.to_adapted(X), cx.to_adapted(Y)
        acc = _sp_combine(cx._bracket_sparse(xa, ya), omega_of(xa, ya), -ONE)
        return cx.from_adapted(acc)

    nat_pairs = {}
    omg_pairs = {}
    table = {}
    for i in range(m):
        for j in range(i + 1, m):
            nat_pairs[(i, j)] = nat_ad(i, j)
            omg_pairs[(i, j)] = omega_of(adapted[i], adapted[j])
            d = dict(nat_pairs[(i, j)])
            _sp_combine(d, omg_pairs[(i, j)], -ONE)
            dense = exact.zeros(algebra.dim)
            for idx, c in d.items():
                dense[idx] = c
            coords = carrier_ech.coordinates(dense)
            if coords is None:
                raise ValueError("deformed bracket leaves the carrier; "
                                 "Kruglikov-The precondition violated")
            entry = {k: v for k, v in enumerate(coords) if v != 0}
            if entry:
                table[(i, j)] = entry
    structure = LieAlgebra(m, table,
                           basis_labels=[f"j{k+1}" for k in range(m)],
                           validate=True)

    # independent cross-check: the trilinear obstruction vanishes identically
    d_omega_zero, witness = True, None
    for i in range(m):
        ai = adapted[i]
        for j in range(i + 1, m):
            aj = adapted[j]
            oij = omg_pairs[(i, j)]
            nij = nat_pairs[(i, j)]
            for k in range(j + 1, m):
                ak = adapted[k]
                ojk = omg_pairs[(j, k)]
                oik = omg_pairs[(i, k)]
                acc = {}
                if ojk:
                    _sp_combine(acc, cx._bracket_sparse(ai, ojk), ONE)
                if oik:
                    _sp_combine(acc, cx._bracket_sparse(aj, oik), -ONE)
                if oij:
                    _sp_combine(acc, cx._bracket_sparse(ak, oij), ONE)
                _sp_combine(acc, omega_of(nij, ak), -ONE)
                _sp_combine(acc, omega_of(nat_pairs[(i, k)], aj), ONE)
                _sp_combine(acc, omega_of(nat_pairs[(j, k)], ai), -ONE)
                if acc:
                    d_omega_zero, witness = False, (i, j, k)
                    break
            if not d_omega_zero:
                break
        if not d_omega_zero:
            break

    maps = omega_image_kernel(cx, omega)
    f_coords = []
    for a in range(n):
        f_coords.append(exact.unit(m, a))
    for v in maps.image.basis:
        coords = carrier.coordinates(v)
        if coords is None:
            raise ValueError("f_Omega does not sit inside the carrier")
        f_coords.append(coords)
    f_carrier = Subspace(structure, exact.span_basis(f_coords, m), role="f_Omega")
    k_carrier = Subspace(structure,
                         [exact.unit(m, n + t) for t in range(m - n)],
                         role="k_Omega")
    n_carrier = f_carrier.intersect(k_carrier)

    def ambient_of(coords):
        out = exact.zeros(algebra.dim)
        for c, b in zip(coords, carrier_basis):
            if c != 0:
                out = exact.vadd(out, exact.vscale(c, b))
        return out

    return DeformedAlgebra(
        carrier=carrier, structure=structure, carrier_basis=carrier_basis,
        k_omega=stabilizer, f_carrier=f_carrier, n_carrier=n_carrier,
        ambient_of=ambient_of, deformed_bracket_ambient=deformed_ambient,
        d_omega_zero=d_omega_zero, d_omega_witness=witness,
        omega=omega)


def b_minus_subspace(cx: ChainComplex) -> Subspace:
    """The nilpotent algebra spanned by all negative restricted root spaces."""
    vecs = []
    sys = cx.system
    for nu in sys.roots:
        if not sys.is_positive(nu):
            vecs.extend(sys.root_space(nu).basis)
    return Subspace(cx.algebra, vecs, role="b_-")


@dataclass
class FOmegaReport:
    is_ideal: bool
    ideal_witness: object
    solvable: bool
    series_dims: list
    n_omega_dim: int
    image_in_b_minus: bool


def analyze_f_omega(cx: ChainComplex, deformed: DeformedAlgebra) -> FOmegaReport:
    """Certify: f_Omega is an ideal of j_Omega, solvable under the deformed
    bracket, and im(Omega) sits inside b_-."""
    structure = deformed.structure
    m = structure.dim
    ambient_all = Subspace(structure, [exact.unit(m, i) for i in range(m)],
                           role="j_Omega")
    ideal_ok, witness = lie.is_ideal(deformed.f_carrier, ambient_all)
    chain, solvable = lie.derived_series(deformed.f_carrier)
    bminus = b_minus_subspace(cx)
    img_ok = True
    for v in deformed.f_carrier.basis:
        amb = deformed.ambient_of(v)
        if not cx.grading.g_minus.contains(amb) and not bminus.contains(amb):
            img_ok = False
            break
    # the f_Omega carrier is g_- + im(Omega); checking im(Omega) directly:
    maps = omega_image_kernel(cx, deformed.omega)
    image_in_b = all(bminus.contains(v) for v in maps.image.basis) and img_ok
    return FOmegaReport(ideal_ok, witness, solvable,
                        [s.dim for s in chain], deformed.n_carrier.dim,
                        image_in_b)


@dataclass
class HarmonicVerdict:
    status: str               # "harmonic-seed" | "hypotheses-not-met" | "not-certified"
    in_kernel_positive: bool
    lowest_weight: bool
    zeta_nondegenerate: bool  # zeta not in {-beta, -gamma}
    kruglikov_the: KTVerdict
    image_in_b_minus: bool
    split_sums_admissible: object   # None off the split case
    consistency_violation: bool


def certify_harmonic_seed(cx: ChainComplex, seed: Seed) -> HarmonicVerdict:
    """Verdict tree for the harmonic-seed theorems.

    The direct route certifies Kruglikov-The plus im(Omega) ⊆ b_-; the
    lowest-weight route additionally reports zeta ∉ {-beta, -gamma} and, on
    split systems, that beta+gamma, beta+zeta, gamma+zeta are neither roots
    nor zero (the codifferential consequences).
    """
    omega = seed.omega
    box_zero = cx.laplacian(omega).is_zero()
    h = omega.homogeneity()
    in_kernel_positive = box_zero and h is not None and h > 0
    lowest = cx.is_lowest_weight(omega)
    neg_beta = tuple(-c for c in seed.beta)
    neg_gamma = tuple(-c for c in seed.gamma)
    zeta_ok = seed.zeta not in (neg_beta, neg_gamma)
    kt = check_kruglikov_the(cx, omega)
    maps = omega_image_kernel(cx, omega)
    bminus = b_minus_subspace(cx)
    image_in_b = all(bminus.contains(v) for v in maps.image.basis)

    split_sums = None
    if cx.is_split():
        sys = cx.system
        sums = []
        for pair in ((seed.beta, seed.gamma), (seed.beta, seed.zeta),
                     (seed.gamma, seed.zeta)):
            sigma = tuple(a + b for a, b in zip(*pair))
            sums.append(not sys.is_root(sigma) and any(c != 0 for c in sigma))
        split_sums = all(sums)

    harmonic = in_kernel_positive and kt.ok and image_in_b
    if harmonic:
        status = "harmonic-seed"
    elif not zeta_ok:
        status = "hypotheses-not-met"
    else:
        status = "not-certified"
    # a certified-lowest-weight seed with nondegenerate zeta whose computed
    # route fails would contradict the structure theorems; flag it loudly
    violation = (in_kernel_positive and lowest and zeta_ok
                 and seed.zeta not in set(cx.grading.delta_plus_p)
                 and not (kt.ok and image_in_b))
    return HarmonicVerdict(status, in_kernel_positive, lowest, zeta_ok, kt,
                           image_in_b, split_sums, violation)
