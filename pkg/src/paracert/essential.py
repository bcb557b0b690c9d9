"""Existence search for the essential element a0 and shrinking element c0,
holonomy-algebra computation, and the aggregated construction certificate.

Every returned element is validated exactly against the defining kernel and
positivity conditions; search order is deterministic (branch strategies
recorded in the certificate) so reports reproduce byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exact, seed as seedmod
from .exact import ONE, ZERO
from .kostant import ChainComplex, HypothesisNotMet
from .lie import Subspace
from .parabolic import ParabolicGrading


def weight_sum(sd) -> tuple:
    return tuple(b + g + z for b, g, z in zip(sd.beta, sd.gamma, sd.zeta))


def weight_kernel(grading: ParabolicGrading, beta, gamma, zeta) -> Subspace:
    """{H in a : (beta+gamma+zeta)(H) = 0} as a subspace of the algebra."""
    w = tuple(b + g + z for b, g, z in zip(beta, gamma, zeta))
    rank = grading.system.rank()
    if all(c == 0 for c in w):
        coords = [exact.unit(rank, i) for i in range(rank)]
    else:
        coords = exact.kernel([list(w)])
    vectors = [grading._from_a(x) for x in coords]
    return Subspace(grading.algebra, vectors, role="ker(beta+gamma+zeta)")


def weight_is_scaling(grading: ParabolicGrading, beta, gamma, zeta) -> bool:
    w = tuple(b + g + z for b, g, z in zip(beta, gamma, zeta))
    return grading.is_scaling_element(grading.system.dual(w))


@dataclass
class A0Certificate:
    found: bool
    reason: str = ""
    strategy: str = ""
    alpha: tuple = None
    nu0: tuple = None
    R_a: list = None          # Cartan coordinates of R
    a0_a: list = None         # Cartan coordinates of a0 = alpha^kappa + R
    a0: list = None           # algebra coordinates
    # essentiality witnesses
    r_orthogonal_to_center: bool = False
    alpha_in_delta_plus_p: bool = False
    alpha_on_grading_element: Fraction = None
    fixed_point_vector: list = None   # chosen X in g_{-nu0}


def _heights_desc(grading, roots_list):
    sys = grading.system
    order = {tuple(nu): i for i, nu in enumerate(sys.positives)}
    return sorted(roots_list, key=lambda nu: (-sys.height(nu), order[tuple(nu)]))


def _pr_g0ss(grading, v_a):
    """kappa-orthogonal projection onto g_0^ss ∩ a, in Cartan coordinates."""
    sub = grading.g0ss_a_coords
    if not sub:
        return exact.zeros(grading.system.rank())
    return exact.project_orthogonal(v_a, sub, grading.system.a_gram())


def _validated_cert(grading, w, alpha, nu0, R_a, strategy) -> A0Certificate:
    sys = grading.system
    a0_a = exact.vadd(sys.dual_a(alpha), R_a)
    if sys.evaluate(w, a0_a) != 0 or sys.evaluate(nu0, a0_a) != 0:
        return None
    a0 = grading._from_a(a0_a)
    r_native = grading._from_a(R_a)
    r_ortho = all(grading.algebra.killing_form(r_native, z) == 0
                  for z in grading.z_g0_a.basis)
    plus = set(grading.delta_plus_p)
    neg_nu0 = tuple(-c for c in nu0)
    fixed_vec = sys.root_space(neg_nu0).basis[0]
    return A0Certificate(
        found=True, strategy=strategy, alpha=tuple(alpha), nu0=tuple(nu0),
        R_a=R_a, a0_a=a0_a, a0=a0,
        r_orthogonal_to_center=r_ortho,
        alpha_in_delta_plus_p=tuple(alpha) in plus,
        alpha_on_grading_element=grading.homogeneity(alpha),
        fixed_point_vector=fixed_vec)


def find_a0(grading: ParabolicGrading, sd) -> A0Certificate:
    """Search for a0 = alpha^kappa + R in ker(beta+gamma+zeta) ∩ ker(nu0).

    Branches, in order: the central-but-not-scaling strategy, the
    dim(g_0^ss ∩ a) > 1 two-equation strategy (R = 0 solutions preferred,
    alpha scanned by descending height), the one-dimensional fallback, and
    an exhaustive exact scan.  The certificate records which branch fired;
    NotFound outcomes carry the reason (they bear on the open conjecture).
    """
    sys = grading.system
    w = weight_sum(sd)
    w_dual_a = sys.dual_a(w)
    if grading.is_scaling_element(grading._from_a(w_dual_a)):
        return A0Certificate(found=False, reason="weight is scaling element")
    plus = grading.delta_plus_p
    in_center = grading.z_g0_a.contains(grading._from_a(w_dual_a))
    ss_dim = len(grading.g0ss_a_coords)

    if in_center:
        alpha = next((a for a in plus if sys.inner(w, a) == 0), None)
        if alpha is not None:
            if ss_dim == 0:
                nu0 = next((n for n in sys.positives
                            if sys.inner(n, alpha) == 0), None)
                if nu0 is not None:
                    cert = _validated_cert(grading, w, alpha, nu0,
                                           exact.zeros(sys.rank()),
                                           "centralnotscaling")
                    if cert:
                        return cert
            else:
                for nu0 in plus:
                    pr = _pr_g0ss(grading, sys.dual_a(nu0))
                    if exact.is_zero_vec(pr):
                        continue
                    denom = sys.evaluate(nu0, pr)
                    if denom == 0:
                        continue
                    R_a = exact.vscale(-sys.inner(nu0, alpha) / denom, pr)
                    cert = _validated_cert(grading, w, alpha, nu0, R_a,
                                           "centralnotscaling")
                    if cert:
                        return cert

    if not in_center and ss_dim > 1:
        candidates = _heights_desc(grading, [a for a in plus
                                             if sys.inner(w, a) == 0])
        for alpha in candidates:
            for nu0 in plus:
                if nu0 == alpha or sys.inner(nu0, alpha) != 0:
                    continue
                cert = _validated_cert(grading, w, alpha, nu0,
                                       exact.zeros(sys.rank()), "bigg0case")
                if cert:
                    return cert
        pr_w = _pr_g0ss(grading, w_dual_a)
        for alpha in _heights_desc(grading, list(plus)):
            for nu0 in plus:
                pr_n = _pr_g0ss(grading, sys.dual_a(nu0))
                # need pr(nu0^kappa) outside the line through pr(w^kappa)
                if exact.rank([pr_w, pr_n]) < 2:
                    continue
                R_a = _solve_two_equations(grading, w, nu0, alpha)
                if R_a is None:
                    continue
                cert = _validated_cert(grading, w, alpha, nu0, R_a, "bigg0case")
                if cert:
                    return cert

    if not in_center and ss_dim == 1:
        g0_roots = [nu for nu in sys.roots if grading.root_grade[nu] == 0]
        T = [rho for rho in plus
             if all(sys.inner(rho, d) == 0 for d in g0_roots)]
        pr_w = _pr_g0ss(grading, w_dual_a)
        denom = sys.evaluate(w, pr_w)
        if denom != 0:
            for alpha in _heights_desc(grading, T):
                for nu0 in T:
                    if nu0 == alpha or sys.inner(alpha, nu0) != 0:
                        continue
                    R_a = exact.vscale(-sys.inner(w, alpha) / denom, pr_w)
                    cert = _validated_cert(grading, w, alpha, nu0, R_a,
                                           "rank1-fallback")
                    if cert:
                        return cert

    for alpha in _heights_desc(grading, list(plus)):
        for nu0 in plus:
            R_a = _solve_two_equations(grading, w, nu0, alpha)
            if R_a is None:
                continue
            cert = _validated_cert(grading, w, alpha, nu0, R_a, "exhaustive")
            if cert:
                return cert
    return A0Certificate(found=False,
                         reason="no (alpha, nu0, R) solves the kernel system")


def _solve_two_equations(grading, w, nu0, alpha):
    """R in g_0^ss ∩ a with w(R) = -kappa(w,alpha), nu0(R) = -kappa(nu0,alpha)."""
    sys = grading.system
    sub = grading.g0ss_a_coords
    if not sub:
        return None
    A = [[sys.evaluate(w, s) for s in sub],
         [sys.evaluate(nu0, s) for s in sub]]
    b = [-sys.inner(w, alpha), -sys.inner(nu0, alpha)]
    try:
        x, _ = exact.solve_affine(A, b)
    except exact.Infeasible:
        return None
    R_a = exact.zeros(sys.rank())
    for c, s in zip(x, sub):
        if c != 0:
            R_a = exact.vadd(R_a, exact.vscale(c, s))
    return R_a


@dataclass
class C0Certificate:
    found: bool
    reason: str = ""
    strategy: str = ""
    c0_a: list = None
    c0: list = None
    projection_ratio: Fraction = None
    projection_accepted: bool = None
    rejected_roots: list = field(default_factory=list)


def find_c0(grading: ParabolicGrading, sd) -> C0Certificate:
    """Shrinking element: ker(beta+gamma+zeta) point positive on Delta^+(p_+).

    Tries the kappa-orthogonal projection of the grading element first,
    accepted exactly when the strict projection inequality holds for every
    grade-1 root; otherwise falls back to exact linear feasibility over the
    Cartan.  Either way the certificate re-checks positivity on ALL of
    Delta^+(p_+).
    """
    sys = grading.system
    w = weight_sum(sd)
    ww = sys.inner(w, w)
    wE = grading.homogeneity(w)
    if ww == 0 or wE == 0:
        return C0Certificate(found=False, reason="degenerate weight sum")
    ratio = ww / wE
    level1 = [nu for nu in grading.delta_plus_p if grading.homogeneity(nu) == 1]
    rejected = [nu for nu in level1 if not sys.inner(w, nu) < ratio]
    if not rejected:
        c0_a = exact.vsub(grading.E_gr_a, exact.vscale(wE / ww, sys.dual_a(w)))
        cert = _validated_c0(grading, w, c0_a, "projection")
        if cert is not None:
            cert.projection_ratio = ratio
            cert.projection_accepted = True
            return cert
    eqs = [(list(w), ZERO)]
    ineqs = [(list(nu), ZERO) for nu in level1]
    try:
        c0_a = exact.linear_feasibility(eqs, ineqs, dim=sys.rank())
    except exact.Infeasible:
        return C0Certificate(
            found=False, reason="positivity system infeasible",
            projection_ratio=ratio, projection_accepted=False,
            rejected_roots=rejected)
    cert = _validated_c0(grading, w, c0_a, "feasibility")
    if cert is None:
        return C0Certificate(found=False,
                             reason="feasibility witness failed full recheck",
                             projection_ratio=ratio, projection_accepted=False,
                             rejected_roots=rejected)
    cert.projection_ratio = ratio
    cert.projection_accepted = False
    cert.rejected_roots = rejected
    return cert


def _validated_c0(grading, w, c0_a, strategy):
    sys = grading.system
    if sys.evaluate(w, c0_a) != 0:
        return None
    for nu in grading.delta_plus_p:
        if not sys.evaluate(nu, c0_a) > 0:
            return None
    return C0Certificate(found=True, strategy=strategy, c0_a=c0_a,
                         c0=grading._from_a(c0_a))


def validate_c0_candidate(grading: ParabolicGrading, sd, c0_a) -> bool:
    """Exact check that a proposed Cartan element is a valid shrinking element."""
    w = weight_sum(sd)
    return _validated_c0(grading, w, list(c0_a), "external") is not None


@dataclass
class HolonomyReport:
    hol: Subspace
    support_roots: list
    closed_under_g_minus: bool
    contains_image: bool
    contained_in_weight_cone: bool
    transversal: bool
    nilpotent: bool

    @property
    def ok(self) -> bool:
        return (self.closed_under_g_minus and self.contains_image and
                self.contained_in_weight_cone and self.transversal and
                self.nilpotent)


def holonomy_algebra(cx: ChainComplex, sd) -> HolonomyReport:
    """im(Omega) closed under iterated bracketing with g_-, with verdicts:
    containment in the zeta - i*beta - j*gamma root cone, transversality to
    ker(beta+gamma+zeta), and ad-nilpotency of every basis vector."""
    algebra = cx.algebra
    grading = cx.grading
    maps = seedmod.omega_image_kernel(cx, sd.omega)
    ech = exact.Echelon(algebra.dim)
    basis = []
    frontier = []
    for v in maps.image.basis:
        if ech.add(v):
            basis.append(v)
            frontier.append(v)
    gm = grading.g_minus.basis
    while frontier:
        new = []
        for f in frontier:
            for x in gm:
                wv = algebra.bracket(x, f)
                if not exact.is_zero_vec(wv) and ech.add(wv):
                    basis.append(wv)
                    new.append(wv)
        frontier = new
    hol = Subspace(algebra, basis, role="hol")

    # admissible adapted indices: root spaces at zeta - i*beta - j*gamma
    sys = cx.system
    allowed = set()
    support = []
    bound = 2 * grading.depth + 4
    for i in range(bound):
        for j in range(bound):
            nu = tuple(z - i * b - j * g
                       for z, b, g in zip(sd.zeta, sd.beta, sd.gamma))
            if all(c == 0 for c in nu):
                continue
            if sys.is_root(nu):
                support.append(nu)
                allowed.update(cx.adapted_indices_of_root(nu))
    contained = True
    for v in basis:
        if not set(cx.to_adapted(v)) <= allowed:
            contained = False
            break
    kerw = weight_kernel(grading, sd.beta, sd.gamma, sd.zeta)
    inter = exact.intersect_spans(kerw.basis, hol.basis, algebra.dim)
    transversal = not inter
    nilpotent = all(algebra.is_ad_nilpotent(v) for v in basis)
    closed = True
    for v in basis:
        for x in gm:
            if not hol.contains(algebra.bracket(x, v)):
                closed = False
                break
        if not closed:
            break
    contains_image = all(hol.contains(v) for v in maps.image.basis)
    seen_weights = {cx.adapted_weights[idx] for v in basis
                    for idx in cx.to_adapted(v)}
    present = [nu for nu in support if nu in seen_weights]
    return HolonomyReport(hol, present, closed, contains_image, contained,
                          transversal, nilpotent)


# ---------------------------------------------------------------------------
# aggregated certificate
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    tag: str
    passed: object            # True / False / None (informational)
    detail: str = ""


@dataclass
class ConstructionReport:
    seed_name: str
    checks: list
    passed: bool
    first_failure: str
    a0: A0Certificate = None
    c0: C0Certificate = None
    holonomy: HolonomyReport = None
    harmonic: object = None
    deformed: object = None
    f_report: object = None


def certify_construction(cx: ChainComplex, sd) -> ConstructionReport:
    """Machine-verify every hypothesis behind the compact-quotient family.

    Gates, in order: harmonic curvature membership, lowest weight, the
    structure lemma, the harmonic-seed verdict, the deformed-algebra
    certificates, the scaling obstruction, existence of a0 and c0, and the
    holonomy verdicts.  The report is PASS only when every gate passes;
    otherwise it names the first unmet hypothesis.
    """
    grading = cx.grading
    sys = cx.system
    checks = []
    blocking = []

    def gate(name, tag, ok, detail=""):
        checks.append(Check(name, tag, ok, detail))
        if ok is False:
            blocking.append(name)
        return ok

    omega = sd.omega
    box_zero = cx.laplacian(omega).is_zero()
    h = omega.homogeneity()
    wsum = weight_sum(sd)
    weight_ok = omega.weight() == wsum and not omega.is_zero()
    gate("kostant_harmonic", "kostant-harmonic", box_zero,
         "box(Omega) = 0" if box_zero else "box(Omega) != 0")
    gate("positive_homogeneity", "regularity",
         h is not None and h > 0, f"homogeneity = {h}")
    gate("weight_consistent", "plumbing", bool(weight_ok),
         f"weight = {sys.render(wsum)}")
    lowest = cx.is_lowest_weight(omega)
    gate("lowest_weight", "lowest-weight", lowest)

    try:
        lemma = cx.lemma_assume_check(sd.beta, sd.gamma, sd.zeta, omega)
        gate("structure_lemma", "zeta-negative-and-simple-slot", lemma.ok,
             f"zeta negative: {lemma.zeta_in_minus_positives}, "
             f"beta simple: {lemma.beta_simple}, gamma simple: {lemma.gamma_simple}")
    except HypothesisNotMet as exc:
        checks.append(Check("structure_lemma", "zeta-negative-and-simple-slot",
                            None, f"not applicable: {exc}"))

    harmonic = seedmod.certify_harmonic_seed(cx, sd)
    gate("kruglikov_the", "kruglikov-the", harmonic.kruglikov_the.ok)
    gate("image_in_b_minus", "nilpotent-image", harmonic.image_in_b_minus)
    gate("harmonic_seed", "harmonic-seed", harmonic.status == "harmonic-seed",
         harmonic.status)
    if harmonic.split_sums_admissible is not None:
        gate("split_root_sums", "split-codifferential-consequences",
             harmonic.split_sums_admissible)

    deformed = None
    f_report = None
    if harmonic.kruglikov_the.ok:
        try:
            deformed = seedmod.build_deformed_algebra(cx, omega)
            gate("deformed_jacobi", "deformed-bracket", True,
                 f"dim j_Omega = {deformed.structure.dim}")
        except Exception as exc:           # JacobiViolation or closure failure
            gate("deformed_jacobi", "deformed-bracket", False, str(exc))
        if deformed is not None:
            gate("deformed_obstruction_zero", "deformed-bracket",
                 deformed.d_omega_zero)
            f_report = seedmod.analyze_f_omega(cx, deformed)
            gate("f_omega_ideal", "solvable-radical", f_report.is_ideal)
            gate("f_omega_solvable", "solvable-radical", f_report.solvable,
                 f"derived series dims {f_report.series_dims}, "
                 f"dim n_Omega = {f_report.n_omega_dim}")

    scaling = weight_is_scaling(grading, sd.beta, sd.gamma, sd.zeta)
    gate("weight_not_scaling", "scaling-obstruction", not scaling,
         "weight is scaling element" if scaling else
         f"(beta+gamma+zeta)^kappa not scaling")

    a0 = None
    c0 = None
    holref = None
    if not scaling:
        a0 = find_a0(grading, sd)
        gate("a0_exists", "essential-element", a0.found,
             a0.strategy if a0.found else a0.reason)
        if a0.found:
            gate("a0_in_weight_kernel", "essential-element",
                 sys.evaluate(wsum, a0.a0_a) == 0)
            gate("a0_fixed_direction", "second-fixed-point",
                 sys.evaluate(a0.nu0, a0.a0_a) == 0,
                 f"nu0 = {sys.render(a0.nu0)}")
            gate("a0_essentiality", "essentiality-witness",
                 a0.r_orthogonal_to_center and a0.alpha_in_delta_plus_p
                 and a0.alpha_on_grading_element > 0,
                 f"lambda(a0) = lambda(alpha^kappa) on every scaling direction; "
                 f"alpha(E_gr) = {a0.alpha_on_grading_element}")
        c0 = find_c0(grading, sd)
        gate("c0_exists", "shrinking-element", c0.found,
             c0.strategy if c0.found else c0.reason)
        if c0.found:
            gate("c0_positive_on_p_plus", "shrinking-element", True,
                 f"projection accepted: {c0.projection_accepted}")
        holref = holonomy_algebra(cx, sd)
        gate("holonomy_closed", "holonomy-closure", holref.closed_under_g_minus)
        gate("holonomy_weight_cone", "holonomy-support",
             holref.contained_in_weight_cone)
        gate("holonomy_transversal", "quotient-distinctness", holref.transversal)
        gate("holonomy_nilpotent", "quotient-distinctness", holref.nilpotent)

    passed = not blocking
    return ConstructionReport(
        seed_name=getattr(sd, "name", ""), checks=checks, passed=passed,
        first_failure=blocking[0] if blocking else "",
        a0=a0, c0=c0, holonomy=holref, harmonic=harmonic,
        deformed=deformed, f_report=f_report)
