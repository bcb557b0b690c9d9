"""Concrete algebra realizations: sl_m(R), the quaternionic unitary family,
and a generic structure-constant file loader.

Matrix realizations expand to real structure constants at build time; all
downstream modules only ever see a LieAlgebra over exact rationals plus a
RestrictedRootSystem whose root-space bases carry (block, unit) labels.
"""

from __future__ import annotations

from fractions import Fraction

from . import exact, lie, roots
from .exact import ONE, ZERO, rat


class ParseError(Exception):
    """Malformed structure-constant file; carries the offending line number."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


# ---------------------------------------------------------------------------
# Quaternions over Q
# ---------------------------------------------------------------------------

_QUAT_UNITS = ("1", "i", "j", "k")

# multiplication table for (1, i, j, k): entry (a, b) -> (sign, unit index)
_QMUL = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


class Quaternion:
    """Quaternion with exact rational coefficients on (1, i, j, k)."""

    __slots__ = ("c",)

    def __init__(self, w=0, x=0, y=0, z=0):
        self.c = (rat(w), rat(x), rat(y), rat(z))

    @staticmethod
    def unit(u: int) -> "Quaternion":
        vals = [0, 0, 0, 0]
        vals[u] = 1
        return Quaternion(*vals)

    def __add__(self, other):
        return Quaternion(*[a + b for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        return Quaternion(*[a - b for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return Quaternion(*[-a for a in self.c])

    def __mul__(self, other):
        out = [ZERO, ZERO, ZERO, ZERO]
        for a, ca in enumerate(self.c):
            if ca == 0:
                continue
            for b, cb in enumerate(other.c):
                if cb == 0:
                    continue
                sign, u = _QMUL[a][b]
                out[u] += sign * ca * cb
        return Quaternion(*out)

    def scale(self, f) -> "Quaternion":
        f = rat(f)
        return Quaternion(*[f * a for a in self.c])

    def conj(self) -> "Quaternion":
        w, x, y, z = self.c
        return Quaternion(w, -x, -y, -z)

    def norm_sq(self) -> Fraction:
        return sum((a * a for a in self.c), ZERO)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def __eq__(self, other):
        return isinstance(other, Quaternion) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        parts = [f"{v}{u if u != '1' else ''}" for v, u in zip(self.c, _QUAT_UNITS) if v != 0]
        return "+".join(parts).replace("+-", "-") or "0"


QUAT_ONE = Quaternion(1)
QUAT_I = Quaternion(0, 1)
QUAT_J = Quaternion(0, 0, 1)
QUAT_K = Quaternion(0, 0, 0, 1)


# ---------------------------------------------------------------------------
# Sparse matrices over Q or H, flattened to real coordinates
# ---------------------------------------------------------------------------

def _mat_add(A: dict, B: dict, sub=False):
    out = dict(A)
    for k, v in B.items():
        cur = out.get(k)
        if cur is None:
            new = -v if sub else v
        else:
            new = cur - v if sub else cur + v
        if (new.is_zero() if isinstance(new, Quaternion) else new == 0):
            out.pop(k, None)
        else:
            out[k] = new
    return out


def _mat_mul(A: dict, B: dict):
    rows_b: dict = {}
    for (r, c), v in B.items():
        rows_b.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, c), va in A.items():
        hits = rows_b.get(c)
        if not hits:
            continue
        for c2, vb in hits:
            prod = va * vb
            cur = out.get((r, c2))
            new = cur + prod if cur is not None else prod
            if (new.is_zero() if isinstance(new, Quaternion) else new == 0):
                out.pop((r, c2), None)
            else:
                out[(r, c2)] = new
    return out


def _commutator(A: dict, B: dict):
    return _mat_add(_mat_mul(A, B), _mat_mul(B, A), sub=True)


class _SpanSolver:
    """Echelonized span with coordinate recovery against the inserted basis."""

    def __init__(self, flat_dim: int):
        self.flat_dim = flat_dim
        self.rows = []      # (reduced dense row, pivot, combo dict {orig_index: coeff})
        self.count = 0

    def add(self, dense) -> bool:
        w = list(dense)
        combo = {self.count: ONE}
        for row, p, rcombo in self.rows:
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
                for k, v in rcombo.items():
                    combo[k] = combo.get(k, ZERO) - f * v
        for c in range(self.flat_dim):
            if w[c] != 0:
                inv = ONE / w[c]
                w = [inv * a for a in w]
                combo = {k: inv * v for k, v in combo.items() if v != 0}
                self.rows.append((w, c, combo))
                self.count += 1
                return True
        return False

    def coords(self, dense):
        """Coordinates against inserted vectors, or None when outside the span."""
        w = list(dense)
        mu: dict = {}
        for row, p, rcombo in self.rows:
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
                for k, v in rcombo.items():
                    mu[k] = mu.get(k, ZERO) + f * v
        if any(a != 0 for a in w):
            return None
        out = exact.zeros(self.count)
        for k, v in mu.items():
            out[k] = v
        return out


class MatrixRealization:
    """Labelled basis of sparse matrices with real-coordinate bookkeeping.

    `quaternionic` switches the flattening from one real slot per entry to
    four (one per quaternion unit).
    """

    def __init__(self, size: int, quaternionic: bool):
        self.size = size
        self.quaternionic = quaternionic
        self.flat_dim = size * size * (4 if quaternionic else 1)
        self.matrices = []
        self.labels = []
        self.solver = _SpanSolver(self.flat_dim)

    def flatten(self, M: dict) -> list:
        out = exact.zeros(self.flat_dim)
        n = self.size
        if self.quaternionic:
            for (r, c), q in M.items():
                base = ((r * n) + c) * 4
                for u in range(4):
                    out[base + u] = q.c[u]
        else:
            for (r, c), v in M.items():
                out[(r * n) + c] = v
        return out

    def add_basis(self, label: str, M: dict):
        if not self.solver.add(self.flatten(M)):
            raise ValueError(f"dependent basis matrix {label}")
        self.matrices.append(M)
        self.labels.append(label)

    @property
    def dim(self) -> int:
        return len(self.matrices)

    def coords(self, M: dict):
        x = self.solver.coords(self.flatten(M))
        if x is None:
            return None
        return x + exact.zeros(self.dim - len(x)) if len(x) < self.dim else x

    def to_matrix(self, coords) -> dict:
        out: dict = {}
        for i, c in enumerate(coords):
            if c == 0:
                continue
            Mi = self.matrices[i]
            scaled = {k: (v.scale(c) if self.quaternionic else c * v) for k, v in Mi.items()}
            out = _mat_add(out, scaled)
        return out

    def structure_constants(self) -> dict:
        table = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                C = _commutator(self.matrices[i], self.matrices[j])
                x = self.coords(C)
                if x is None:
                    raise ValueError(f"basis not bracket-closed at pair ({i}, {j})")
                entry = {k: v for k, v in enumerate(x) if v != 0}
                if entry:
                    table[(i, j)] = entry
        return table

    def linear_map_matrix(self, fn) -> list:
        """Dense coordinate matrix of a linear map given on matrices."""
        cols = []
        for i in range(self.dim):
            img = fn(self.matrices[i])
            x = self.coords(img)
            if x is None:
                raise ValueError("linear map leaves the realized algebra")
            cols.append(x)
        return exact.transpose(cols)


# ---------------------------------------------------------------------------
# sl_m(R): traceless matrices, the Lie-algebra model of PGL_m(R)
# ---------------------------------------------------------------------------

def _neg_transpose(M: dict) -> dict:
    return {(c, r): -v for (r, c), v in M.items()}


def build_sl(m: int):
    """(LieAlgebra, RestrictedRootSystem) for traceless m x m rational matrices.

    Basis: elementary E_ij (i != j, row-major) then H_i = E_ii - E_{i+1,i+1}.
    theta is negative transpose; the diagonal part is the split Cartan, with
    roots eps_i - eps_j and positivity eps-lexicographic (i < j positive).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    real = MatrixRealization(m, quaternionic=False)
    for i in range(m):
        for j in range(m):
            if i != j:
                real.add_basis(f"E{i+1}{j+1}", {(i, j): ONE})
    for i in range(m - 1):
        real.add_basis(f"H{i+1}", {(i, i): ONE, (i + 1, i + 1): -ONE})
    table = real.structure_constants()
    algebra = lie.LieAlgebra(real.dim, table, basis_labels=real.labels)
    algebra.realization = SLRealization(m, real, algebra)
    theta = real.linear_map_matrix(_neg_transpose)
    cartan = [exact.unit(real.dim, m * (m - 1) + i) for i in range(m - 1)]
    # eps frame: eps_i extracted by pairing with E_ii - (1/m) * identity
    frame = []
    for i in range(m):
        M = {(k, k): (ONE if k == i else ZERO) - Fraction(1, m) for k in range(m)}
        M = {k: v for k, v in M.items() if v != 0}
        vec_g = real.coords(M)
        frame.append(_a_coords(cartan, vec_g))
    eps_cov = []
    for i in range(m):
        eps_cov.append(tuple(
            (ONE if i == j else ZERO) - (ONE if i == j + 1 else ZERO)
            for j in range(m - 1)
        ))
    system = roots.decompose(
        algebra, cartan, theta,
        eps_frame=frame, eps_covectors=eps_cov,
        eps_labels=[f"e{i+1}" for i in range(m)],
    )
    return algebra, system


def _a_coords(cartan_basis, v):
    """Coordinates of v (known to lie in the Cartan span) against its basis."""
    A = exact.transpose(cartan_basis)
    x, _ = exact.solve_affine(A, list(v))
    return x


class SLRealization:
    """Rendering and ingestion helpers for the traceless-matrix model."""

    def __init__(self, m: int, real: MatrixRealization, algebra):
        self.m = m
        self._real = real
        self._algebra = algebra

    def from_matrix(self, entries):
        """Coordinates of an m x m rational matrix, normalized traceless."""
        m = self.m
        M = {}
        tr = sum((rat(entries[i][i]) for i in range(m)), ZERO)
        shift = tr / m
        for i in range(m):
            for j in range(m):
                v = rat(entries[i][j]) - (shift if i == j else ZERO)
                if v != 0:
                    M[(i, j)] = v
        x = self._real.coords(M)
        if x is None:
            raise ValueError("matrix is not in the realized algebra")
        return x

    def from_diag(self, entries):
        m = self.m
        return self.from_matrix([[entries[i] if i == j else 0 for j in range(m)] for i in range(m)])

    def to_matrix(self, coords):
        M = self._real.to_matrix(coords)
        return [[M.get((i, j), ZERO) for j in range(self.m)] for i in range(self.m)]


# ---------------------------------------------------------------------------
# Quaternionic unitary family (mixed-signature quaternionic contact model)
# ---------------------------------------------------------------------------

def _quat_neg_conj_transpose(M: dict) -> dict:
    return {(c, r): -v.conj() for (r, c), v in M.items()}


class QCRealization:
    """Labelled access into the quaternionic realization."""

    def __init__(self, m, n, real: MatrixRealization, label_index):
        self.m = m
        self.n = n
        self._real = real
        self._label_index = label_index

    def coords_of(self, label: str):
        return exact.unit(self._real.dim, self._label_index[label])

    def coords_of_matrix(self, M: dict):
        x = self._real.coords(M)
        if x is None:
            raise ValueError("matrix is not in the realized algebra")
        return x

    def eta_beta(self, q: Quaternion):
        """The displayed generator of the (e0 - e1) root space attached to q."""
        N = self.m + self.n + 2
        M = {(0, 1): q, (0, 1 + self.m): q, (1, N - 1): -q.conj(), (1 + self.m, N - 1): q.conj()}
        return self.coords_of_matrix({k: v for k, v in M.items() if not v.is_zero()})

    def eta_zeta(self, q: Quaternion):
        """The displayed generator of the (-2 e1) root space attached to imaginary q."""
        if q.c[0] != 0:
            raise ValueError("the -2e1 generators take imaginary quaternions")
        M = {
            (1, 1): q, (1, 1 + self.m): q,
            (1 + self.m, 1): -q, (1 + self.m, 1 + self.m): -q,
        }
        return self.coords_of_matrix({k: v for k, v in M.items() if not v.is_zero()})


def build_quaternionic(m: int, n: int):
    """(LieAlgebra, RestrictedRootSystem) for the quaternionic unitary algebra
    preserving a hyperbolic-plus-signature-(m,n) hermitian form on H^{m+n+2}.

    Real structure constants come from expanding each quaternion entry over
    (1, i, j, k).  The split Cartan is spanned by the corner element (eps_0)
    and the m symmetric couplings (eps_l); root-space bases for eps_0 - eps_1
    and -2 eps_1 are pinned to the displayed generator families.
    """
    if not (n >= m > 1):
        raise ValueError("need n >= m > 1")
    N = m + n + 2
    real = MatrixRealization(N, quaternionic=True)
    units = [QUAT_ONE, QUAT_I, QUAT_J, QUAT_K]
    imag_units = [QUAT_I, QUAT_J, QUAT_K]

    def add(label, entries):
        real.add_basis(label, {k: v for k, v in entries.items() if not v.is_zero()})

    for u, q in zip(_QUAT_UNITS, units):
        add(f"a[{u}]", {(0, 0): q, (N - 1, N - 1): -q.conj()})
    for i in range(1, m + 1):
        for u, q in zip(_QUAT_UNITS, units):
            add(f"v[{i},{u}]", {(i, 0): q, (N - 1, i): -q.conj()})
    for j in range(1, n + 1):
        for u, q in zip(_QUAT_UNITS, units):
            add(f"w[{j},{u}]", {(m + j, 0): q, (N - 1, m + j): q.conj()})
    for i in range(1, m + 1):
        for u, q in zip(_QUAT_UNITS, units):
            add(f"p[{i},{u}]", {(0, i): q, (i, N - 1): -q.conj()})
    for j in range(1, n + 1):
        for u, q in zip(_QUAT_UNITS, units):
            add(f"q[{j},{u}]", {(0, m + j): q, (m + j, N - 1): q.conj()})
    for u, q in zip(_QUAT_UNITS[1:], imag_units):
        add(f"c[{u}]", {(0, N - 1): q})
    for u, q in zip(_QUAT_UNITS[1:], imag_units):
        add(f"z[{u}]", {(N - 1, 0): q})
    # R1 in sp(m): anti-hermitian block on rows/cols 1..m
    for i in range(1, m + 1):
        for u, q in zip(_QUAT_UNITS[1:], imag_units):
            add(f"R1[{i},{i},{u}]", {(i, i): q})
    for i in range(1, m + 1):
        for i2 in range(i + 1, m + 1):
            for u, q in zip(_QUAT_UNITS, units):
                add(f"R1[{i},{i2},{u}]", {(i, i2): q, (i2, i): -q.conj()})
    for j in range(1, n + 1):
        for u, q in zip(_QUAT_UNITS[1:], imag_units):
            add(f"R2[{j},{j},{u}]", {(m + j, m + j): q})
    for j in range(1, n + 1):
        for j2 in range(j + 1, n + 1):
            for u, q in zip(_QUAT_UNITS, units):
                add(f"R2[{j},{j2},{u}]", {(m + j, m + j2): q, (m + j2, m + j): -q.conj()})
    # S couples the two definite blocks: entry u at (m+j, i) forces conj(u) at (i, m+j)
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            for u, q in zip(_QUAT_UNITS, units):
                add(f"S[{j},{i},{u}]", {(m + j, i): q, (i, m + j): q.conj()})

    expected = (m + n + 2) * (2 * (m + n + 2) + 1)
    if real.dim != expected:
        raise AssertionError(f"dimension audit failed: {real.dim} != {expected}")

    table = real.structure_constants()
    algebra = lie.LieAlgebra(real.dim, table, basis_labels=real.labels)
    label_index = {lab: k for k, lab in enumerate(real.labels)}
    qc = QCRealization(m, n, real, label_index)
    algebra.realization = qc
    theta = real.linear_map_matrix(_quat_neg_conj_transpose)

    cartan = [qc.coords_of("a[1]")]
    for l in range(1, m + 1):
        cartan.append(qc.coords_of(f"S[{l},{l},1]"))
    frame = [exact.unit(m + 1, l) for l in range(m + 1)]
    eps_cov = [tuple(ONE if l == t else ZERO for t in range(m + 1)) for l in range(m + 1)]
    eps_labels = [f"e{l}" for l in range(m + 1)]

    beta_root = tuple([ONE, -ONE] + [ZERO] * (m - 1))
    zeta_root = tuple([ZERO, Fraction(-2)] + [ZERO] * (m - 1))
    preferred = {
        beta_root: [qc.eta_beta(q) for q in units],
        zeta_root: [qc.eta_zeta(q) for q in imag_units],
    }
    system = roots.decompose(
        algebra, cartan, theta,
        eps_frame=frame, eps_covectors=eps_cov, eps_labels=eps_labels,
        preferred_bases=preferred,
    )
    return algebra, system


# ---------------------------------------------------------------------------
# Structure-constant interchange files
# ---------------------------------------------------------------------------

def load_structure_constants(path):
    """LieAlgebra from a plain-text table.

    Line 1 is `dim N`; every further line `i j k p/q` adds coefficient p/q
    on e_k to [e_i, e_j] (1-based, omitted entries zero).  The antisymmetric
    completion is applied on load; explicit pairs violating antisymmetry are
    ParseErrors, and Jacobi violations surface with a witness triple.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    dim = None
    entries = {}
    header_seen = False
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError(line_no, "expected header 'dim N'")
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(line_no, "dimension must be an integer")
            if dim <= 0:
                raise ParseError(line_no, "dimension must be positive")
            header_seen = True
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(line_no, "expected 'i j k p/q'")
        try:
            i, j, k = (int(p) for p in parts[:3])
            coeff = Fraction(parts[3])
        except ValueError:
            raise ParseError(line_no, "malformed indices or coefficient")
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise ParseError(line_no, "index out of range")
        if i == j:
            raise ParseError(line_no, "[e_i, e_i] entries are not allowed")
        key, sign = ((i - 1, j - 1), ONE) if i < j else ((j - 1, i - 1), -ONE)
        slot = entries.setdefault(key, {})
        val = sign * coeff
        if (k - 1) in slot and slot[k - 1] != val:
            raise ParseError(line_no, f"antisymmetry violation for pair ({i},{j}) on e_{k}")
        slot[k - 1] = val
    if not header_seen:
        raise ParseError(1, "missing 'dim N' header")
    table = {k: {kk: vv for kk, vv in entry.items() if vv != 0} for k, entry in entries.items()}
    table = {k: entry for k, entry in table.items() if entry}
    return lie.LieAlgebra(dim, table)
