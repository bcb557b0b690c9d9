"""Command-line front end: seed enumeration, fixture certification, and
structural audits, with deterministic text or JSON reports.

Exit codes: 0 success/PASS, 1 FAIL (structured reason in the report),
2 invalid input.  Rationals are always rendered as p/q strings.
"""

from __future__ import annotations

import argparse
import datetime
import itertools
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import builders, essential, exact, fixtures, kostant, lie, seed as seedmod


def _frac(x) -> str:
    return str(Fraction(x))


def _vec(xs) -> list:
    return [_frac(x) for x in xs]


class Report:
    """Ordered check list plus run metadata; serializes deterministically."""

    def __init__(self, command: str, meta: dict, timestamp: bool = True):
        self.meta = {"command": command, **meta}
        if timestamp:
            self.meta["timestamp"] = datetime.datetime.now().isoformat(
                timespec="seconds")
        self.entries = []
        self.data = {}

    def add(self, name: str, tag: str, verdict, detail: str = ""):
        word = "INFO" if verdict is None else ("PASS" if verdict else "FAIL")
        self.entries.append(
            {"check": name, "tag": tag, "verdict": word, "detail": detail})

    @property
    def passed(self) -> bool:
        return all(e["verdict"] != "FAIL" for e in self.entries)

    def first_failure(self) -> str:
        for e in self.entries:
            if e["verdict"] == "FAIL":
                return e["check"]
        return ""

    def to_dict(self) -> dict:
        return {"meta": self.meta, "checks": self.entries, "data": self.data,
                "overall": "PASS" if self.passed else "FAIL",
                "first_failure": self.first_failure()}

    def render_text(self) -> str:
        lines = []
        for k, v in self.meta.items():
            lines.append(f"# {k}: {v}")
        for e in self.entries:
            lines.append(f"{e['verdict']:4} {e['check']} [{e['tag']}]"
                         + (f" -- {e['detail']}" if e["detail"] else ""))
        for k, v in self.data.items():
            lines.append(f"{k}: {json.dumps(v)}")
        lines.append(f"OVERALL: {'PASS' if self.passed else 'FAIL'}"
                     + (f" (first unmet: {self.first_failure()})"
                        if not self.passed else ""))
        return "\n".join(lines)


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render_text())


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

_POOL_COMPLEX = None
_POOL_TRIPLES = None


def _pool_worker(indices):
    out = []
    for i in indices:
        beta, gamma, zeta = _POOL_TRIPLES[i]
        for cand in _POOL_COMPLEX._candidates_for_triple(beta, gamma, zeta):
            out.append((i, beta, gamma, zeta,
                        sorted(cand.chain.coeffs.items())))
    return out


def _enumerate_parallel(cx, workers: int):
    global _POOL_COMPLEX, _POOL_TRIPLES
    triples = cx.scan_triples()
    _POOL_COMPLEX, _POOL_TRIPLES = cx, triples
    chunks = [list(range(w, len(triples), workers)) for w in range(workers)]
    chunks = [c for c in chunks if c]
    results = []
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        for part in pool.map(_pool_worker, chunks):
            results.extend(part)
    results.sort(key=lambda r: (r[0], r[4]))
    out, seen = [], set()
    for (_, beta, gamma, zeta, items) in results:
        chain = cx.zero(2)
        for (w, j), v in items:
            chain.add_term(w, j, v)
        key = cx._normalize_key(beta, gamma, zeta, chain)
        if key not in seen:
            seen.add(key)
            out.append(kostant.Candidate(beta, gamma, zeta, chain))
    return out


def _candidate_payload(cx, cand) -> dict:
    sys_ = cx.system
    chain = cand.chain
    entry = {
        "beta": sys_.render(cand.beta),
        "gamma": sys_.render(cand.gamma),
        "zeta": sys_.render(cand.zeta),
        "weight": sys_.render(tuple(b + g + z for b, g, z in
                                    zip(cand.beta, cand.gamma, cand.zeta))),
        "homogeneity": _frac(chain.homogeneity()),
        "terms": [{"wedge": slots, "value": value, "coeff": coeff}
                  for (slots, value, coeff) in chain.render()],
    }
    try:
        lemma = cx.lemma_assume_check(cand.beta, cand.gamma, cand.zeta, chain)
        entry["structure_lemma"] = "pass" if lemma.ok else "VIOLATION"
    except kostant.HypothesisNotMet:
        entry["structure_lemma"] = "not-applicable"
    return entry


def cmd_enumerate(args) -> int:
    ctx = fixtures.Context(args.algebra, _parse_cross(args.cross))
    cx = ctx.complex
    if args.parallel > 1 and not cx.is_split():
        cands = _enumerate_parallel(cx, args.parallel)
    else:
        cands = cx.enumerate_candidates()
    report = Report("enumerate",
                    {"algebra": args.algebra, "cross": args.cross},
                    timestamp=not args.no_timestamp)
    report.add("enumeration", "lowest-weight-scan", True,
               f"{len(cands)} certified candidate(s)")
    counterexamples = []
    for cand in cands:
        nb = tuple(-c for c in cand.beta)
        ng = tuple(-c for c in cand.gamma)
        if cand.zeta in (nb, ng):
            counterexamples.append(_candidate_payload(cx, cand))
    report.data["candidates"] = [_candidate_payload(cx, c) for c in cands]
    report.data["conjecture_counterexamples"] = counterexamples
    _emit(report, args.json)
    return 0


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def cmd_certify(args) -> int:
    if args.fixture:
        record = fixtures.load_fixture(args.fixture)
    elif args.seed:
        record = json.loads(args.seed)
    else:
        raise ValueError("certify needs --fixture NAME or --seed JSON")
    ctx, sd = fixtures.load_seed(record)
    cx = ctx.complex
    result = essential.certify_construction(cx, sd)
    report = Report("certify",
                    {"fixture": record.get("name", "(inline)"),
                     "algebra": record["algebra"],
                     "cross": record["cross"]},
                    timestamp=not args.no_timestamp)
    for check in result.checks:
        report.add(check.name, check.tag, check.passed, check.detail)
    sys_ = ctx.system
    if result.a0 is not None and result.a0.found:
        report.data["a0"] = {
            "alpha": sys_.render(result.a0.alpha),
            "nu0": sys_.render(result.a0.nu0),
            "R_cartan": _vec(result.a0.R_a),
            "a0_cartan": _vec(result.a0.a0_a),
            "strategy": result.a0.strategy,
        }
    if result.c0 is not None and result.c0.found:
        report.data["c0"] = {
            "c0_cartan": _vec(result.c0.c0_a),
            "strategy": result.c0.strategy,
            "projection_ratio": _frac(result.c0.projection_ratio),
        }
    if result.holonomy is not None:
        report.data["holonomy"] = {
            "dim": result.holonomy.hol.dim,
            "support": [sys_.render(nu) for nu in result.holonomy.support_roots],
        }
    _emit(report, args.json)
    return 0 if result.passed else 1


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

def _random_vector(rng, dim):
    return [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim)]


def _audit_algebra(report: Report, algebra, rng, triples: int):
    try:
        algebra.check_jacobi()
        report.add("jacobi_all_triples", "plumbing", True,
                   f"dim {algebra.dim}, all basis triples")
    except lie.JacobiViolation as exc:
        report.add("jacobi_all_triples", "plumbing", False,
                   f"witness triple {exc.triple}")
        return
    ok = True
    for _ in range(triples):
        X = _random_vector(rng, algebra.dim)
        Y = _random_vector(rng, algebra.dim)
        Z = _random_vector(rng, algebra.dim)
        lhs = algebra.killing_form(algebra.bracket(X, Y), Z)
        rhs = -algebra.killing_form(Y, algebra.bracket(X, Z))
        if lhs != rhs:
            ok = False
            break
    report.add("killing_ad_invariance", "killing-form", ok,
               f"{triples} random triples")


def cmd_audit(args) -> int:
    kind, _ = fixtures.parse_algebra_descriptor(args.algebra)
    rng = random.Random(0)
    report = Report("audit", {"algebra": args.algebra, "cross": args.cross},
                    timestamp=not args.no_timestamp)
    if kind == "file":
        try:
            algebra, _ = fixtures.build_algebra(args.algebra)
        except builders.ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except lie.JacobiViolation as exc:
            report.add("jacobi_all_triples", "plumbing", False,
                       f"witness triple {exc.triple}")
            _emit(report, args.json)
            return 1
        _audit_algebra(report, algebra, rng, triples=50)
        _emit(report, args.json)
        return 0 if report.passed else 1

    ctx = fixtures.Context(args.algebra, _parse_cross(args.cross))
    algebra, sys_, cx = ctx.algebra, ctx.system, ctx.complex
    _audit_algebra(report, algebra, rng, triples=50)

    ok_dual = all(
        sys_.dual_a(nu) is not None and list(nu) == [
            algebra.killing_form(sys_.dual(nu), h) for h in sys_.cartan_basis]
        for nu in sys_.roots)
    for _ in range(25):
        nu = tuple(Fraction(rng.randint(-3, 3)) for _ in range(sys_.rank()))
        back = [algebra.killing_form(sys_.dual(nu), h) for h in sys_.cartan_basis]
        ok_dual = ok_dual and back == list(nu)
    report.add("killing_duality_roundtrip", "killing-dual", ok_dual,
               "all roots + 25 random covectors")

    ok_refl = all(sys_.reflect(a, nu) in set(sys_.roots)
                  for a in sys_.roots for nu in sys_.roots)
    report.add("reflection_closure", "root-reflections", ok_refl)
    ok_string = all((2 * sys_.inner(a, nu) / sys_.inner(a, a)).denominator == 1
                    for a in sys_.roots for nu in sys_.roots)
    report.add("root_string_integrality", "root-strings", ok_string)
    ok_dim, total = sys_.dimension_audit()
    report.add("dimension_audit", "root-decomposition", ok_dim,
               f"{total} == dim g")
    report.add("grading_certificates", "parabolic-grading", True,
               f"|k| = {ctx.grading.depth}; bracket grading, Killing pairing "
               "and generation certified at construction")

    keys1 = cx.block_keys(1)
    keys2 = cx.block_keys(2)
    keys0 = [((), j) for j in range(algebra.dim)]
    keys3 = cx.block_keys(3)

    def rand_chain(keys, deg):
        c = cx.zero(deg)
        for _ in range(4):
            w, j = keys[rng.randrange(len(keys))]
            c.add_term(w, j, Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        return c

    ok_dd = all(cx.differential(cx.differential(rand_chain(k, d))).is_zero()
                for d, k in ((0, keys0), (1, keys1)) for _ in range(10))
    report.add("differential_squares_to_zero", "chain-complex", ok_dd,
               "10 random chains per degree")
    ok_ss = all(cx.codifferential(cx.codifferential(rand_chain(k, d))).is_zero()
                for d, k in ((2, keys2), (3, keys3)) for _ in range(10))
    report.add("codifferential_squares_to_zero", "chain-complex", ok_ss,
               "10 random chains per degree")
    try:
        reports = cx.hodge_audit(2)
        total2 = sum(r.dim_block for r in reports)
        report.add("hodge_decomposition_degree2", "hodge-decomposition", True,
                   f"{len(reports)} homogeneity blocks, total dim {total2}")
    except kostant.AuditFailure as exc:
        report.add("hodge_decomposition_degree2", "hodge-decomposition", False,
                   str(exc))
    _emit(report, args.json)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------

def _parse_cross(text):
    if not text:
        raise ValueError("--cross is required for built algebras (e.g. --cross 1,3)")
    return [int(p) for p in str(text).split(",") if p != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paracert",
        description="Exact certification of harmonic curvature seeds, deformed "
                    "brackets, and essential/shrinking elements for parabolic "
                    "model geometries.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_algebra: bool):
        if needs_algebra:
            p.add_argument("--algebra", required=True,
                           help="sl:M | qc:M,N | file:PATH")
            p.add_argument("--cross", default="",
                           help="1-based crossed simple-root indices, e.g. 1,3")
        p.add_argument("--json", action="store_true",
                       help="structured report instead of text")
        p.add_argument("--parallel", type=int, default=1, metavar="N",
                       help="worker processes for the candidate scan "
                            "(certify runs one seed and ignores this)")
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit the timestamp for byte-identical reports")

    p_enum = sub.add_parser("enumerate",
                            help="certified seed candidates for a grading")
    common(p_enum, needs_algebra=True)
    p_enum.set_defaults(func=cmd_enumerate)

    p_cert = sub.add_parser("certify", help="run the full certificate pipeline")
    p_cert.add_argument("--fixture", default="",
                        help="shipped fixture name or JSON path "
                             f"({', '.join(fixtures.FIXTURE_NAMES)})")
    p_cert.add_argument("--seed", default="",
                        help="inline JSON seed descriptor")
    common(p_cert, needs_algebra=False)
    p_cert.set_defaults(func=cmd_certify)

    p_audit = sub.add_parser("audit", help="structural property suites")
    common(p_audit, needs_algebra=True)
    p_audit.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
