"""Shipped seed fixtures and descriptor plumbing shared by the CLI and tests.

A fixture record names an algebra builder with parameters, the crossed
simple roots (1-based indices in canonical simple order), the seed roots as
eps-coordinate tuples, and the term list with rational coefficients against
the pinned root-space bases.
"""

from __future__ import annotations

import json
from importlib import resources

from . import builders, kostant, parabolic, seed as seedmod


FIXTURE_NAMES = (
    "grassmannian_k2_m4",
    "grassmannian_k1_m5",
    "grassmannian_k3_m7",
    "borel_pgl4_pos",
    "borel_pgl4_neg",
    "path_m5",
    "quaternionic_m2_n2",
)


def fixture_names():
    return list(FIXTURE_NAMES)


def load_fixture(name: str) -> dict:
    """Fixture record by shipped name, or from an explicit JSON path."""
    if name in FIXTURE_NAMES:
        ref = resources.files("paracert").joinpath(f"fixtures/{name}.json")
        with ref.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    with open(name, "r", encoding="utf-8") as fh:
        record = json.load(fh)
    return record


def parse_algebra_descriptor(descriptor: str):
    """('sl', (m,)) / ('qc', (m, n)) / ('file', (path,)) from CLI syntax."""
    kind, _, rest = descriptor.partition(":")
    if kind == "sl":
        return "sl", (int(rest),)
    if kind == "qc":
        m, n = rest.split(",")
        return "qc", (int(m), int(n))
    if kind == "file":
        if not rest:
            raise ValueError("file: descriptor needs a path")
        return "file", (rest,)
    raise ValueError(f"unknown algebra descriptor {descriptor!r} "
                     "(expected sl:M, qc:M,N or file:PATH)")


def build_algebra(descriptor: str):
    kind, args = parse_algebra_descriptor(descriptor)
    if kind == "sl":
        return builders.build_sl(*args)
    if kind == "qc":
        return builders.build_quaternionic(*args)
    algebra = builders.load_structure_constants(args[0])
    return algebra, None


class Context:
    """Built geometry: algebra, root system, grading and chain complex."""

    def __init__(self, descriptor: str, cross):
        self.descriptor = descriptor
        self.cross_indices = list(cross)
        self.algebra, self.system = build_algebra(descriptor)
        if self.system is None:
            raise ValueError("file-loaded algebras carry no root data; "
                             "only `audit` supports them")
        simples = self.system.simples
        crossed = []
        for idx in self.cross_indices:
            if not 1 <= idx <= len(simples):
                raise ValueError(f"crossed index {idx} out of range "
                                 f"(1..{len(simples)})")
            crossed.append(simples[idx - 1])
        self.grading = parabolic.grade(self.system, crossed)
        self.complex = kostant.ChainComplex(self.grading)


def context_from_record(record: dict) -> Context:
    return Context(record["algebra"], record["cross"])


def seed_from_record(cx, record) -> seedmod.Seed:
    system = cx.system
    beta = system.covector_from_eps(record["beta"])
    gamma = system.covector_from_eps(record["gamma"])
    zeta = system.covector_from_eps(record["zeta"])
    terms = [(t["coeff"], t["beta"], t["gamma"], t["zeta"])
             for t in record["terms"]]
    return seedmod.make_seed(cx, beta, gamma, zeta, terms,
                             name=record.get("name", ""))


def load_seed(name_or_record):
    """(Context, Seed) from a fixture name, path, or parsed record."""
    record = name_or_record if isinstance(name_or_record, dict) \
        else load_fixture(name_or_record)
    ctx = context_from_record(record)
    return ctx, seed_from_record(ctx.complex, record)
