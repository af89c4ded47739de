"""Lie algebra cohomology in degree <= 2 from structure constants.

Everything here runs in exact rational arithmetic: the inputs are bracket
coefficients, the outputs are integer dimensions and rational basis
vectors, and floating point has no business deciding a rank.

The chain complex is the left-invariant (Chevalley-Eilenberg) one,
truncated at 3-forms, which is all that is needed for closed 2-forms:
the differential on dual basis 1-forms comes from the Maurer-Cartan
equations, and on 2-forms from the skew-derivation rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from math import comb

from . import rational_linalg as rla


@dataclass(frozen=True)
class StructureConstants:
    """Bracket coefficients of a finite-dimensional real Lie algebra.

    ``c`` maps (i, j, k) with i < j to the coefficient of basis vector k
    in [A_i, A_j]; the i > j values follow by antisymmetry and are never
    stored.  Nothing is validated at construction: run
    :func:`validate_algebra` to check the Jacobi identity.
    """

    dim: int
    names: tuple[str, ...]
    c: dict[tuple[int, int, int], Fraction]
    label: str = ""

    def bracket_coeff(self, i: int, j: int, k: int) -> Fraction:
        """Coefficient of A_k in [A_i, A_j], any index order."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.c.get((i, j, k), Fraction(0))
        return -self.c.get((j, i, k), Fraction(0))

    def bracket(self, u, v):
        """Coordinates of [u, v] for rational coordinate vectors u, v."""
        u = [Fraction(x) for x in u]
        v = [Fraction(x) for x in v]
        out = [Fraction(0)] * self.dim
        for (i, j, k), cijk in self.c.items():
            w = u[i] * v[j] - u[j] * v[i]
            if w != 0:
                out[k] += w * cijk
        return out


@dataclass(frozen=True)
class Cochain:
    """Element of the degree-p dual exterior power, in the sorted-tuple basis."""

    degree: int
    dim: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.degree <= 3:
            raise ValueError(f"degree {self.degree} outside the built complex (0..3)")
        expected = comb(self.dim, self.degree)
        if len(self.coords) != expected:
            raise ValueError(
                f"degree-{self.degree} cochain over dim {self.dim} needs "
                f"{expected} coordinates, got {len(self.coords)}"
            )


@dataclass
class JacobiReport:
    ok: bool
    violations: list[tuple[int, int, int, int]]


@dataclass
class CohomologyReport:
    dim_z2: int
    dim_b2: int
    dim_h2: int
    dim_h1: int
    z2_basis: list[Cochain]
    b2_basis: list[Cochain]


@dataclass
class KernelReport:
    h_basis: list[list[Fraction]]
    is_subalgebra: bool
    gamma_dim: int


def pair_basis(dim: int) -> list[tuple[int, int]]:
    return list(combinations(range(dim), 2))


def triple_basis(dim: int) -> list[tuple[int, int, int]]:
    return list(combinations(range(dim), 3))


def _perm_sign_3(a: int, b: int, c: int) -> int:
    """Sign of the permutation sorting three distinct indices."""
    inv = (a > b) + (a > c) + (b > c)
    return -1 if inv % 2 else 1


def _check_shape(sc: StructureConstants) -> None:
    if sc.dim < 1:
        raise ValueError("dim must be >= 1")
    if len(sc.names) != sc.dim:
        raise ValueError("names length must equal dim")
    for (i, j, k), v in sc.c.items():
        if not (0 <= i < sc.dim and 0 <= j < sc.dim and 0 <= k < sc.dim):
            raise ValueError(f"index out of range in c[{i},{j},{k}]")
        if i == j and v != 0:
            raise ValueError(f"nonzero self-bracket c[{i},{i},{k}]")
        if i > j:
            raise ValueError(f"c stored with i >= j at ({i},{j},{k}); store i < j only")


def validate_algebra(sc: StructureConstants, max_violations: int = 10) -> JacobiReport:
    """Check the Jacobi identity exactly; list the first few failing quadruples."""
    _check_shape(sc)
    violations: list[tuple[int, int, int, int]] = []
    for i, j, k in combinations(range(sc.dim), 3):
        for l in range(sc.dim):
            total = Fraction(0)
            for m in range(sc.dim):
                total += sc.bracket_coeff(i, j, m) * sc.bracket_coeff(m, k, l)
                total += sc.bracket_coeff(j, k, m) * sc.bracket_coeff(m, i, l)
                total += sc.bracket_coeff(k, i, m) * sc.bracket_coeff(m, j, l)
            if total != 0:
                violations.append((i, j, k, l))
                if len(violations) >= max_violations:
                    return JacobiReport(ok=False, violations=violations)
    return JacobiReport(ok=not violations, violations=violations)


def coboundary1(sc: StructureConstants):
    """Matrix of the differential on 1-forms, pairs x dim.

    Column k is the image of the k-th dual basis form: the Maurer-Cartan
    coefficient -C_ij^k at the sorted pair (i, j).  The conventional 1/2
    is absorbed by summing each unordered pair once.
    """
    pairs = pair_basis(sc.dim)
    rows = [[Fraction(0)] * sc.dim for _ in pairs]
    for p, (i, j) in enumerate(pairs):
        for k in range(sc.dim):
            v = sc.bracket_coeff(i, j, k)
            if v != 0:
                rows[p][k] = -v
    return rows


def coboundary2(sc: StructureConstants):
    """Matrix of the differential on 2-forms, triples x pairs.

    Built from the skew-derivation rule applied to each basis 2-form
    w^a ^ w^b:  d(w^a ^ w^b) = (d w^a) ^ w^b - w^a ^ (d w^b).
    """
    pairs = pair_basis(sc.dim)
    pair_idx = {p: n for n, p in enumerate(pairs)}
    triples = triple_basis(sc.dim)
    triple_idx = {t: n for n, t in enumerate(triples)}
    rows = [[Fraction(0)] * len(pairs) for _ in triples]

    def add_wedge(col, coeff, a, b, c):
        # coeff * w^a ^ w^b ^ w^c resolved into the sorted-triple basis
        if a == b or a == c or b == c:
            return
        t = tuple(sorted((a, b, c)))
        rows[triple_idx[t]][col] += coeff * _perm_sign_3(a, b, c)

    for col, (a, b) in enumerate(pairs):
        for i, j in pairs:
            cija = sc.bracket_coeff(i, j, a)
            if cija != 0:
                add_wedge(col, -cija, i, j, b)  # (d w^a) ^ w^b
            cijb = sc.bracket_coeff(i, j, b)
            if cijb != 0:
                add_wedge(col, cijb, a, i, j)  # - w^a ^ (d w^b)
    return rows


def second_cohomology(sc: StructureConstants) -> CohomologyReport:
    """Closed and exact 2-forms, their quotient dimension, and dim ker d1."""
    d1 = coboundary1(sc)
    d2 = coboundary2(sc)
    n_pairs = comb(sc.dim, 2)

    z2_vectors = rla.nullspace(d2, n_pairs)
    d1_t = [list(col) for col in zip(*d1)] if d1 else []
    b2_vectors = rla.row_space_basis(d1_t)
    dim_b2 = len(b2_vectors)
    dim_z2 = len(z2_vectors)
    dim_h1 = sc.dim - rla.rank(d1, ncols=sc.dim)

    def to_cochain(vec):
        return Cochain(degree=2, dim=sc.dim, coords=tuple(vec))

    return CohomologyReport(
        dim_z2=dim_z2,
        dim_b2=dim_b2,
        dim_h2=dim_z2 - dim_b2,
        dim_h1=dim_h1,
        z2_basis=[to_cochain(v) for v in z2_vectors],
        b2_basis=[to_cochain(v) for v in b2_vectors],
    )


def kernel_subalgebra(sc: StructureConstants, omega: Cochain) -> KernelReport:
    """Radical of a closed 2-form and the closure check that makes it a subalgebra.

    Raises if ``omega`` is not closed: an open 2-form has no invariant
    kernel and the downstream quotient has no meaning.
    """
    if omega.degree != 2 or omega.dim != sc.dim:
        raise ValueError("omega must be a degree-2 cochain over the same algebra")
    residual = rla.mat_vec(coboundary2(sc), list(omega.coords))
    if any(x != 0 for x in residual):
        raise ValueError(f"omega is not closed; d2(omega) = {[str(x) for x in residual]}")

    pairs = pair_basis(sc.dim)
    mat = [[Fraction(0)] * sc.dim for _ in range(sc.dim)]
    for n, (i, j) in enumerate(pairs):
        mat[i][j] = omega.coords[n]
        mat[j][i] = -omega.coords[n]
    h_basis = rla.nullspace(mat, sc.dim)

    closed = True
    for a in range(len(h_basis)):
        for b in range(a + 1, len(h_basis)):
            w = sc.bracket(h_basis[a], h_basis[b])
            if not rla.in_span(h_basis, w):
                closed = False
    return KernelReport(
        h_basis=h_basis,
        is_subalgebra=closed,
        gamma_dim=sc.dim - len(h_basis),
    )


def two_form_from_pairs(sc: StructureConstants, entries: dict[tuple[int, int], Fraction]) -> Cochain:
    """Convenience constructor: a 2-cochain from sparse (i, j) -> value, i < j."""
    pairs = pair_basis(sc.dim)
    idx = {p: n for n, p in enumerate(pairs)}
    coords = [Fraction(0)] * len(pairs)
    for (i, j), v in entries.items():
        if i == j:
            raise ValueError("2-form entries need i != j")
        if i < j:
            coords[idx[(i, j)]] += Fraction(v)
        else:
            coords[idx[(j, i)]] -= Fraction(v)
    return Cochain(degree=2, dim=sc.dim, coords=tuple(coords))


# ---------------------------------------------------------------------------
# JSON schema and the shipped algebra catalog
# ---------------------------------------------------------------------------


def from_json_dict(data: dict) -> StructureConstants:
    try:
        dim = int(data["dim"])
        names = tuple(str(s) for s in data["basis"])
        brackets = data["brackets"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"structure-constants JSON missing field: {exc}") from exc
    c: dict[tuple[int, int, int], Fraction] = {}
    for entry in brackets:
        i, j = int(entry["i"]), int(entry["j"])
        if i >= j:
            raise ValueError(f"bracket entry must have i < j, got ({i},{j})")
        for k_str, v in entry["coeffs"].items():
            val = Fraction(v)
            if val != 0:
                c[(i, j, int(k_str))] = val
    sc = StructureConstants(dim=dim, names=names, c=c, label=str(data.get("name", "")))
    _check_shape(sc)
    return sc


def to_json_dict(sc: StructureConstants) -> dict:
    by_pair: dict[tuple[int, int], dict[str, str]] = {}
    for (i, j, k), v in sorted(sc.c.items()):
        by_pair.setdefault((i, j), {})[str(k)] = str(v)
    return {
        "name": sc.label,
        "dim": sc.dim,
        "basis": list(sc.names),
        "brackets": [
            {"i": i, "j": j, "coeffs": coeffs} for (i, j), coeffs in sorted(by_pair.items())
        ],
    }


def load_structure_constants(path) -> StructureConstants:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))


def abelian(n: int) -> StructureConstants:
    """All brackets zero."""
    return StructureConstants(
        dim=n, names=tuple(f"A{i + 1}" for i in range(n)), c={}, label=f"abelian{n}"
    )


CATALOG = ("abelian2", "h3", "so3", "galilei", "poincare")


def catalog(name: str) -> StructureConstants:
    """Load one of the shipped algebras by name."""
    if name not in CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; have {CATALOG}")
    ref = resources.files("qps") / "algebras" / f"{name}.json"
    return from_json_dict(json.loads(ref.read_text(encoding="utf-8")))


def cohomology_report_json(report: CohomologyReport) -> dict:
    def cochain_coords(ch: Cochain):
        return [str(x) for x in ch.coords]

    return {
        "dim_z2": report.dim_z2,
        "dim_b2": report.dim_b2,
        "dim_h2": report.dim_h2,
        "dim_h1": report.dim_h1,
        "z2_basis": [cochain_coords(ch) for ch in report.z2_basis],
        "b2_basis": [cochain_coords(ch) for ch in report.b2_basis],
    }


def kernel_report_json(report: KernelReport) -> dict:
    return {
        "h_basis": [[str(x) for x in vec] for vec in report.h_basis],
        "is_subalgebra": report.is_subalgebra,
        "gamma_dim": report.gamma_dim,
    }
