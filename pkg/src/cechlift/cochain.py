"""Simplicial cochains with finite abelian coefficients, and their cohomology.

The coboundary follows the usual alternating-sign convention,

    (delta f)(v0, ..., v_{p+1}) = sum_j (-1)^j f(v0, ..., vj dropped, ..., v_{p+1}),

so delta of a 0-cochain g on an edge (a, b) is g(b) - g(a).  Coefficient
factors never interact, which lets every question split into one cyclic
factor at a time: prime factors go through GF(p) elimination, composite
ones through the integer Smith normal form.

Cohomology with arbitrary finite abelian coefficients is assembled from
integral data (Betti numbers and torsion of the underlying chain complex)
by the universal-coefficient rules Hom(Z, Zm) = Zm, Hom(Zd, Zm) =
Ext(Zd, Zm) = Z_gcd(d,m).  When the coefficients are a sum of copies of
one prime field the space additionally carries a dimension and a basis of
cocycle representatives, and the two routes are checked against each
other on every call.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .coefgroup import AbelianGroup, Z2, parse_group
from .errors import CapExceededError
from .linalg import (
    GfpSpan,
    Snf,
    invariant_factors,
    nullspace_mod_p,
    rank_mod_p,
    smith_normal_form,
    solve_mod_m,
    solve_mod_p,
)
from .nerve import SimplicialComplex, complex_digest, simplices_of_dim

__all__ = [
    "Cochain",
    "CohomologySpace",
    "CohomologyClass",
    "zero_cochain",
    "coboundary",
    "coboundary_matrix",
    "is_cocycle",
    "is_coboundary",
    "cohomology",
    "classes_equal",
    "enumerate_classes",
    "DEFAULT_ENUM_CAP",
    "read_cochain",
    "write_cochain",
]

DEFAULT_ENUM_CAP = 2 ** 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Cochain:
    """A p-cochain: one coefficient-group element per canonical p-simplex."""

    base: SimplicialComplex
    degree: int
    group: AbelianGroup
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        expected = len(simplices_of_dim(self.base, self.degree))
        if len(self.values) != expected:
            raise ValueError(
                f"degree-{self.degree} cochain needs {expected} values, got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(self.group.check(v) for v in self.values))

    def _compatible(self, other: "Cochain") -> None:
        if self.base is not other.base and self.base.simplices != other.base.simplices:
            raise ValueError("cochains live on different complexes")
        if self.degree != other.degree or self.group != other.group:
            raise ValueError("cochain degree or coefficients mismatch")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        vals = tuple(self.group.add(a, b) for a, b in zip(self.values, other.values))
        return Cochain(self.base, self.degree, self.group, vals)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        vals = tuple(self.group.sub(a, b) for a, b in zip(self.values, other.values))
        return Cochain(self.base, self.degree, self.group, vals)

    def __neg__(self) -> "Cochain":
        return Cochain(self.base, self.degree, self.group, tuple(self.group.neg(a) for a in self.values))

    def is_zero(self) -> bool:
        zero = self.group.zero()
        return all(v == zero for v in self.values)

    def value_on(self, simplex) -> tuple[int, ...]:
        row = self.base.index_of(tuple(simplex))
        return self.values[row]


def zero_cochain(complex_: SimplicialComplex, degree: int, group: AbelianGroup) -> Cochain:
    n = len(simplices_of_dim(complex_, degree))
    return Cochain(complex_, degree, group, ((0,) * group.rank,) * n)


@lru_cache(maxsize=None)
def coboundary_matrix(complex_: SimplicialComplex, p: int) -> np.ndarray:
    """Signed incidence matrix of delta: C^p -> C^{p+1}, shape (#(p+1)-simplices, #p-simplices)."""
    rows = simplices_of_dim(complex_, p + 1)
    cols = simplices_of_dim(complex_, p)
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if not cols:
        return mat
    for i, s in enumerate(rows):
        for j in range(len(s)):
            face = s[:j] + s[j + 1 :]
            mat[i, complex_.index_of(face)] = (-1) ** j
    return mat


@lru_cache(maxsize=None)
def _coboundary_snf(complex_: SimplicialComplex, p: int) -> Snf:
    return smith_normal_form(coboundary_matrix(complex_, p))


def _value_columns(f: Cochain) -> np.ndarray:
    if not f.values:
        return np.zeros((0, f.group.rank), dtype=np.int64)
    return np.array(f.values, dtype=np.int64)


def coboundary(f: Cochain) -> Cochain:
    mat = coboundary_matrix(f.base, f.degree)
    cols = _value_columns(f)
    out = mat @ cols if cols.size else np.zeros((mat.shape[0], f.group.rank), dtype=np.int64)
    if out.size:
        out %= np.array(f.group.factors, dtype=np.int64)
    return Cochain(f.base, f.degree + 1, f.group, tuple(map(tuple, out.tolist())))


def is_cocycle(f: Cochain) -> bool:
    return coboundary(f).is_zero()


def is_coboundary(f: Cochain) -> Optional[Cochain]:
    """A cochain g with delta g = f, or None.  The witness is the elimination
    routine's first solution, so it is deterministic."""
    mat = coboundary_matrix(f.base, f.degree - 1)
    cols = _value_columns(f)
    witness_cols: list[list[int]] = []
    for j, m in enumerate(f.group.factors):
        b = cols[:, j] if cols.size else np.zeros(mat.shape[0], dtype=np.int64)
        if _is_prime(m):
            x = solve_mod_p(mat, b, m)
            if x is None:
                return None
            witness_cols.append([int(t) for t in x])
        else:
            x = solve_mod_m(_coboundary_snf(f.base, f.degree - 1), list(b), m)
            if x is None:
                return None
            witness_cols.append(x)
    n = mat.shape[1]
    if f.group.rank == 0:
        vals = tuple(() for _ in range(n))
    else:
        vals = tuple(tuple(col[i] for col in witness_cols) for i in range(n))
    return Cochain(f.base, f.degree - 1, f.group, vals)


# ------------------------------------------------------------ cohomology ----


@dataclass(frozen=True)
class CohomologySpace:
    """H^p of a complex with fixed finite abelian coefficients.

    invariant_factors always describes the group.  dimension and basis are
    filled in when the coefficients are a sum of copies of a single prime
    field; basis entries are cocycle representatives of a basis of classes.
    """

    base: SimplicialComplex
    degree: int
    coefficients: AbelianGroup
    invariant_factors: tuple[int, ...]
    prime: Optional[int]
    dimension: Optional[int]
    basis: Optional[tuple[Cochain, ...]]

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


@dataclass(frozen=True)
class CohomologyClass:
    """A cohomology class, carried by an explicit cocycle representative."""

    representative: Cochain
    space: CohomologySpace

    def __post_init__(self):
        if not is_cocycle(self.representative):
            raise ValueError("representative is not a cocycle")

    def is_trivial(self) -> bool:
        return is_coboundary(self.representative) is not None

    def same_class_as(self, other: "CohomologyClass") -> bool:
        return classes_equal(self.representative, other.representative)


def _integral_rank(complex_: SimplicialComplex, p: int) -> int:
    diag = _coboundary_snf(complex_, p).diagonal()
    return sum(1 for d in diag if d != 0)


def _gfp_class_basis(complex_: SimplicialComplex, p: int, prime: int) -> list[np.ndarray]:
    """Vectors in C^p representing a basis of H^p over GF(prime)."""
    up = coboundary_matrix(complex_, p)
    down = coboundary_matrix(complex_, p - 1)
    span = GfpSpan(up.shape[1], prime)
    for col in range(down.shape[1]):
        span.insert(down[:, col])
    image_rank = span.rank
    reps = []
    for vec in nullspace_mod_p(up, prime):
        if span.insert(vec):
            reps.append(vec % prime)
    expected = up.shape[1] - rank_mod_p(up, prime) - image_rank
    if len(reps) != expected:
        raise AssertionError("cohomology basis extraction lost rank")
    return reps


@lru_cache(maxsize=None)
def cohomology(complex_: SimplicialComplex, p: int, coefficients: AbelianGroup = Z2) -> CohomologySpace:
    """Compute H^p(complex; coefficients); results are cached per complex."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    n_p = complex_.dim_count(p)
    betti = n_p - _integral_rank(complex_, p) - _integral_rank(complex_, p - 1)
    tors_here = _coboundary_snf(complex_, p).torsion()
    tors_below = _coboundary_snf(complex_, p - 1).torsion() if p >= 1 else []

    orders: list[int] = []
    for m in coefficients.factors:
        orders.extend([m] * betti)
        orders.extend(gcd(d, m) for d in tors_here)
        orders.extend(gcd(d, m) for d in tors_below)
    factors = invariant_factors(o for o in orders if o > 1)

    prime = None
    dimension = None
    basis = None
    fs = coefficients.factors
    if fs and all(f == fs[0] for f in fs) and _is_prime(fs[0]):
        prime = fs[0]
        vecs = _gfp_class_basis(complex_, p, prime)
        dimension = len(vecs) * len(fs)
        chains = []
        for slot in range(len(fs)):
            for v in vecs:
                vals = tuple(
                    tuple(int(v[i]) if j == slot else 0 for j in range(len(fs)))
                    for i in range(n_p)
                )
                chains.append(Cochain(complex_, p, coefficients, vals))
        basis = tuple(chains)
        if factors != (prime,) * dimension:
            raise AssertionError(
                f"universal-coefficient factors {factors} disagree with GF({prime}) dimension {dimension}"
            )

    return CohomologySpace(
        base=complex_,
        degree=p,
        coefficients=coefficients,
        invariant_factors=factors,
        prime=prime,
        dimension=dimension,
        basis=basis,
    )


def classes_equal(f: Cochain, g: Cochain) -> bool:
    """Do two cocycles represent the same cohomology class?"""
    for name, c in (("first", f), ("second", g)):
        if not is_cocycle(c):
            raise ValueError(f"{name} argument is not a cocycle")
    f._compatible(g)
    return is_coboundary(f - g) is not None


def enumerate_classes(
    complex_: SimplicialComplex,
    p: int,
    coefficients: AbelianGroup = Z2,
    cap: int = DEFAULT_ENUM_CAP,
) -> list[CohomologyClass]:
    """Every class of H^p, one representative each; zero class comes first."""
    space = cohomology(complex_, p, coefficients)
    if space.prime is None:
        raise ValueError(
            "class enumeration needs coefficients that are a sum of copies of one prime field"
        )
    count = space.prime ** space.dimension
    if count > cap:
        raise CapExceededError(count, cap, f"enumerating H^{p} classes")
    out = []
    for combo in itertools.product(range(space.prime), repeat=space.dimension):
        rep = zero_cochain(complex_, p, coefficients)
        for k, b in zip(combo, space.basis):
            if k:
                scaled = Cochain(
                    complex_, p, coefficients, tuple(coefficients.scale(k, v) for v in b.values)
                )
                rep = rep + scaled
        out.append(CohomologyClass(representative=rep, space=space))
    return out


# ---------------------------------------------------------------- file I/O ----


def write_cochain(path, f: Cochain) -> None:
    lines = [
        f"degree {f.degree} group {f.group.format()} complex {complex_digest(f.base)}"
    ]
    for simplex, value in zip(simplices_of_dim(f.base, f.degree), f.values):
        lines.append(" ".join(map(str, simplex)) + "  " + " ".join(map(str, value)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_cochain(path, complex_: SimplicialComplex) -> Cochain:
    text = Path(path).read_text().splitlines()
    body = [ln for ln in text if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise ValueError(f"empty cochain file {path}")
    head = body[0].split()
    if len(head) != 6 or head[0] != "degree" or head[2] != "group" or head[4] != "complex":
        raise ValueError(f"bad cochain header {body[0]!r} in {path}")
    degree = int(head[1])
    group = parse_group(head[3])
    digest = head[5]
    if digest != complex_digest(complex_):
        raise ValueError(
            f"cochain file {path} was written for a different complex (digest {digest})"
        )
    simplices = simplices_of_dim(complex_, degree)
    values: dict[tuple[int, ...], tuple[int, ...]] = {}
    for line in body[1:]:
        toks = line.split()
        if len(toks) != degree + 1 + group.rank:
            raise ValueError(f"bad cochain line {line!r} in {path}")
        simplex = tuple(int(t) for t in toks[: degree + 1])
        value = tuple(int(t) for t in toks[degree + 1 :])
        if simplex not in complex_:
            raise ValueError(f"simplex {simplex} from {path} is not in the complex")
        values[simplex] = value
    missing = [s for s in simplices if s not in values]
    if missing:
        raise ValueError(f"cochain file {path} is missing values, first gap {missing[0]}")
    return Cochain(complex_, degree, group, tuple(values[s] for s in simplices))
