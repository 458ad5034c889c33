"""Exact linear algebra helpers: GF(p) elimination and integer Smith normal form.

Matrices over GF(p) are numpy int64 arrays reduced mod p after every row
operation.  The Smith normal form works on plain Python ints so entries can
never overflow, which is cheap at the matrix sizes produced by small
simplicial complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

__all__ = [
    "rref_mod_p",
    "rank_mod_p",
    "solve_mod_p",
    "nullspace_mod_p",
    "GfpSpan",
    "Snf",
    "smith_normal_form",
    "solve_mod_m",
    "sample_kernel_mod_m",
    "invariant_factors",
]


# ---------------------------------------------------------------- GF(p) ----


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def rref_mod_p(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a copy of `a` mod the prime `p`; returns (rref, pivot columns)."""
    m = _as_matrix(a) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        for j in range(rows):
            if j != r and m[j, c]:
                m[j] = (m[j] - m[j, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(a, p: int) -> int:
    return len(rref_mod_p(a, p)[1])


def solve_mod_p(a, b, p: int) -> Optional[np.ndarray]:
    """First solution of a x = b mod prime p (free variables set to 0), or None."""
    m = _as_matrix(a)
    rhs = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    if rhs.shape[0] != m.shape[0]:
        raise ValueError("right-hand side length does not match row count")
    aug, pivots = rref_mod_p(np.hstack([m, rhs]), p)
    if m.shape[1] in pivots:
        return None
    x = np.zeros(m.shape[1], dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = aug[r, m.shape[1]]
    return x


def nullspace_mod_p(a, p: int) -> list[np.ndarray]:
    """Basis of the right nullspace of `a` mod prime p."""
    m = _as_matrix(a)
    rref, pivots = rref_mod_p(m, p)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rref[r, f]) % p
        basis.append(v)
    return basis


class GfpSpan:
    """Incremental span tracker over GF(p), used to pick coset representatives."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self._rows: list[np.ndarray] = []
        self._lead: list[int] = []

    def insert(self, vec) -> bool:
        """Reduce `vec` against the span; add it and return True if independent."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        for row, lead in zip(self._rows, self._lead):
            if v[lead]:
                v = (v - v[lead] * row) % self.p
        hits = np.nonzero(v)[0]
        if hits.size == 0:
            return False
        lead = int(hits[0])
        v = (v * pow(int(v[lead]), self.p - 2, self.p)) % self.p
        self._rows.append(v)
        self._lead.append(lead)
        return True

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.int64) % self.p
        for row, lead in zip(self._rows, self._lead):
            if v[lead]:
                v = (v - v[lead] * row) % self.p
        return not np.any(v)

    @property
    def rank(self) -> int:
        return len(self._rows)


# ------------------------------------------------------ Smith normal form ----


@dataclass(frozen=True)
class Snf:
    """S = U A V with U, V unimodular; S diagonal with divisibility down the diagonal."""

    s: tuple[tuple[int, ...], ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    rows: int
    cols: int

    def diagonal(self) -> list[int]:
        return [self.s[i][i] for i in range(min(self.rows, self.cols))]

    def torsion(self) -> list[int]:
        return [d for d in self.diagonal() if d > 1]


def smith_normal_form(a) -> Snf:
    m = _as_matrix(a)
    rows, cols = m.shape
    s = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row_dst += k * row_src
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in s:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def pivot_at(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(s[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    t = 0
    while True:
        best = pivot_at(t)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    add_row(t, i, -q)
                    if s[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    add_col(t, j, -q)
                    if s[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # pivot must divide every remaining entry; fold a bad row in and retry
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % s[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
        if t == min(rows, cols):
            break

    freeze = lambda mat: tuple(tuple(row) for row in mat)
    return Snf(s=freeze(s), u=freeze(u), v=freeze(v), rows=rows, cols=cols)


def solve_mod_m(snf: Snf, b, m: int) -> Optional[list[int]]:
    """Solve A x = b (mod m) given the SNF of A; least solution, or None."""
    b = [int(x) for x in b]
    if len(b) != snf.rows:
        raise ValueError("right-hand side length does not match row count")
    ub = [sum(snf.u[i][k] * b[k] for k in range(snf.rows)) % m for i in range(snf.rows)]
    z = [0] * snf.cols
    diag = snf.diagonal()
    for i in range(snf.rows):
        d = diag[i] % m if i < len(diag) else 0
        rhs = ub[i]
        if d == 0:
            if rhs % m:
                return None
            continue
        g = gcd(d, m)
        if rhs % g:
            return None
        # d z = rhs (mod m)  <=>  (d/g) z = rhs/g (mod m/g)
        mm = m // g
        z[i] = (rhs // g) * pow(d // g, -1, mm) % mm
    x = [sum(snf.v[i][k] * z[k] for k in range(snf.cols)) % m for i in range(snf.cols)]
    return x


def sample_kernel_mod_m(snf: Snf, m: int, rng) -> list[int]:
    """Uniform random solution of A x = 0 (mod m) given the SNF of A."""
    z = [0] * snf.cols
    diag = snf.diagonal()
    for i in range(snf.cols):
        d = diag[i] % m if i < len(diag) else 0
        g = gcd(d, m) if d else m
        # solutions of d z = 0 mod m are the multiples of m/g
        z[i] = rng.randrange(g) * (m // g)
    return [sum(snf.v[i][k] * z[k] for k in range(snf.cols)) % m for i in range(snf.cols)]


# ------------------------------------------------------- invariant factors ----


def _prime_power_split(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out

def invariant_factors(orders) -> tuple[int, ...]:
    """Collapse a multiset of cyclic orders into invariant-factor form d1 | d2 | ..."""
    powers: dict[int, list[int]] = {}
    for n in orders:
        if n < 1:
            raise ValueError(f"cyclic order must be positive, got {n}")
        for p, e in _prime_power_split(n).items():
            powers.setdefault(p, []).append(e)
    for plist in powers.values():
        plist.sort(reverse=True)
    width = max((len(v) for v in powers.values()), default=0)
    factors = []
    for k in range(width):
        f = 1
        for p, plist in powers.items():
            if k < len(plist):
                f *= p ** plist[k]
        factors.append(f)
    factors = [f for f in factors if f > 1]
    return tuple(sorted(factors))
