"""Brute-force checks over small prime fields: Jordan partitions by rank,
quadratic-form types, projective matrix groups by closure, and derangement
search by class intersection.

Linear algebra here goes through sympy's DomainMatrix over GF(p), separate
from the hand-written elimination in delperm.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from .numth import legendre, require_prime

__all__ = [
    "DEFAULT_CAP",
    "OracleError",
    "rank_mod_p",
    "jordan_partition",
    "classify_quadratic_form",
    "ProjectiveGroup",
    "small_group_closure",
    "psl2",
    "psl3",
    "find_a5",
    "derangement_search",
]

DEFAULT_CAP = 2_000_000


class OracleError(ValueError):
    pass


def _dm(m, p: int) -> DomainMatrix:
    rows = [[int(x) % p for x in row] for row in np.asarray(m, dtype=object)]
    return DomainMatrix([[GF(p)(x) for x in row] for row in rows], (len(rows), len(rows[0])), GF(p))


def rank_mod_p(m, p: int) -> int:
    require_prime(p)
    return _dm(m, p).rank()


def jordan_partition(m, p: int) -> list[int]:
    """Jordan block sizes (decreasing) of a unipotent matrix with m^p = 1."""
    require_prime(p)
    a = np.asarray(m, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise OracleError("matrix must be square")
    nil = (a - np.eye(n, dtype=np.int64)) % p
    ranks = [n]
    power = np.eye(n, dtype=np.int64)
    for _ in range(p):
        power = power @ nil % p
        ranks.append(rank_mod_p(power, p))
    if ranks[-1] != 0:
        raise OracleError("matrix is not unipotent of order dividing p")
    # blocks of size >= k: ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, p + 1)] + [0]
    parts = []
    for k in range(p, 0, -1):
        parts += [k] * (at_least[k - 1] - at_least[k])
    return parts


def classify_quadratic_form(gram, p: int, qdiag=None) -> str:
    """Type of a quadratic form: "plus", "minus", "odd-dim" or "degenerate".

    Odd p: gram is the matrix of the symmetric form. p = 2: gram is the
    polar (alternating) form and qdiag the values Q(e_i).
    """
    require_prime(p)
    g = np.asarray(gram, dtype=np.int64) % p
    n = g.shape[0]
    if n < 2:
        raise OracleError("need n >= 2")
    if rank_mod_p(g, p) < n:
        return "degenerate"
    if p != 2:
        if n % 2:
            return "odd-dim"
        det = int(GF(p).to_int(_dm(g, p).det()))
        square = legendre((-1) ** (n // 2) * det, p) == 1
        return "plus" if square else "minus"
    if qdiag is None:
        raise OracleError("p = 2 needs the values Q(e_i)")
    if n % 2:
        return "odd-dim"
    upper = np.triu(g, 1)
    qd = np.asarray(qdiag, dtype=np.int64) % 2
    zeros = 0
    chunk = 1 << min(n, 16)
    for hi in range(0, 1 << n, chunk):
        idx = np.arange(hi, hi + chunk, dtype=np.int64)
        x = (idx[:, None] >> np.arange(n)) & 1
        q = (x @ qd + np.einsum("ij,ij->i", x @ upper, x)) % 2
        zeros += int(np.count_nonzero(q == 0))
    plus = (1 << (n - 1)) + (1 << (n // 2 - 1))
    minus = (1 << (n - 1)) - (1 << (n // 2 - 1))
    if zeros == plus:
        return "plus"
    if zeros == minus:
        return "minus"
    raise OracleError(f"unexpected zero count {zeros}")


# projective matrix groups ---------------------------------------------------------

def _normalize(flat: tuple, p: int) -> tuple:
    lead = next(x for x in flat if x)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in flat)


@dataclass
class ProjectiveGroup:
    """A subgroup of PGL(n, p), elements stored as normalized flat tuples."""

    n: int
    p: int
    generators: tuple
    elements: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def mul(self, a: tuple, b: tuple) -> tuple:
        n, p = self.n, self.p
        out = []
        for i in range(n):
            row = a[i * n:(i + 1) * n]
            for j in range(n):
                out.append(sum(row[k] * b[k * n + j] for k in range(n)) % p)
        return _normalize(tuple(out), p)

    @property
    def identity(self) -> tuple:
        return tuple(int(i == j) for i in range(self.n) for j in range(self.n))

    def inverse(self, a: tuple) -> tuple:
        x, prev = a, self.identity
        while x != self.identity:
            prev, x = x, self.mul(x, a)
        return prev

    def order_of(self, a: tuple) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def power(self, a: tuple, k: int) -> tuple:
        out, base = self.identity, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def has_prime_order(self, a: tuple, r: int) -> bool:
        return a != self.identity and self.power(a, r) == self.identity

    def conjugacy_class(self, a: tuple) -> set:
        invs = [self.inverse(g) for g in self.generators]
        seen, todo = {a}, deque([a])
        while todo:
            x = todo.popleft()
            for g, gi in zip(self.generators, invs):
                y = self.mul(self.mul(gi, x), g)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def classes_of_order(self, r: int) -> list[set]:
        """Conjugacy classes of elements of prime order r, in canonical order."""
        require_prime(r, "r")
        done: set = set()
        out = []
        for x in self.elements:
            if x in done or not self.has_prime_order(x, r):
                continue
            cls = self.conjugacy_class(x)
            done |= cls
            out.append(cls)
        return out

    def __len__(self):
        return len(self.elements)


def small_group_closure(generators, p: int, cap: int = DEFAULT_CAP) -> ProjectiveGroup:
    """All elements of the group generated modulo scalars."""
    require_prime(p)
    mats = [np.asarray(g, dtype=np.int64) % p for g in generators]
    if not mats:
        raise OracleError("need at least one generator")
    n = mats[0].shape[0]
    gens = []
    for m in mats:
        if m.shape != (n, n) or rank_mod_p(m, p) < n:
            raise OracleError("generators must be invertible n x n matrices")
        gens.append(_normalize(tuple(int(x) for x in m.flatten()), p))
    grp = ProjectiveGroup(n, p, tuple(gens))
    ident = grp.identity
    grp.elements.append(ident)
    grp.index[ident] = 0
    todo = deque([ident])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = grp.mul(x, g)
            if y not in grp.index:
                if len(grp.elements) >= cap:
                    raise OracleError(f"closure exceeds the cap of {cap} elements")
                grp.index[y] = len(grp.elements)
                grp.elements.append(y)
                todo.append(y)
    grp.elements.sort()
    grp.index = {x: k for k, x in enumerate(grp.elements)}
    return grp


def psl2(p: int, cap: int = DEFAULT_CAP) -> ProjectiveGroup:
    return small_group_closure([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], p, cap)


def psl3(p: int, cap: int = DEFAULT_CAP) -> ProjectiveGroup:
    gens = []
    for i, j in product(range(3), repeat=2):
        if i != j:
            m = np.eye(3, dtype=np.int64)
            m[i, j] = 1
            gens.append(m)
    return small_group_closure(gens, p, cap)


def find_a5(grp: ProjectiveGroup) -> ProjectiveGroup | None:
    """A subgroup A5: the first involution a and the first b of order 3 in
    canonical order with ab of order 5."""
    invols = [x for x in grp.elements if grp.has_prime_order(x, 2)]
    if not invols:
        return None
    a = invols[0]
    for b in grp.elements:
        if grp.has_prime_order(b, 3) and grp.has_prime_order(grp.mul(a, b), 5):
            sub = _closure_from(grp, (a, b))
            if len(sub) == 60:
                return sub
    return None


def _closure_from(grp: ProjectiveGroup, gens) -> ProjectiveGroup:
    sub = ProjectiveGroup(grp.n, grp.p, tuple(gens))
    ident = grp.identity
    seen = {ident}
    todo = deque([ident])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = grp.mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    sub.elements = sorted(seen)
    sub.index = {x: k for k, x in enumerate(sub.elements)}
    return sub


def derangement_search(grp: ProjectiveGroup, h0, r: int) -> list[tuple]:
    """Representatives of the T-classes of elements of order r missing h0."""
    require_prime(r, "r")
    h0 = set(h0.elements if isinstance(h0, ProjectiveGroup) else h0)
    if not h0 <= set(grp.index):
        raise OracleError("H0 is not contained in T")
    order = len(grp)
    if order % len(h0) or (order // len(h0)) % r:
        raise OracleError(f"r={r} does not divide |T : H0|")
    return [min(cls) for cls in grp.classes_of_order(r) if not cls & h0]
