"""The fully deleted permutation module V = U/(U ∩ W) for A_d over F_p.

U is the sum-zero subspace of F_p^d and W the constants. Coordinates are
taken in the basis e_i = (v_i - v_{i+1}) + (U ∩ W), i = 1..n, and matrices
act on row vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .classes import ClassLabel, involution_label, semisimple_label, unipotent_label, family_blocks
from .groups import GroupSpec, c_value
from .numth import legendre, require_prime

__all__ = [
    "DeletedModule",
    "CycleType",
    "build",
    "module_dimension",
    "epsilon_type",
    "target_group",
    "h0_structure",
    "h0_order",
    "jordan_of_cycle_shape",
    "eigen_multiplicity",
    "fuse_cycle_type",
    "permutation_matrix_on_V",
    "coords",
    "cycle_perm",
    "involution_decoration",
    "DecorationUnresolved",
]


class DecorationUnresolved(ValueError):
    """The class fusion needs data outside the module's rules."""


def module_dimension(d: int, p: int) -> int:
    return d - 2 if d % p == 0 else d - 1


@dataclass(frozen=True, eq=False)
class DeletedModule:
    d: int
    p: int
    n: int
    gram: np.ndarray
    form_kind: str
    epsilon: int | None
    qdiag: np.ndarray | None = None  # Q(e_i) for p = 2 quadratic forms

    def quadratic(self, x) -> int:
        """Q(v) for the coordinate vector x."""
        x = np.asarray(x, dtype=np.int64) % self.p
        if self.p == 2:
            if self.qdiag is None:
                raise ValueError("no quadratic form in the symplectic case")
            upper = np.triu(self.gram, 1)
            return int((self.qdiag @ x + x @ upper @ x) % 2)
        inv2 = (self.p + 1) // 2
        return int(x @ self.gram @ x * inv2 % self.p)


def build(d: int, p: int) -> DeletedModule:
    if d < 5:
        raise ValueError("d must be at least 5")
    require_prime(p)
    n = module_dimension(d, p)
    gram = (2 * np.eye(n, dtype=np.int64) - np.eye(n, k=1, dtype=np.int64)
            - np.eye(n, k=-1, dtype=np.int64)) % p
    if p == 2 and d % 4 == 2:
        return DeletedModule(d, p, n, gram, "symplectic", None)
    if p == 2:
        # every e_i has two nonzero coordinates, so Q(e_i) = 1
        return DeletedModule(d, p, n, gram, "quadratic-even", epsilon_type(d, p),
                             np.ones(n, dtype=np.int64))
    kind = "quadratic-odd" if n % 2 else "quadratic-even"
    eps = epsilon_type(d, p)
    return DeletedModule(d, p, n, gram, kind, None if eps == "odd-dimensional" else eps)


def epsilon_type(d: int, p: int):
    """Witt type (+1 or -1) of the form on V, or "odd-dimensional"."""
    require_prime(p)
    n = module_dimension(d, p)
    if p == 2:
        if d % 4 == 2:
            raise ValueError("d = 2 mod 4, p = 2: the form is symplectic")
        if d % 2 == 0:
            return 1 if d % 8 == 0 else -1
        return 1 if d % 8 in (1, 7) else -1
    if n % 2:
        return "odd-dimensional"
    return 1 if legendre(n + 1, p) == (-1) ** (n * (p - 1) // 4) else -1


def target_group(d: int, p: int) -> GroupSpec:
    """The simple classical group containing the image of A_d."""
    n = module_dimension(d, p)
    if p == 2 and d % 4 == 2:
        return GroupSpec("PSp", n, 2)
    if n % 2:
        return GroupSpec("OmegaOdd", n, p)
    return GroupSpec("POmegaPlus" if epsilon_type(d, p) == 1 else "POmegaMinus", n, p)


def h0_structure(d: int, p: int) -> str:
    """"S_d" or "A_d": the intersection of the symmetric group with T."""
    if d < 5:
        raise ValueError("d must be at least 5")
    n = module_dimension(d, p)
    if p == 2 and d % 4 == 2:
        return "S_d"
    if (n * p) % 2 and legendre((n + 1) // 2, p) == 1:
        return "S_d"
    return "A_d"


def h0_order(d: int, p: int) -> int:
    return factorial(d) // (1 if h0_structure(d, p) == "S_d" else 2)


@dataclass(frozen=True)
class CycleType:
    """The permutation shape (r^h, 1^s)."""

    r: int
    h: int
    s: int

    def __post_init__(self):
        require_prime(self.r, "r")
        if self.h < 1 or self.s < 0:
            raise ValueError("need h >= 1 and s >= 0")

    @property
    def d(self) -> int:
        return self.r * self.h + self.s

    @property
    def even(self) -> bool:
        return self.r % 2 == 1 or self.h % 2 == 0

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        """Parse "3^2,1^2" style shapes."""
        r = h = None
        s = 0
        for item in text.split(","):
            base, _, exp = item.strip().partition("^")
            base, exp = int(base), int(exp or 1)
            if base == 1:
                s += exp
            elif r is None:
                r, h = base, exp
            else:
                raise ValueError(f"shape {text!r} has two cycle lengths")
        if r is None:
            raise ValueError(f"shape {text!r} has no nontrivial cycle")
        return cls(r, h, s)

    def __str__(self):
        return f"{self.r}^{self.h}" + (f",1^{self.s}" if self.s else "")


def _check_shape(ct: CycleType, d: int):
    if ct.d != d:
        raise ValueError(f"shape {ct} does not have degree {d}")
    if d < 5:
        raise ValueError("d must be at least 5")


def jordan_of_cycle_shape(ct: CycleType, d: int, p: int) -> ClassLabel:
    """Jordan form on V of a permutation of shape (p^h, 1^s)."""
    _check_shape(ct, d)
    if ct.r != p:
        raise ValueError("the cycle length must equal p")
    h, s = ct.h, ct.s
    if s >= 1:
        blocks = [p] * h + [1] * (s - (2 if d % p == 0 else 1))
    elif h % p:
        blocks = [p] * (h - 1) + [p - 2]
    elif h != 2:
        blocks = [p] * (h - 2) + [p - 1] * 2
    else:
        blocks = [2]
    return unipotent_label(blocks, p)


def eigen_multiplicity(ct: CycleType, d: int, p: int) -> tuple[int, int]:
    """(multiplicity of each nontrivial r-th root, multiplicity of 1)."""
    _check_shape(ct, d)
    if ct.r == p:
        raise ValueError("needs r != p")
    n = module_dimension(d, p)
    trivial = n - ct.h * (ct.r - 1)
    if trivial < 0:
        raise ValueError(f"shape {ct} is inconsistent with dim V = {n}")
    return ct.h, trivial


def cycle_perm(ct: CycleType) -> tuple[int, ...]:
    """A permutation of {0..d-1} with the given shape."""
    img = list(range(ct.d))
    for b in range(ct.h):
        base = b * ct.r
        for j in range(ct.r):
            img[base + j] = base + (j + 1) % ct.r
    return tuple(img)


def coords(u, d: int, p: int) -> np.ndarray:
    """Coordinates in the basis e_i of the image of u in U."""
    u = np.asarray(u, dtype=np.int64) % p
    if u.sum() % p:
        raise ValueError("vector is not in U")
    n = module_dimension(d, p)
    if d % p == 0:
        u = (u - u[-1]) % p
    return np.cumsum(u)[:n] % p


def permutation_matrix_on_V(perm, dm: DeletedModule) -> np.ndarray:
    """Matrix of the permutation perm (perm[i] = image of i) on V."""
    d, p = dm.d, dm.p
    if sorted(perm) != list(range(d)):
        raise ValueError("not a permutation of the d points")
    rows = []
    for i in range(dm.n):
        u = np.zeros(d, dtype=np.int64)
        u[perm[i]] += 1
        u[perm[i + 1]] -= 1
        rows.append(coords(u, d, p))
    return np.array(rows, dtype=np.int64) % p


def involution_decoration(x: np.ndarray, dm: DeletedModule) -> str:
    """Aschbacher-Seitz type (a, b or c) of an involution, p = 2."""
    if dm.p != 2:
        raise ValueError("decorations here are for p = 2")
    n = dm.n
    k = _rank_mod_p((x + np.eye(n, dtype=np.int64)) % 2, 2)
    if k % 2:
        return f"b{k}"
    a = dm.gram @ x.T % 2  # v -> B(v, vx) has matrix a
    alternating = not np.any(np.diag(a)) and not np.any((a + a.T) % 2)
    return f"{'a' if alternating else 'c'}{k}"


def _rank_mod_p(m: np.ndarray, p: int) -> int:
    m = np.array(m, dtype=np.int64) % p
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if m[i, col]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] * pow(int(m[rank, col]), -1, p) % p
        for i in range(rows):
            if i != rank and m[i, col]:
                m[i] = (m[i] - m[i, col] * m[rank]) % p
        rank += 1
    return rank


def fuse_cycle_type(ct: CycleType, d: int, p: int, spec: GroupSpec | None = None) -> ClassLabel:
    """T-class label of the permutations of shape ct."""
    _check_shape(ct, d)
    target = target_group(d, p)
    if spec is not None and spec != target:
        raise ValueError(f"A_{d} over F_{p} embeds in {target}, not {spec}")
    n, r = target.n, ct.r
    if r == p == 2:
        dm = build(d, p)
        x = permutation_matrix_on_V(cycle_perm(ct), dm)
        jordan = jordan_of_cycle_shape(ct, d, p).jordan
        return involution_label(n, None, involution_decoration(x, dm), jordan)
    if r == p:
        return jordan_of_cycle_shape(ct, d, p)
    if r == 2:
        h = ct.h
        if target.family == "OmegaOdd":
            minus = h if h % 2 == 0 else n - h
        elif h % 2:
            raise DecorationUnresolved("odd involutions lie outside the socle")
        else:
            minus = min(h, n - h)
        return involution_label(n, minus, f"t{minus // 2}")
    h, _ = eigen_multiplicity(ct, d, p)
    c = c_value(target, r)
    return semisimple_label(n, r, {min(b): h for b in family_blocks(target, r)}, c)
