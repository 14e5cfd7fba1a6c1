"""Simple classical group descriptors, their orders, the c-invariant and
the bounds on the number kappa(T, r) of classes of subgroups of order r."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

from .numth import phi_rq, require_prime

__all__ = [
    "FAMILIES",
    "ORTHOGONAL",
    "GroupSpec",
    "KappaReport",
    "group_order",
    "c_value",
    "kappa_rules",
    "kappa_monotone_check",
]

FAMILIES = ("PSL", "PSU", "PSp", "POmegaPlus", "POmegaMinus", "OmegaOdd")
ORTHOGONAL = ("POmegaPlus", "POmegaMinus", "OmegaOdd")

_NAMES = {
    "PSL": "PSL", "PSU": "PSU", "PSp": "PSp",
    "POmegaPlus": "POmega+", "POmegaMinus": "POmega-", "OmegaOdd": "Omega",
}


@dataclass(frozen=True, order=True)
class GroupSpec:
    """A finite simple classical group over F_q, q = p^f."""

    family: str
    n: int
    p: int
    f: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        require_prime(self.p)
        if self.f < 1:
            raise ValueError("f must be positive")
        n, q = self.n, self.q
        fam = self.family
        if fam == "PSL":
            ok = n >= 3 or (n == 2 and q >= 4)
        elif fam == "PSU":
            ok = n >= 3 and (n, q) != (3, 2)
        elif fam == "PSp":
            # PSp4(2) is read as its derived group PSp4(2)' = A6
            ok = n >= 4 and n % 2 == 0
        elif fam == "OmegaOdd":
            ok = n >= 7 and n % 2 == 1 and self.p % 2 == 1
        else:
            ok = n >= 8 and n % 2 == 0
        if not ok:
            raise ValueError(f"{self} is not a simple classical group in the supported range")

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def epsilon(self) -> int:
        """Sign for PSL^e / POmega^e (0 for the other families)."""
        return {"PSL": 1, "PSU": -1, "POmegaPlus": 1, "POmegaMinus": -1}.get(self.family, 0)

    @property
    def orthogonal(self) -> bool:
        return self.family in ORTHOGONAL

    def __str__(self):
        return f"{_NAMES[self.family]}_{self.n}({self.q})"

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "p": self.p, "f": self.f}


def _raw_order(spec: GroupSpec) -> int:
    n, q, fam = spec.n, spec.q, spec.family
    if fam == "PSL":
        return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1)) // gcd(n, q - 1)
    if fam == "PSU":
        return (q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(2, n + 1))
                // gcd(n, q + 1))
    m = n // 2
    if fam in ("PSp", "OmegaOdd"):
        return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1)) // gcd(2, q - 1)
    e = spec.epsilon
    return (q ** (m * (m - 1)) * (q**m - e) * prod(q ** (2 * i) - 1 for i in range(1, m))
            // gcd(4, q**m - e))


def group_order(spec: GroupSpec) -> int:
    """|T| for the simple group described by spec."""
    if spec.family == "PSp" and spec.n == 4 and spec.q == 2:
        return 360
    return _raw_order(spec)


def c_value(spec: GroupSpec, r: int) -> int:
    """The c-invariant: the dimension of a minimal nontrivial block of an
    element of order r != p."""
    require_prime(r, "r")
    if r == spec.p:
        raise ValueError("c is undefined for r = p")
    if r == 2:
        raise ValueError("c is undefined for r = 2")
    i = phi_rq(r, spec.q)
    if i % 2 == 1 and spec.family != "PSL":
        return 2 * i
    if i % 4 == 2 and spec.family == "PSU":
        return i // 2
    return i


@dataclass(frozen=True)
class KappaReport:
    lower: int
    m: int
    delta: int
    exact: int | None = None
    upper: int | None = None
    rule: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.exact is not None and not self.lower <= self.exact:
            raise ValueError("exact below lower bound")
        if self.upper is not None and self.exact is not None and self.exact > self.upper:
            raise ValueError("exact above upper bound")

    def contains(self, k: int) -> bool:
        if k < self.lower or (self.upper is not None and k > self.upper):
            return False
        return self.exact is None or self.exact == k

    def to_dict(self) -> dict:
        return {"exact": self.exact, "lower": self.lower, "upper": self.upper,
                "m": self.m, "delta": self.delta, "rule": list(self.rule)}


def _small_rank_upper(spec: GroupSpec, r: int, c: int) -> int | None:
    # bounds for PSL^e_n(q), r >= 5 dividing q^2 - 1
    if spec.family not in ("PSL", "PSU") or r < 5 or (spec.q**2 - 1) % r:
        return None
    return {(3, 1): r - 1, (4, 1): (r * r - 3 * r + 6) // 2,
            (6, 2): (r * r + 15) // 8}.get((spec.n, c))


def kappa_rules(spec: GroupSpec, r: int) -> KappaReport:
    """Bounds on kappa(T, r) for an odd prime r != p with c >= 2.

    Also accepts c = 1 for PSL^e_n(q) with n in {3, 4}, where only the
    small-rank upper bound is available.
    """
    require_prime(r, "r")
    if r == 2 or r == spec.p:
        raise ValueError("kappa rules need an odd prime r != p")
    if group_order(spec) % r:
        raise ValueError(f"r={r} does not divide |{spec}|")
    n, c = spec.n, c_value(spec, r)
    m = n // c
    if c < 2:
        upper = _small_rank_upper(spec, r, c)
        if upper is None:
            raise ValueError(f"c = {c} < 2: use exact enumeration")
        return KappaReport(lower=1, m=m, delta=0, upper=upper, rule=("small-rank",))
    delta = int(spec.orthogonal and n == m * c)
    lower, rules = max(m - delta, 1), ["floor.iii"]
    exact = upper = None
    if m == 1 or (spec.family == "POmegaMinus" and 2 * c == n):
        exact = upper = 1
        rules.append("floor.i")
    elif m == 2 and not (spec.family == "POmegaPlus" and 2 * c == n):
        upper = (r - 1) // c + 1
        rules.append("floor.ii")
    small = _small_rank_upper(spec, r, c)
    if small is not None and (upper is None or small < upper):
        upper = small
        rules.append("small-rank")
    if exact is None:
        lower = max(lower, 2)
    return KappaReport(lower=lower, m=m, delta=delta, exact=exact, upper=upper,
                       rule=tuple(rules))


def kappa_monotone_check(spec1: GroupSpec, spec2: GroupSpec, r: int, *,
                         check_hypotheses: bool = True) -> bool:
    """True iff the enumerated kappa(T2, r) exceeds kappa(T1, r).

    check_hypotheses=False skips the c and rank conditions, for probing
    pairs outside them.
    """
    from .classes import enumerate_subgroup_classes

    if spec1.q != spec2.q:
        raise ValueError("both groups must be over the same field")
    if check_hypotheses:
        c1, c2 = c_value(spec1, r), c_value(spec2, r)
        if not c1 >= c2 >= 2:
            raise ValueError(f"need c1 >= c2 >= 2, got {c1}, {c2}")
        if spec2.n <= 2 * spec1.n:
            raise ValueError("need n2 > 2 n1")
    return len(enumerate_subgroup_classes(spec2, r)) > len(enumerate_subgroup_classes(spec1, r))
