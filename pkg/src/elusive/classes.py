"""Conjugacy classes of elements and subgroups of prime order r in the
simple classical groups, described by class labels.

Semisimple labels are eigenvalue multisets: an element of order r != p is
recorded by how often each block of eigenvalues occurs, where a block is
an orbit of exponents k in {1..r-1} (standing for w^k, w a fixed r-th root
of unity) under the group of exponent multipliers that the family forces
to act on an eigenvalue multiset: <q> for PSL, <-q> for PSU and <q, -1>
for the symplectic and orthogonal groups. Blocks have size c.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd

from .groups import GroupSpec, c_value, group_order
from .numth import p_bounded_partitions, phi_rq, require_prime, valuation

__all__ = [
    "FrobeniusOrbitSystem",
    "ClassLabel",
    "root_orbits",
    "family_blocks",
    "enumerate_element_classes",
    "enumerate_subgroup_classes",
    "scale_label",
    "nu_of_label",
    "gs_bound_exceeds",
    "guralnick_saxl_witness",
    "semisimple_label",
    "unipotent_label",
    "involution_label",
    "involution_class_count",
]


def _orbits(r: int, gens: tuple[int, ...]) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for k in range(1, r):
        if k in seen:
            continue
        orb, todo = {k}, [k]
        while todo:
            x = todo.pop()
            for g in gens:
                y = x * g % r
                if y not in orb:
                    orb.add(y)
                    todo.append(y)
        seen |= orb
        out.append(frozenset(orb))
    return out


@dataclass(frozen=True)
class FrobeniusOrbitSystem:
    r: int
    q: int
    i: int
    orbits: tuple[tuple[int, ...], ...]
    inverse_pairing: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.orbits)


def root_orbits(r: int, q: int) -> FrobeniusOrbitSystem:
    """Orbits of w -> w^q on the nontrivial r-th roots of unity."""
    require_prime(r, "r")
    i = phi_rq(r, q)
    orbs = sorted(tuple(sorted(o)) for o in _orbits(r, (q % r,)))
    index = {k: j for j, o in enumerate(orbs) for k in o}
    pairing = tuple(index[(r - o[0]) % r] for o in orbs)
    return FrobeniusOrbitSystem(r, q, i, tuple(orbs), pairing)


def family_blocks(spec: GroupSpec, r: int) -> list[frozenset[int]]:
    """Exponent blocks of size c, sorted by least exponent."""
    q = spec.q % r
    gens = {"PSL": (q,), "PSU": (-q % r,)}.get(spec.family, (q, r - 1))
    return sorted(_orbits(r, gens), key=min)


@dataclass(frozen=True, order=True)
class ClassLabel:
    """Label of a class of elements of prime order r.

    kind is "Semisimple", "Unipotent" or "Involution".
    Semisimple: blocks = ((least exponent of block, multiplicity), ...),
    block size c, e = dim of the 1-eigenspace; twist = a nonzero residue
    mod r for elements whose preimage has order r^2 (all eigenvalues
    in one coset of the r-th roots of unity), else 0.
    Unipotent: jordan = block sizes, weakly decreasing.
    Involution: minus = dim of the (-1)-eigenspace (None when x^2 is a
    nontrivial scalar), or for p = 2 the Jordan blocks, with a decoration.
    nclasses counts the T-classes sharing this label.
    """

    kind: str
    n: int
    r: int
    blocks: tuple[tuple[int, int], ...] = ()
    c: int = 0
    e: int = 0
    twist: int = 0
    jordan: tuple[int, ...] = ()
    minus: int | None = None
    decoration: str = ""
    nclasses: int = field(default=1, compare=False)

    @property
    def splits(self) -> bool:
        return self.nclasses > 1

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "n": self.n, "r": self.r, "text": str(self)}
        if self.kind == "Semisimple":
            d.update(blocks=[list(b) for b in self.blocks], c=self.c, e=self.e)
            if self.twist:
                d["twist"] = self.twist
        elif self.kind == "Unipotent":
            d["jordan"] = list(self.jordan)
        else:
            d.update(minus=self.minus, jordan=list(self.jordan), decoration=self.decoration)
        if self.nclasses != 1:
            d["nclasses"] = self.nclasses
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ClassLabel":
        return cls(
            kind=d["kind"], n=d["n"], r=d["r"],
            blocks=tuple(tuple(b) for b in d.get("blocks", ())),
            c=d.get("c", 0), e=d.get("e", 0), twist=d.get("twist", 0),
            jordan=tuple(d.get("jordan", ())), minus=d.get("minus"),
            decoration=d.get("decoration", ""), nclasses=d.get("nclasses", 1),
        )

    def __str__(self):
        if self.kind == "Semisimple":
            if self.twist:
                return f"[w^{self.twist}-coset^{self.n // self.r}]"
            parts = [f"L{k}" + (f"^{a}" if a > 1 else "") for k, a in self.blocks]
            if self.e:
                parts.append(f"I_{self.e}")
            return "[" + ", ".join(parts) + "]"
        if self.kind == "Unipotent" or self.minus is None and self.jordan:
            out = "[" + ", ".join(_jordan_text(self.jordan)) + "]"
            return out + (f" {self.decoration}" if self.decoration else "")
        if self.minus is None:
            return self.decoration
        out = f"[-I_{self.minus}, I_{self.n - self.minus}]"
        return out + (f" {self.decoration}" if self.decoration else "")


def _jordan_text(jordan: tuple[int, ...]) -> list[str]:
    out = []
    for size in sorted(set(jordan), reverse=True):
        k = jordan.count(size)
        out.append(f"J_{size}" + (f"^{k}" if k > 1 else ""))
    return out


def semisimple_label(n, r, mults: dict[int, int], c, nclasses=1) -> ClassLabel:
    blocks = tuple(sorted((k, a) for k, a in mults.items() if a))
    e = n - c * sum(a for _, a in blocks)
    if e < 0:
        raise ValueError("blocks exceed the dimension")
    return ClassLabel("Semisimple", n, r, blocks=blocks, c=c, e=e, nclasses=nclasses)


def unipotent_label(jordan, r, nclasses=1, decoration="") -> ClassLabel:
    j = tuple(sorted((x for x in jordan if x > 0), reverse=True))
    return ClassLabel("Unipotent", sum(j), r, jordan=j, nclasses=nclasses,
                      decoration=decoration)


def involution_label(n, minus=None, decoration="", jordan=(), nclasses=1) -> ClassLabel:
    j = tuple(sorted(jordan, reverse=True))
    return ClassLabel("Involution", n, 2, minus=minus, jordan=j, decoration=decoration,
                      nclasses=nclasses)


# semisimple classes --------------------------------------------------------

def _orth_ok(spec: GroupSpec, i: int, k: int, e: int) -> bool:
    # a block of an element with i even spans a minus-type c-space,
    # with i odd a plus-type one; e = 0 forces the product of types to be
    # the type of V
    if spec.family not in ("POmegaPlus", "POmegaMinus") or e > 0:
        return True
    sign = (-1) ** k if i % 2 == 0 else 1
    return sign == spec.epsilon


def _semisimple_classes(spec: GroupSpec, r: int) -> list[ClassLabel]:
    c = c_value(spec, r)
    if c == 1:
        return _c1_classes(spec, r)
    n, i = spec.n, phi_rq(r, spec.q)
    reps = [min(b) for b in family_blocks(spec, r)]
    out = []
    for k in range(1, n // c + 1):
        e = n - k * c
        if not _orth_ok(spec, i, k, e):
            continue
        split = 2 if spec.orthogonal and e == 0 else 1
        for combo in combinations_with_replacement(reps, k):
            mults: dict[int, int] = {}
            for b in combo:
                mults[b] = mults.get(b, 0) + 1
            out.append(semisimple_label(n, r, mults, c, split))
    return out


def _in_power_subgroup(x: int, N: int, n: int) -> bool:
    # is g^x in <g^n> for g generating a cyclic group of order N
    return x % gcd(n, N) == 0


def _c1_canon(cnt: tuple[int, ...]) -> tuple[int, ...]:
    r = len(cnt)
    return max(cnt[s:] + cnt[:s] for s in range(r))


@lru_cache(maxsize=None)
def _compositions(n: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 1:
        return ((n,),)
    return tuple((a,) + rest for a in range(n, -1, -1) for rest in _compositions(n - a, parts - 1))


def _c1_classes(spec: GroupSpec, r: int) -> list[ClassLabel]:
    # PSL^e_n(q) with r | q - e: work in PGL^e modulo scalars
    if spec.family not in ("PSL", "PSU"):
        raise ValueError("c = 1 only occurs for PSL and PSU")
    n, N = spec.n, spec.q - spec.epsilon
    # g = generator of the scalars Z, order N; w = g^(N/r)
    det_free = valuation(N, r) > valuation(n, r)
    seen, out = set(), []
    for cnt in _compositions(n, r):
        if max(cnt) == n:
            continue
        canon = _c1_canon(cnt)
        if canon in seen:
            continue
        seen.add(canon)
        s = sum(j * a for j, a in enumerate(canon)) % r
        if s and not det_free:
            continue
        out.append(_c1_label(spec, r, canon))
    if n % r == 0:
        for a in range(1, r):
            if any(_in_power_subgroup(x * n // r, N, n) for x in range(a, N, r)):
                out.append(ClassLabel("Semisimple", n, r, c=1, twist=a))
    return out


def _c1_label(spec, r, cnt) -> ClassLabel:
    return ClassLabel("Semisimple", spec.n, r,
                      blocks=tuple((j, a) for j, a in enumerate(cnt) if j and a),
                      c=1, e=cnt[0])


# unipotent and involution classes -------------------------------------------

def _partition_ok(family: str, parts: tuple[int, ...]) -> bool:
    for size in set(parts):
        mult = parts.count(size)
        if family == "PSp" and size % 2 == 1 and mult % 2:
            return False
        if family in ("POmegaPlus", "POmegaMinus", "OmegaOdd") and size % 2 == 0 and mult % 2:
            return False
    return True


def _unipotent_classes(spec: GroupSpec) -> list[ClassLabel]:
    p = spec.p
    if p == 2 and spec.family not in ("PSL", "PSU"):
        return _even_char_involutions(spec)
    out = []
    for lam in p_bounded_partitions(spec.n, p):
        if lam.parts[0] == 1 or not _partition_ok(spec.family, lam.parts):
            continue
        split = gcd(lam.d, spec.q - spec.epsilon) if spec.family in ("PSL", "PSU") else 1
        out.append(unipotent_label(lam.parts, p, split))
    return out


def _even_char_involutions(spec: GroupSpec) -> list[ClassLabel]:
    # Aschbacher-Seitz labels a_l, b_l, c_l for Sp_n(q) and Omega^e_n(q), q even
    n, m = spec.n, spec.n // 2
    out = []
    for ell in range(1, m + 1):
        jordan = (2,) * ell + (1,) * (n - 2 * ell)
        if ell % 2:
            if spec.family == "PSp":
                out.append(involution_label(n, None, f"b{ell}", jordan))
            continue
        if ell < m or spec.family != "POmegaMinus":
            split = 2 if (spec.family == "POmegaPlus" and ell == m) else 1
            out.append(involution_label(n, None, f"a{ell}", jordan, split))
        out.append(involution_label(n, None, f"c{ell}", jordan))
    return out


def involution_class_count(spec: GroupSpec) -> int:
    """Number of Inndiag(T)-classes of involutions lying in T."""
    return len(_involutions(spec))


def _involutions(spec: GroupSpec) -> list[ClassLabel]:
    n, p = spec.n, spec.p
    if p == 2:
        return _unipotent_classes(spec)
    fam = spec.family
    if fam in ("PSL", "PSU"):
        N = spec.q - spec.epsilon
        out = []
        minus_one_ok = valuation(N, 2) > valuation(n, 2)  # -1 is an n-th power in Z
        for k in range(1, n // 2 + 1):
            if k % 2 == 0 or minus_one_ok:
                out.append(involution_label(n, k, f"t{k}"))
        if n % 2 == 0:
            # x^2 = g, g a generator of Z: det(x) = (-g)^(n/2)
            x = ((N // 2 + 1) * (n // 2)) % N
            if _in_power_subgroup(x, N, n):
                out.append(involution_label(n, None, f"t{n // 2}'"))
        return out
    if fam == "PSp":
        out = [involution_label(n, 2 * k, f"t{k}") for k in range(1, n // 4 + 1)]
        out += [involution_label(n, None, f"t{n // 2}"), involution_label(n, None, f"t{n // 2}'")]
        return out
    if fam == "OmegaOdd":
        return [involution_label(n, 2 * k, f"t{k}") for k in range(1, (n - 1) // 2 + 1)]
    return _even_orthogonal_involutions(spec)


def _even_orthogonal_involutions(spec: GroupSpec) -> list[ClassLabel]:
    # only the classes that decide elusivity for the alternating-group
    # actions are resolved: one class [-I_2l, I_n-2l] for each 2l <= n/2,
    # plus the extra classes singled out by n mod 4 and p mod 8
    n, p, e = spec.n, spec.p, spec.epsilon
    out = [involution_label(n, 2 * k, f"t{k}") for k in range(1, n // 4 + 1)]
    if n % 4 == 0 or (p - e) % 8 == 0:
        out.append(involution_label(n, None, f"t{n // 2}"))
    elif (p + e) % 4 == 0:
        out.append(involution_label(n, 2, "t1'"))
    return out


# public enumeration ---------------------------------------------------------

def _check_divides(spec: GroupSpec, r: int):
    require_prime(r, "r")
    if group_order(spec) % r:
        raise ValueError(f"r={r} does not divide |{spec}|")


def enumerate_element_classes(spec: GroupSpec, r: int) -> list[ClassLabel]:
    """Labels of the classes of elements of order r in T."""
    _check_divides(spec, r)
    if r == spec.p:
        return _unipotent_classes(spec)
    if r == 2:
        return _involutions(spec)
    return _semisimple_classes(spec, r)


def scale_label(label: ClassLabel, k: int, spec: GroupSpec) -> ClassLabel:
    """Label of x^k, for k coprime to r."""
    r = label.r
    if label.kind != "Semisimple":
        return label
    if label.twist:
        return replace(label, twist=label.twist * k % r)
    if label.c == 1:
        cnt = [0] * r
        cnt[0] = label.e
        for j, a in label.blocks:
            cnt[j * k % r] += a
        return _c1_label(spec, r, _c1_canon(tuple(cnt)))
    rep = {x: min(b) for b in family_blocks(spec, r) for x in b}
    mults: dict[int, int] = {}
    for j, a in label.blocks:
        t = rep[j * k % r]
        mults[t] = mults.get(t, 0) + a
    return semisimple_label(label.n, r, mults, label.c, label.nclasses)


def enumerate_subgroup_classes(spec: GroupSpec, r: int) -> list[tuple[ClassLabel, ...]]:
    """Classes of subgroups of order r, each given by the labels of its
    generators; the number of entries is kappa(T, r)."""
    require_prime(r, "r")
    if r == 2 or r == spec.p:
        raise ValueError("subgroup classes are enumerated for odd r != p only")
    labels = enumerate_element_classes(spec, r)
    index = {lab: j for j, lab in enumerate(labels)}
    done: set[int] = set()
    out = []
    for j, lab in enumerate(labels):
        if j in done:
            continue
        orbit = {scale_label(lab, k, spec) for k in range(1, r)}
        missing = [o for o in orbit if o not in index]
        if missing:
            raise RuntimeError(f"power map leaves the label set: {missing[0]}")
        done |= {index[o] for o in orbit}
        out.append(tuple(sorted(orbit)))
    return out


# nu and the Guralnick-Saxl bound ------------------------------------------

def nu_of_label(label: ClassLabel, spec: GroupSpec | None = None) -> int:
    """Codimension of the largest eigenspace over the algebraic closure."""
    n = label.n
    if label.kind == "Semisimple":
        if label.twist:
            return n - n // label.r
        return n - max([label.e] + [a for _, a in label.blocks])
    if label.kind == "Unipotent" or label.minus is None and label.jordan:
        return n - len(label.jordan)
    if label.minus is None:
        return n // 2
    return min(label.minus, n - label.minus)


def gs_bound_exceeds(nu: int, n: int) -> bool:
    """nu > max(2, sqrt(n)/2), compared exactly."""
    return nu > 2 and 4 * nu * nu > n


def guralnick_saxl_witness(spec: GroupSpec, r: int) -> ClassLabel | None:
    """A class of order r with nu <= max(2, sqrt(n)/2), if one exists."""
    require_prime(r, "r")
    n = spec.n
    if n < 6:
        raise ValueError("needs n >= 6")
    if group_order(spec) % r:
        return None
    if r == spec.p:
        if r == 2 and spec.family not in ("PSL", "PSU"):
            return involution_label(n, None, "c2", (2, 2) + (1,) * (n - 4))
        return unipotent_label((2, 2) + (1,) * (n - 4), r)
    if r == 2:
        # [-I_2, I_n-2]: named t2 in PSL/PSU, t1 elsewhere
        return involution_label(n, 2, "t2" if spec.family in ("PSL", "PSU") else "t1")
    c = c_value(spec, r)
    if c == 1:
        cnt = [0] * r
        cnt[0], cnt[1], cnt[r - 1] = n - 2, 1, 1
        return _c1_label(spec, r, _c1_canon(tuple(cnt)))
    if gs_bound_exceeds(c, n):
        return None
    rep = min(family_blocks(spec, r)[0])
    return semisimple_label(n, r, {rep: 1}, c)
