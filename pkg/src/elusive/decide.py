"""The elusivity decision engine for primitive actions with point
stabiliser in the non-geometric collection.

Three independent routes are offered: decide_elusive follows the main
classification branch by branch, decide_kappa_corollary goes through the
number kappa(T, r) of classes of subgroups of order r, and
a_collection_coverage fuses permutation classes of A_d or S_d into T for
the alternating-group cases directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from .classes import (ClassLabel, enumerate_element_classes, enumerate_subgroup_classes,
                      guralnick_saxl_witness)
from .conditions import ConditionError, eval_arith, eval_condition
from .delperm import (CycleType, DecorationUnresolved, fuse_cycle_type, h0_order, h0_structure,
                      target_group)
from .groups import GroupSpec, c_value, group_order, kappa_rules
from .numth import legendre, p_bounded_partitions, phi_rq, prime_power, require_prime, valuation
from .tables import Tables, load_tables

__all__ = [
    "PreconditionError",
    "SubgroupCase",
    "Verdict",
    "CoverageReport",
    "resolve_case",
    "degree_divisible",
    "star_clause",
    "diamond_clause",
    "box_clause",
    "conditions_star",
    "conditions_diamond",
    "conditions_box",
    "a_case_row",
    "a_case_clause",
    "kappa_is_one",
    "kappa_value",
    "decide_elusive",
    "decide_kappa_corollary",
    "decide_subfield_corollary",
    "subfield_atom",
    "a_collection_coverage",
]


class PreconditionError(ValueError):
    """The query lies outside the hypotheses of the classification."""

    def __init__(self, message: str, degree_divisible: bool = True):
        super().__init__(message)
        self.degree_divisible = degree_divisible


# cases ----------------------------------------------------------------------

_KINDS = ("A", "B", "lowdim", "S")


@dataclass(frozen=True)
class SubgroupCase:
    """Which member of the collection the point stabiliser is.

    kind "A": S = A_d on the fully deleted module (needs d);
    kind "B": a row B1..B18 (case_id "B5" etc.);
    kind "lowdim": a named low-dimensional case (case_id "L2-A5" etc.);
    kind "S": any other member, given by socle name and order; h0_order
    overrides |H cap T| when it differs from the socle order.
    """

    kind: str
    d: int | None = None
    case_id: str | None = None
    socle: str | None = None
    socle_order: int | None = None
    h0_order: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown case kind {self.kind!r}")
        if self.kind == "A" and (self.d is None or self.d < 5):
            raise ValueError("an A case needs d >= 5")
        if self.kind in ("B", "lowdim") and not self.case_id:
            raise ValueError(f"a {self.kind} case needs a row id")
        if self.kind == "S" and (not self.socle or not self.socle_order or self.socle_order < 2):
            raise ValueError("an S case needs a socle name and order")

    @classmethod
    def parse(cls, text: str) -> "SubgroupCase":
        """Parse 'A:d=16', 'B:5', 'lowdim:L2-A5' or 'S:name,order=N[,h0=M]'."""
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        rest = rest.strip()
        if kind == "A":
            m = re.fullmatch(r"d=(\d+)", rest)
            if not m:
                raise ValueError(f"bad A case {text!r}")
            return cls("A", d=int(m.group(1)))
        if kind == "B":
            m = re.fullmatch(r"B?(\d+)", rest)
            if not m:
                raise ValueError(f"bad B case {text!r}")
            return cls("B", case_id=f"B{int(m.group(1))}")
        if kind == "lowdim":
            return cls("lowdim", case_id=rest)
        if kind == "S":
            name, *opts = [x.strip() for x in rest.split(",")]
            kv = dict(o.split("=", 1) for o in opts)
            if "order" not in kv or set(kv) - {"order", "h0"}:
                raise ValueError(f"bad S case {text!r}")
            return cls("S", socle=name, socle_order=int(kv["order"]),
                       h0_order=int(kv["h0"]) if "h0" in kv else None)
        raise ValueError(f"unknown case syntax {text!r}")

    def __str__(self):
        if self.kind == "A":
            return f"A:d={self.d}"
        if self.kind in ("B", "lowdim"):
            return f"{self.kind}:{self.case_id}"
        extra = f",h0={self.h0_order}" if self.h0_order else ""
        return f"S:{self.socle},order={self.socle_order}{extra}"

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass(frozen=True)
class Verdict:
    elusive: bool
    rule: str
    witness: ClassLabel | None = None
    degree_divisible: bool = True
    row: str | None = None
    kappa_one: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.witness is not None and self.elusive:
            raise ValueError("an elusive verdict carries no witness")

    def to_dict(self) -> dict:
        out = {"elusive": self.elusive, "rule": self.rule,
               "degree_divisible": self.degree_divisible,
               "witness": self.witness.to_dict() if self.witness else None}
        if self.row:
            out["row"] = self.row
        if self.kappa_one is not None:
            out["kappa_one"] = self.kappa_one
        return out


@dataclass(frozen=True)
class Resolved:
    case: SubgroupCase
    table_case: str | None
    socle: str
    h0_order: int
    env: dict


def _env(spec: GroupSpec, d: int | None = None) -> dict:
    env = {"p": spec.p, "f": spec.f, "q": spec.q, "e": spec.epsilon, "n": spec.n}
    if d is not None:
        env["d"] = d
    if spec.f % 3 == 0:
        env["q0"] = spec.p ** (spec.f // 3)
    return env


def a_case_row(d: int, p: int) -> str:
    """The row A1..A4 that (d, p) falls under."""
    if p != 2:
        return "A1"
    return {2: "A2", 0: "A3"}.get(d % 4, "A4")


def _matches(spec: GroupSpec, entry, env) -> bool:
    if entry.field == "p" and spec.f != 1:
        return False
    for fam, n, when in entry.T:
        if fam == spec.family and (n is None or n == spec.n):
            if when is None or eval_condition(when, env):
                return True
    return False


def resolve_case(spec: GroupSpec, case: SubgroupCase, tables: Tables | None = None) -> Resolved:
    """Check the case against its table row and compute |H cap T|."""
    tables = tables or load_tables()
    if case.kind == "A":
        d, p = case.d, spec.p
        row = tables.cases[a_case_row(d, p)]
        env = _env(spec, d)
        if spec.f != 1 or not eval_condition(row.exists, env):
            raise PreconditionError(f"(d={d}, q={spec.q}) violates the conditions of row {row.case}")
        target = target_group(d, p)
        if target != spec:
            raise PreconditionError(f"A_{d} over F_{p} lies in {target}, not {spec}")
        return Resolved(case, row.case, f"A{d}", h0_order(d, p), env)
    if case.kind == "S":
        order = case.h0_order or case.socle_order
        if group_order(spec) % order:
            raise PreconditionError(f"|H cap T| = {order} does not divide |{spec}|")
        return Resolved(case, None, case.socle, order, _env(spec))
    entry = tables.cases.get(case.case_id)
    if entry is None or entry.source != (2 if case.kind == "B" else 3):
        raise PreconditionError(f"no {case.kind} row {case.case_id!r}")
    env = _env(spec)
    if not _matches(spec, entry, env):
        raise PreconditionError(f"{spec} does not fit row {entry.case}")
    try:
        if not eval_condition(entry.exists, env):
            raise PreconditionError(f"{spec} violates the conditions of row {entry.case}")
        order = eval_arith(tables.socles[entry.S], env)
    except ConditionError as exc:
        raise PreconditionError(f"row {entry.case}: {exc}") from None
    if group_order(spec) % order:
        raise PreconditionError(f"|{entry.S}| = {order} does not divide |{spec}|")
    return Resolved(case, entry.case, entry.S, order, env)


def degree_divisible(spec: GroupSpec, case: SubgroupCase, r: int,
                     tables: Tables | None = None) -> bool:
    """Whether r divides |Omega| = |T : H cap T|."""
    require_prime(r, "r")
    rc = resolve_case(spec, case, tables)
    return valuation(group_order(spec), r) > valuation(rc.h0_order, r)


# the c-versus-n clauses -----------------------------------------------------

def star_clause(n: int, c: int, family: str) -> bool:
    """c > n/2, or c = n/2 with T of minus type."""
    return 2 * c > n or (2 * c == n and family == "POmegaMinus")


def diamond_clause(n: int, c: int) -> bool:
    """c > max(2, sqrt(n)/2), compared exactly."""
    return c > 2 and 4 * c * c > n


def box_clause(n: int, c: int, family: str) -> bool:
    """max(2, sqrt(n)/2) < c <= n/2, and c < n/2 for minus type."""
    if not diamond_clause(n, c):
        return False
    return 2 * c < n if family == "POmegaMinus" else 2 * c <= n


def _odd_semisimple(spec: GroupSpec, rc: Resolved, r: int) -> int | None:
    # c when r is odd, r != p and r divides |H cap T|; None otherwise
    if r == 2 or r == spec.p or rc.h0_order % r or group_order(spec) % r:
        return None
    return c_value(spec, r)


def conditions_star(spec, case, r, tables=None) -> bool:
    require_prime(r, "r")
    c = _odd_semisimple(spec, resolve_case(spec, case, tables), r)
    return c is not None and star_clause(spec.n, c, spec.family)


def conditions_diamond(spec, case, r, tables=None) -> bool:
    require_prime(r, "r")
    c = _odd_semisimple(spec, resolve_case(spec, case, tables), r)
    return c is not None and diamond_clause(spec.n, c)


def conditions_box(spec, case, r, tables=None) -> bool:
    require_prime(r, "r")
    c = _odd_semisimple(spec, resolve_case(spec, case, tables), r)
    return c is not None and box_clause(spec.n, c, spec.family)


# the alternating-group collection --------------------------------------------

def _max_block_multiplicity(spec: GroupSpec, r: int, c: int) -> int:
    # largest h with [L^h, I_{n-hc}] a class of T; with e = 0 the h blocks
    # (each of minus type when Phi(r,q) is even) must give the type of V
    k = spec.n // c
    if spec.family in ("POmegaPlus", "POmegaMinus") and k * c == spec.n:
        sign = (-1) ** k if phi_rq(r, spec.q) % 2 == 0 else 1
        if sign != spec.epsilon:
            k -= 1
    return k


def a_case_clause(spec: GroupSpec, d: int, r: int, literal: bool = False) -> tuple[bool, str]:
    """Elusivity for S = A_d and the rule that decides it.

    With literal=True the odd clause is "r divides |H cap T| and c = r-1"
    verbatim; by default it also asks that every class [L^h, I] of T
    (h(r-1) <= n) meets H, i.e. hr <= d for the largest such h.
    """
    p = spec.p
    if r == p:
        return False, "thm1.ii"
    if r == 2:
        if spec.family == "OmegaOdd":
            return legendre((spec.n + 1) // 2, p) == 1, "thm1.ii.a"
        if spec.family in ("POmegaPlus", "POmegaMinus") and spec.n % 4 == 2:
            return (p - 5 * spec.epsilon) % 8 == 0, "thm1.ii.b"
        return False, "thm1.ii"
    if h0_order(d, p) % r or c_value(spec, r) != r - 1:
        return False, "thm1.ii"
    if not literal and _max_block_multiplicity(spec, r, r - 1) > d // r:
        return False, "thm1.ii"
    return True, "thm1.ii.c"


@dataclass(frozen=True)
class CoverageReport:
    d: int
    p: int
    r: int
    spec: GroupSpec
    h0: str
    classes: tuple  # of (ClassLabel, tuple of CycleType)

    @property
    def elusive(self) -> bool:
        return all(shapes for _, shapes in self.classes)

    @property
    def uncovered(self) -> list[ClassLabel]:
        return [lab for lab, shapes in self.classes if not shapes]

    def to_dict(self) -> dict:
        return {"d": self.d, "p": self.p, "r": self.r, "T": str(self.spec), "H0": self.h0,
                "elusive": self.elusive,
                "classes": [{"label": str(lab), "covered_by": [str(s) for s in shapes] or "uncovered"}
                            for lab, shapes in self.classes]}


def a_collection_coverage(d: int, p: int, r: int, tables: Tables | None = None) -> CoverageReport:
    """Fuse every class of elements of order r in H cap T into T."""
    require_prime(p)
    require_prime(r, "r")
    tables = tables or load_tables()
    row = tables.cases[a_case_row(d, p)]
    if d < 5 or not eval_condition(row.exists, {"d": d, "p": p}):
        raise PreconditionError(f"(d={d}, p={p}) is not a valid row {row.case}")
    spec = target_group(d, p)
    if group_order(spec) % r:
        raise PreconditionError(f"r={r} does not divide |{spec}|", degree_divisible=False)
    labels = enumerate_element_classes(spec, r)
    hit: dict[ClassLabel, list[CycleType]] = {lab: [] for lab in labels}
    h0 = h0_structure(d, p)
    for h in range(1, d // r + 1):
        ct = CycleType(r, h, d - r * h)
        if h0 == "A_d" and not ct.even:
            continue
        try:
            lab = fuse_cycle_type(ct, d, p, spec)
        except DecorationUnresolved:
            continue
        if lab not in hit:
            raise RuntimeError(f"shape {ct} fuses to {lab}, which is not a class of {spec}")
        hit[lab].append(ct)
    return CoverageReport(d, p, r, spec, h0, tuple((lab, tuple(hit[lab])) for lab in labels))


# witnesses -----------------------------------------------------------------

def _witness(spec: GroupSpec, rc: Resolved, r: int) -> ClassLabel | None:
    try:
        if rc.h0_order % r:
            # nothing of order r in H cap T: any class will do
            labels = enumerate_element_classes(spec, r)
            return labels[0] if labels else None
        if rc.case.kind == "A":
            gaps = a_collection_coverage(rc.case.d, spec.p, r).uncovered
            return gaps[0] if gaps else None
        if rc.case.kind == "S" and spec.n >= 6:
            return guralnick_saxl_witness(spec, r)
    except (ValueError, RuntimeError):
        return None
    return None


# the main classification ----------------------------------------------------

def _checked(spec, case, r, tables) -> Resolved:
    require_prime(r, "r")
    rc = resolve_case(spec, case, tables)
    if valuation(group_order(spec), r) <= valuation(rc.h0_order, r):
        raise PreconditionError(f"r={r} does not divide the degree |T : H cap T|",
                                degree_divisible=False)
    return rc


def _table_row(tables: Tables, case_id: str, r: int, source: int, env: dict):
    for row in tables.rows_for(case_id, source):
        if row.r == r and eval_condition(row.condition, env):
            return row
    return None


def decide_elusive(spec: GroupSpec, case: SubgroupCase, r: int, *, literal: bool = False,
                   tables: Tables | None = None) -> Verdict:
    """Is T r-elusive on the cosets of H?"""
    tables = tables or load_tables()
    rc = _checked(spec, case, r, tables)
    row = None
    if spec.n < 6:
        if case.kind in ("A", "B"):
            raise PreconditionError(f"{case.kind} cases need n >= 6")
        if case.kind == "lowdim":
            row = _table_row(tables, rc.table_case, r, 3, rc.env)
        ok, rule = row is not None, "thm1.i"
    elif case.kind == "lowdim":
        raise PreconditionError("low-dimensional rows need n < 6")
    elif case.kind == "A":
        ok, rule = a_case_clause(spec, case.d, r, literal)
    elif case.kind == "B":
        row = _table_row(tables, rc.table_case, r, 4, rc.env)
        ok, rule = row is not None, "thm1.iii"
    else:
        c = _odd_semisimple(spec, rc, r)
        ok, rule = c is not None and star_clause(spec.n, c, spec.family), "thm1.iv"
    witness = None if ok else _witness(spec, rc, r)
    return Verdict(ok, rule, witness, True, row.row_id if row else None)


# kappa(T, r) -------------------------------------------------------------------

def kappa_is_one(spec: GroupSpec, r: int) -> bool:
    """Whether T has a single class of subgroups of order r."""
    require_prime(r, "r")
    if group_order(spec) % r:
        raise ValueError(f"r={r} does not divide |{spec}|")
    if r == spec.p:
        if r == 2:
            return len(enumerate_element_classes(spec, 2)) == 1
        # unipotent lines in PSL2(q) form one class iff F_p^* holds non-squares of F_q
        return spec.family == "PSL" and spec.n == 2 and spec.f % 2 == 1
    if r == 2:
        return len(enumerate_element_classes(spec, 2)) == 1
    if c_value(spec, r) >= 2:
        return kappa_rules(spec, r).exact == 1
    return len(enumerate_subgroup_classes(spec, r)) == 1


def kappa_value(spec: GroupSpec, r: int) -> int | None:
    """kappa(T, r) where the class data determine it, else None."""
    require_prime(r, "r")
    if group_order(spec) % r:
        raise ValueError(f"r={r} does not divide |{spec}|")
    if r == 2:
        # one subgroup class per class of involutions
        return len(enumerate_element_classes(spec, 2))
    if r == spec.p:
        return 1 if kappa_is_one(spec, r) else None
    return len(enumerate_subgroup_classes(spec, r))


def decide_kappa_corollary(spec: GroupSpec, case: SubgroupCase, r: int, *, literal: bool = False,
                           tables: Tables | None = None) -> Verdict:
    """Elusivity via kappa(T, r); needs r to divide |H cap T|."""
    tables = tables or load_tables()
    rc = _checked(spec, case, r, tables)
    if rc.h0_order % r:
        raise PreconditionError(f"r={r} does not divide |H cap T|")
    one = kappa_is_one(spec, r)
    row = None
    if one:
        ok, rule = True, "cor1.2.i"
    elif r >= 5 and r != spec.p and case.kind == "A":
        ok, rule = a_case_clause(spec, case.d, r, literal)
        rule = "cor1.2.ii" if ok else "cor1.2"
    elif r in (2, 3):
        if case.kind == "A":
            fam = "OmegaOdd" if spec.family == "OmegaOdd" else "POmega"
            rows = [x for x in tables.rows_for("A", 6) if x.r == r and x.family == fam]
            row = next((x for x in rows if eval_condition(x.condition, rc.env)), None)
        elif rc.table_case is not None:
            row = _table_row(tables, rc.table_case, r, 6, rc.env)
        ok, rule = row is not None, "cor1.2.iii" if row else "cor1.2"
    else:
        ok, rule = False, "cor1.2"
    witness = None if ok else _witness(spec, rc, r)
    return Verdict(ok, rule, witness, True, row.row_id if row else None, kappa_one=one)


# subfield and unitary-type subgroups ---------------------------------------

def subfield_atom(parts, q: int, q_sub: int, eps: int) -> bool:
    """gcd(d(lambda), q - eps) == gcd(d(lambda), q_sub - eps) for one partition."""
    dl = reduce(gcd, parts)
    return gcd(dl, q - eps) == gcd(dl, q_sub - eps)


def decide_subfield_corollary(n: int, p: int, q0: int, k: int, eps: int, r: int,
                              variant: str) -> bool:
    """r-elusivity of PSL^eps_n(q) on the cosets of a subfield subgroup over
    F_q0 with q = q0^k (variant "C5"), or of PSL_n(q) on a unitary-type
    subgroup with q = q0^2 (variant "C8"). eps = 0 marks T outside PSL^eps,
    where only r = k or r = p with no extra conditions apply (C5).
    """
    require_prime(p)
    require_prime(r, "r")
    if n <= 5 or r <= 5:
        raise PreconditionError("needs n > 5 and r > 5")
    if prime_power(q0)[0] != p:
        raise PreconditionError(f"q0={q0} is not a power of p={p}")
    parts = [lam.parts for lam in p_bounded_partitions(n, p)]
    if variant == "C5":
        require_prime(k, "k")
        if k == 2:
            raise PreconditionError("k must be an odd prime")
        if eps not in (-1, 0, 1):
            raise PreconditionError("eps must be -1, 0 or 1")
        if r == k:
            return True
        if r != p:
            return False
        if eps == 0:
            return True
        q = q0**k
        if not all(subfield_atom(lam, q, q0, eps) for lam in parts):
            return False
        big = any(gcd(reduce(gcd, lam), q - eps) > 1 for lam in parts)
        return not big or k >= p or gcd(k, gcd(n, q0 - eps)) == 1
    if variant == "C8":
        if n % 2 == 0:
            raise PreconditionError("the unitary-type clause needs n odd")
        if r != p:
            return False
        q = q0 * q0
        return all(subfield_atom(lam, q, -q0, 1) for lam in parts)
    raise PreconditionError(f"unknown variant {variant!r}")
