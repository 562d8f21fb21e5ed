"""Admissible sets and the dimension arithmetic built on them.

The admissible set of a dominant lattice coweight mu collects everything
below some translation by a Weyl-orbit point of mu.  Deep enough mu admit a
membership test by graph weights alone; on top of that sit eta, the virtual
dimension, and two closed dimension formulas whose only combinatorial
ingredient is min over x of the graph distance d_Gamma(x, x w0).

Invariants of a sigma-conjugacy class (Newton point and defect) are caller
data here: the formulas consume them, nothing computes them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .affine import (
    AffineElt,
    affine_length,
    cocovers,
    descent_left,
    embed,
    lower_interval,
)
from .errors import BudgetError, RefusalError
from .qbg import build_qbg, reflection_length_w0
from .rootsys import (
    Coweight,
    RootSystem,
    coweight,
    coweight_from_coroot,
    depth,
    dominance_leq,
    pairing,
)
from .weyl import WeylElt, enumerate_group, identity_elt, simple_reflection

__all__ = [
    "AdmSet",
    "BInvariants",
    "MembershipResult",
    "DimResult",
    "DEFAULT_ADM_BUDGET",
    "adm_set",
    "product_set",
    "adm_membership_char",
    "membership_depth_ok",
    "eta",
    "virtual_dim",
    "min_dgamma",
    "d_adm",
    "d_adm_brute",
    "dim_X_formula",
    "adm_summary",
]

DEFAULT_ADM_BUDGET = 40


@dataclass(frozen=True)
class AdmSet:
    """A dominant lattice coweight with its admissible set."""

    mu: Coweight
    members: frozenset[AffineElt]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w: AffineElt) -> bool:
        return w in self.members

    def assert_downward_closed(self) -> None:
        """Every cocover of a member is a member (hence the whole lower
        set is); quadratic, for test-sized sets."""
        for w in self.members:
            for c in cocovers(w):
                assert c in self.members, "admissible set not downward closed"


@dataclass(frozen=True)
class BInvariants:
    """Caller-declared invariants of a class b: its Newton point (a
    dominant coweight) and its defect."""

    nu: Coweight
    defect: int

    def __post_init__(self):
        assert self.nu.is_dominant(), "Newton point must be dominant"
        assert 0 <= self.defect <= self.nu.rs.rank, "defect out of range"


def _rho_pair(rs: RootSystem, lam: Coweight) -> Fraction:
    """<rho, lam> as an exact rational."""
    return Fraction(pairing(rs, rs.two_rho, lam)) / 2


def adm_set(mu: Coweight, budget: int = DEFAULT_ADM_BUDGET) -> AdmSet:
    """Union of the lower intervals of t^{x(mu)} over the Weyl orbit."""
    rs = mu.rs
    if not mu.is_dominant():
        raise RefusalError("admissible sets are indexed by dominant mu")
    mu_int = tuple(int(p) for p in mu.pairing)
    assert tuple(mu.pairing) == mu_int, "mu must be a lattice point"
    lt = pairing(rs, rs.two_rho, mu)
    if lt > budget:
        raise BudgetError(
            f"translation length {lt} exceeds the admissible-set budget "
            f"{budget}"
        )
    table = enumerate_group(rs)
    orbit = {x.act_pairing(mu_int) for x in table.elements}
    members: set[AffineElt] = set()
    for pt in orbit:
        top = AffineElt(rs, pt, identity_elt(rs))
        members |= lower_interval(top, budget=max(budget, lt)).members
    return AdmSet(mu, frozenset(members))


def product_set(a: AdmSet, b: AdmSet) -> frozenset[AffineElt]:
    """The literal product set {w w' : w in a, w' in b}."""
    return frozenset(x.mul(y) for x in a.members for y in b.members)


@dataclass
class MembershipResult:
    """Membership verdict with its validity status ("ok" inside the
    proposition's regime, "outside-regime" otherwise; the verdict is filled
    outside the regime only on request and certifies nothing there)."""

    status: str
    value: bool | None
    reason: str = ""


def membership_depth_ok(mu: Coweight) -> bool:
    ct = mu.rs.cartan_type
    c = 3 if ct in ("A", "D", "E") else (6 if ct == "G" else 4)
    return depth(mu) >= c


def adm_membership_char(
    x: WeylElt,
    lam: Coweight,
    y: WeylElt,
    mu: Coweight,
    force: bool = False,
) -> MembershipResult:
    """Is x t^lam y in the admissible set of mu, read off the quantum
    Bruhat graph: lattice classes must agree and wt(x, y^{-1}) <= mu - lam
    in dominance order.

    Certified when depth(mu) clears the type threshold and <rho, mu - lam>
    stays below ceil((depth(mu) - threshold)/2); outside that regime the
    verdict is computed only on request."""
    rs = mu.rs
    if not (mu.is_dominant() and lam.is_dominant()):
        raise RefusalError("mu and lam must both be dominant")
    ct = rs.cartan_type
    c = 3 if ct in ("A", "D", "E") else (6 if ct == "G" else 4)
    reasons = []
    if depth(mu) < c:
        reasons.append(f"depth(mu) < {c}")
    gap = _rho_pair(rs, mu - lam)
    if gap >= ceil(Fraction(depth(mu) - c, 2)):
        reasons.append("<rho, mu - lam> not below the ceiling")
    if reasons and not force:
        return MembershipResult("outside-regime", None, "; ".join(reasons))
    lam_elt = AffineElt(
        rs, tuple(int(p) for p in lam.pairing), identity_elt(rs)
    )
    mu_elt = AffineElt(
        rs, tuple(int(p) for p in mu.pairing), identity_elt(rs)
    )
    if lam_elt.omega != mu_elt.omega:
        value = False
    else:
        wt_cw = coweight_from_coroot(rs, build_qbg(rs).wt(x, y.inv()))
        value = dominance_leq(wt_cw, mu - lam)
    status = "ok" if not reasons else "outside-regime"
    return MembershipResult(status, value, "; ".join(reasons))


def eta(w: AffineElt) -> WeylElt:
    """v u for the unique w = u t^lam v with lam dominant and t^lam v of
    minimal length in its left W-coset."""
    rs = w.rs
    u = identity_elt(rs)
    y = w
    while True:
        # finite letters sit at 1..n in the affine indexing
        i = next(
            (i for i in range(rs.rank) if descent_left(y, i + 1)), None
        )
        if i is None:
            break
        s = simple_reflection(rs, i)
        y = embed(s).mul(y)
        u = u.mul(s)
    assert coweight(rs, y.lam).is_dominant(), (
        "coset-minimal element does not have a dominant translation part"
    )
    return y.fin.mul(u)


def virtual_dim(w: AffineElt, b: BInvariants) -> Fraction:
    """(ell(w) + ell(eta(w)) - defect)/2 - <rho, nu>."""
    rs = w.rs
    return (
        Fraction(affine_length(w) + eta(w).length() - b.defect, 2)
        - _rho_pair(rs, b.nu)
    )


def min_dgamma(rs: RootSystem) -> int:
    """min over x of the graph distance from x to x w0."""
    g = build_qbg(rs)
    table = g.table
    w0 = table.w0_idx
    return min(
        g.d_gamma(x, table.prod_idx(x, w0)) for x in range(len(table))
    )


@dataclass
class DimResult:
    """A closed-form dimension value with its validity status."""

    status: str
    value: Fraction | None
    reason: str = ""


def d_adm(
    mu: Coweight, b: BInvariants, force: bool = False
) -> DimResult:
    """<rho, mu - nu> - defect/2 + ell(w0)/2 - min_dgamma/2, the virtual
    dimension of the admissible set of mu (its max over members).

    Stated for dominant regular mu; singular mu may be force-evaluated as a
    probe, certifying nothing."""
    rs = mu.rs
    if not mu.is_dominant():
        raise RefusalError("mu must be dominant")
    if not mu.is_regular():
        if not force:
            return DimResult("refused", None, "mu not regular")
        status, reason = "probe", "mu not regular"
    else:
        status, reason = "ok", ""
    value = (
        _rho_pair(rs, mu - b.nu)
        - Fraction(b.defect, 2)
        + Fraction(len(rs.positive_roots), 2)
        - Fraction(min_dgamma(rs), 2)
    )
    return DimResult(status, value, reason)


def d_adm_brute(
    mu: Coweight, b: BInvariants, budget: int = DEFAULT_ADM_BUDGET
) -> Fraction:
    """max of the virtual dimension over the whole admissible set."""
    return max(virtual_dim(w, b) for w in adm_set(mu, budget).members)


def dim_X_formula(
    mu: Coweight, b: BInvariants, force: bool = False
) -> DimResult:
    """<rho, mu - nu> - defect/2 + (ell(w0) - ell_R(w0))/2.

    Holds for dominant regular mu with mu >= nu + 2 rho_check in dominance;
    violations refuse (or downgrade to a probe when forced)."""
    rs = mu.rs
    if not mu.is_dominant():
        raise RefusalError("mu must be dominant")
    reasons = []
    if not mu.is_regular():
        reasons.append("mu not regular")
    two_rho_check = coweight_from_coroot(
        rs,
        tuple(
            sum(c[i] for c in rs.positive_coroots) for i in range(rs.rank)
        ),
    )
    if not dominance_leq(b.nu + two_rho_check, mu):
        reasons.append("mu - nu - 2 rho_check not >= 0 in dominance")
    if reasons and not force:
        return DimResult("refused", None, "; ".join(reasons))
    value = (
        _rho_pair(rs, mu - b.nu)
        - Fraction(b.defect, 2)
        + Fraction(
            len(rs.positive_roots)
            - reflection_length_w0(rs.cartan_type, rs.rank),
            2,
        )
    )
    return DimResult("ok" if not reasons else "probe", value, "; ".join(reasons))


def adm_summary(
    mu: Coweight, b: BInvariants, budget: int = DEFAULT_ADM_BUDGET
) -> dict:
    """JSON-shaped record tying the pieces together for one query."""
    da = d_adm(mu, b)
    dx = dim_X_formula(mu, b)
    return {
        "mu": [int(p) for p in mu.pairing],
        "size_of_adm": len(adm_set(mu, budget)),
        "d_adm": None if da.value is None else str(da.value),
        "d_adm_status": da.status,
        "dim_formula": None if dx.value is None else str(dx.value),
        "dim_formula_status": dx.status,
    }
