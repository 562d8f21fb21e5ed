"""Finite crystallographic root systems in the Bourbaki labelling.

Roots are integer coefficient vectors over the simple roots, coroots are
integer coefficient vectors over the simple coroots, and coweights are kept
in *pairing coordinates*: lambda is stored as the tuple
``(<alpha_1, lambda>, ..., <alpha_n, lambda>)``.  All arithmetic is exact
(int / Fraction); nothing in this package ever touches a float.

The Cartan matrix convention is ``C[i][j] = <alpha_j, alpha_i_check>``, so
row i lists the pairings of all simple roots against the i-th simple coroot.

>>> rs = build_root_system("G", 2)
>>> len(rs.positive_roots)
6
>>> rs.theta            # highest root 3a1 + 2a2
(3, 2)
>>> rs.positive_coroots[rs.theta_index]
(1, 2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from ._matrix import mat_inv, mat_vec, transpose

__all__ = [
    "RootSystem",
    "Coweight",
    "build_root_system",
    "coweight",
    "coweight_from_coroot",
    "pairing",
    "pair_root_coroot",
    "depth",
    "dominance_leq",
    "dominant_rep",
    "quantum_roots",
    "quantum_roots_by_classification",
    "root_leq",
    "VALID_RANKS",
    "WEYL_ORDER",
]

Root = tuple[int, ...]          # coefficients over simple roots
Coroot = tuple[int, ...]        # coefficients over simple coroots
Num = Union[int, Fraction]

VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# Number of positive roots, for a hard check on the closure computation.
def _expected_positive_count(ct: str, n: int) -> int:
    if ct == "A":
        return n * (n + 1) // 2
    if ct in ("B", "C"):
        return n * n
    if ct == "D":
        return n * (n - 1)
    if ct == "E":
        return {6: 36, 7: 63, 8: 120}[n]
    if ct == "F":
        return 24
    return 6  # G2


def WEYL_ORDER(ct: str, n: int) -> int:
    """Order of the finite Weyl group of type ``ct`` rank ``n``."""
    if ct == "A":
        return math.factorial(n + 1)
    if ct in ("B", "C"):
        return 2 ** n * math.factorial(n)
    if ct == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if ct == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if ct == "F":
        return 1152
    return 12  # G2


def _edges_and_d(ct: str, n: int) -> tuple[list[tuple[int, int]], tuple[int, ...]]:
    """Dynkin diagram edges (0-based) and the symmetrizer d_i = (a_i, a_i)/2."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if ct == "A":
        return chain, (1,) * n
    if ct == "B":
        return chain, (2,) * (n - 1) + (1,)
    if ct == "C":
        return chain, (1,) * (n - 1) + (2,)
    if ct == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)], (1,) * n
    if ct == "E":
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        return edges, (1,) * n
    if ct == "F":
        return chain, (2, 2, 1, 1)
    return chain, (1, 3)  # G2


def _sign(v: Sequence[int]) -> int:
    """Sign of a sign-coherent coefficient vector (0 for the zero vector)."""
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


@dataclass(frozen=True)
class RootSystem:
    """Immutable bundle of root-system data; build via :func:`build_root_system`."""

    cartan_type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]          # C[i][j] = <a_j, a_i_check>
    sym_d: tuple[int, ...]
    positive_roots: tuple[Root, ...]             # sorted by (height, coeffs)
    positive_coroots: tuple[Coroot, ...]         # index-paired with the roots
    root_d: tuple[int, ...]                      # d_beta = (beta, beta)/2
    heights: tuple[int, ...]
    pairing_rows: tuple[tuple[int, ...], ...]    # [a][j] = <root_a, a_j_check>
    theta_index: int
    two_rho: Root
    rho: tuple[Fraction, ...]                    # root coords of rho
    rho_check_coroot: tuple[Fraction, ...]       # coroot coords of rho_check
    quantum_flags: tuple[bool, ...]
    reflection_lengths: tuple[int, ...]          # ell(s_beta) per positive root
    inv_cartan_t: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    root_index: dict = field(repr=False, hash=False, compare=False)

    @property
    def theta(self) -> Root:
        return self.positive_roots[self.theta_index]

    @property
    def theta_coroot(self) -> Coroot:
        return self.positive_coroots[self.theta_index]

    @property
    def coxeter_number(self) -> int:
        return self.heights[self.theta_index] + 1

    @property
    def simple_indices(self) -> tuple[int, ...]:
        return tuple(self.root_index[_unit(self.rank, i)] for i in range(self.rank))

    def simple_root(self, i: int) -> Root:
        return _unit(self.rank, i)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"RootSystem({self.cartan_type}{self.rank})"


def _unit(n: int, i: int) -> Root:
    return tuple(1 if j == i else 0 for j in range(n))


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Construct the root system of the given Cartan type and rank.

    Positive roots are generated by closing the simple roots under root
    addition, using the string criterion: beta + a_i is a root iff
    p - <beta, a_i_check> >= 1 where p is the length of the alpha_i-string
    below beta.  The result is checked against the classical root count.
    """
    ct = cartan_type.upper()
    if ct not in VALID_RANKS or not VALID_RANKS[ct](rank):
        raise ValueError(f"invalid Cartan type/rank: {cartan_type}{rank}")
    n = rank
    edges, d = _edges_and_d(ct, n)
    adj = {(i, j) for i, j in edges} | {(j, i) for i, j in edges}
    # symmetric bilinear form B[i][j] = (a_i, a_j), then C[i][j] = B[i][j]/d_i
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        B[i][i] = 2 * d[i]
    for i, j in adj:
        B[i][j] = -max(d[i], d[j])
    C = tuple(tuple(B[i][j] // d[i] for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            assert B[i][j] == C[i][j] * d[i], "Cartan symmetrization failed"

    # pairing of a root-coefficient vector with the i-th simple coroot
    def pair_simple_coroot(c: Sequence[int], i: int) -> int:
        return sum(C[i][j] * c[j] for j in range(n))

    roots: set[Root] = {_unit(n, i) for i in range(n)}
    level = sorted(roots)
    while level:
        nxt: set[Root] = set()
        for beta in level:
            for i in range(n):
                ai = _unit(n, i)
                if beta == ai:
                    continue
                p = 0
                cur = tuple(b - a for b, a in zip(beta, ai))
                while cur in roots:
                    p += 1
                    cur = tuple(b - a for b, a in zip(cur, ai))
                if p - pair_simple_coroot(beta, i) >= 1:
                    cand = tuple(b + a for b, a in zip(beta, ai))
                    if cand not in roots:
                        nxt.add(cand)
        roots |= nxt
        level = sorted(nxt)
    assert len(roots) == _expected_positive_count(ct, n), (
        f"root closure produced {len(roots)} roots for {ct}{n}"
    )

    positive = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    index = {r: a for a, r in enumerate(positive)}
    heights = tuple(sum(r) for r in positive)

    # d_beta and the coroot of each root: beta_check = sum_i c_i (d_i/d_beta) a_i_check
    root_d = []
    coroots = []
    for r in positive:
        norm2 = sum(r[i] * r[j] * B[i][j] for i in range(n) for j in range(n))
        assert norm2 % 2 == 0 and norm2 > 0
        db = norm2 // 2
        cr = []
        for i in range(n):
            num = r[i] * d[i]
            assert num % db == 0, f"non-integral coroot coefficient for {r} in {ct}{n}"
            cr.append(num // db)
        root_d.append(db)
        coroots.append(tuple(cr))
    root_d = tuple(root_d)
    coroots = tuple(coroots)

    pairing_rows = tuple(
        tuple(pair_simple_coroot(r, j) for j in range(n)) for r in positive
    )

    # highest root: unique height maximum, and dominance-maximal among all roots
    hmax = max(heights)
    tops = [a for a, h in enumerate(heights) if h == hmax]
    assert len(tops) == 1, "highest root is not unique"
    ti = tops[0]
    th = positive[ti]
    for r in positive:
        assert all(t >= c for t, c in zip(th, r)), "theta not dominance-maximal"

    # rho (root coords) and rho_check (coroot coords) by exact linear solves
    cinv = mat_inv(C)
    rho = mat_vec(cinv, (1,) * n)
    cinv_t = mat_inv(transpose(C))
    rho_check = mat_vec(cinv_t, (1,) * n)
    two_rho = tuple(2 * x for x in rho)
    assert all(x.denominator == 1 for x in two_rho)
    two_rho = tuple(int(x) for x in two_rho)
    # cross-check: 2 rho equals the sum of all positive roots
    sums = tuple(sum(r[i] for r in positive) for i in range(n))
    assert two_rho == sums, "2 rho != sum of positive roots"

    # ell(s_beta) = #{gamma > 0 : s_beta gamma < 0}, via the exact root action
    refl_len = []
    for a, beta in enumerate(positive):
        cnt = 0
        bc = coroots[a]
        for g, gamma in enumerate(positive):
            k = sum(bc[j] * pairing_rows[g][j] for j in range(n))
            img = tuple(gc - k * bb for gc, bb in zip(gamma, beta))
            s = _sign(img)
            assert s != 0
            if s < 0:
                cnt += 1
        refl_len.append(cnt)
    refl_len = tuple(refl_len)

    # quantum roots: ell(s_beta) == <2 rho, beta_check> - 1 (always >= holds
    # with <2 rho, beta_check> - 1 >= ell(s_beta); see the library tests)
    qflags = tuple(
        refl_len[a] == 2 * sum(coroots[a]) - 1 for a in range(len(positive))
    )

    return RootSystem(
        cartan_type=ct,
        rank=n,
        cartan=C,
        sym_d=tuple(d),
        positive_roots=positive,
        positive_coroots=coroots,
        root_d=root_d,
        heights=heights,
        pairing_rows=pairing_rows,
        theta_index=ti,
        two_rho=two_rho,
        rho=tuple(Fraction(x) for x in rho),
        rho_check_coroot=tuple(Fraction(x) for x in rho_check),
        quantum_flags=qflags,
        reflection_lengths=refl_len,
        inv_cartan_t=cinv_t,
        root_index=index,
    )


def _norm_num(x: Num) -> Num:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class Coweight:
    """A rational coweight in pairing coordinates ``<alpha_i, lambda>``.

    ``lattice`` records where the point lives: "coroot" for the coroot
    lattice, "coweight" for the coweight lattice, "rational" otherwise.
    It is derived from the coordinates, never trusted from the caller.
    """

    rs: RootSystem
    pairing: tuple[Num, ...]
    lattice: str = field(init=False, compare=False)

    def __post_init__(self):
        coords = tuple(_norm_num(Fraction(x) if not isinstance(x, (int, Fraction)) else x)
                       for x in self.pairing)
        object.__setattr__(self, "pairing", coords)
        cc = self.coroot_coords()
        if all(isinstance(x, int) or x.denominator == 1 for x in cc):
            lat = "coroot"
        elif all(isinstance(x, int) for x in coords):
            lat = "coweight"
        else:
            lat = "rational"
        object.__setattr__(self, "lattice", lat)

    def coroot_coords(self) -> tuple[Num, ...]:
        """Coefficients over the simple coroots (p = C^T c inverted exactly)."""
        return tuple(_norm_num(x) for x in mat_vec(self.rs.inv_cartan_t, self.pairing))

    def __add__(self, other: "Coweight") -> "Coweight":
        assert self.rs is other.rs
        return Coweight(self.rs, tuple(a + b for a, b in zip(self.pairing, other.pairing)))

    def __sub__(self, other: "Coweight") -> "Coweight":
        assert self.rs is other.rs
        return Coweight(self.rs, tuple(a - b for a, b in zip(self.pairing, other.pairing)))

    def __neg__(self) -> "Coweight":
        return Coweight(self.rs, tuple(-a for a in self.pairing))

    def scale(self, c: Num) -> "Coweight":
        return Coweight(self.rs, tuple(_norm_num(c * a) for a in self.pairing))

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.pairing)

    def is_regular(self) -> bool:
        return all(x != 0 for x in self.pairing)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"Coweight({list(self.pairing)})"


def coweight(rs: RootSystem, pairing_coords: Iterable[Num]) -> Coweight:
    return Coweight(rs, tuple(pairing_coords))


def coweight_from_coroot(rs: RootSystem, coroot_coords: Iterable[Num]) -> Coweight:
    """Coweight from coefficients over the simple coroots (p = C^T c)."""
    c = tuple(coroot_coords)
    p = mat_vec(transpose(rs.cartan), c)
    return Coweight(rs, p)


def pairing(rs: RootSystem, root: Root, lam: Coweight) -> Num:
    """Exact pairing <beta, lambda> of a root with a coweight."""
    return _norm_num(sum(c * p for c, p in zip(root, lam.pairing)))


def pair_root_coroot(rs: RootSystem, root: Root, coroot: Coroot) -> int:
    """<beta, gamma_check> for a root and a coroot, via the Cartan matrix."""
    n = rs.rank
    return sum(root[i] * coroot[j] * rs.cartan[j][i] for i in range(n) for j in range(n))


def depth(lam: Coweight) -> Num:
    """min_i <alpha_i, lambda>: positive iff lambda is dominant regular.

    For dominant lambda this measures how far lambda sits from the nearest
    wall of the dominant cone, in simple-pairing units.
    """
    return min(lam.pairing)


def dominance_leq(a: Coweight, b: Coweight) -> bool:
    """True iff b - a is a nonnegative rational combination of simple coroots."""
    assert a.rs is b.rs
    diff = tuple(x - y for x, y in zip(b.pairing, a.pairing))
    coords = mat_vec(a.rs.inv_cartan_t, diff)
    return all(x >= 0 for x in coords)


def _dominantize(rs: RootSystem, p: Sequence[Num]) -> tuple[tuple[Num, ...], list[int]]:
    """Sweep lambda into the dominant cone; returns (coords, word) where the
    recorded simple reflections, applied left-to-right as written, satisfy
    s_{i_k} ... s_{i_1} lambda = lambda_plus."""
    C = rs.cartan
    n = rs.rank
    cur = list(p)
    word: list[int] = []
    while True:
        i = next((k for k in range(n) if cur[k] < 0), None)
        if i is None:
            return tuple(_norm_num(x) for x in cur), word
        pi = cur[i]
        for k in range(n):
            cur[k] = cur[k] - C[i][k] * pi
        word.append(i)


def dominant_rep(lam: Coweight):
    """Dominant representative of the Weyl orbit of lam.

    Returns ``(lam_plus, g)`` with ``g(lam) = lam_plus`` (g a WeylElt).
    """
    from .weyl import identity_elt, simple_reflection

    rs = lam.rs
    coords, word = _dominantize(rs, lam.pairing)
    g = identity_elt(rs)
    for i in word:
        g = simple_reflection(rs, i).mul(g)
    out = Coweight(rs, coords)
    assert g.act_pairing(lam.pairing) == out.pairing
    return out, g


def quantum_roots(rs: RootSystem) -> list[Root]:
    """Positive roots beta with ell(s_beta) = <2 rho, beta_check> - 1."""
    return [r for r, q in zip(rs.positive_roots, rs.quantum_flags) if q]


def quantum_roots_by_classification(rs: RootSystem) -> list[Root]:
    """Independent route to the quantum roots: all long roots, plus the short
    roots whose support uses only short simple roots.  (In the simply laced
    types every root counts as long.)"""
    dmax = max(rs.sym_d)
    out = []
    for a, r in enumerate(rs.positive_roots):
        if rs.root_d[a] == dmax:
            out.append(r)
        else:
            if all(rs.sym_d[i] < dmax for i in range(rs.rank) if r[i]):
                out.append(r)
    return out


def root_leq(beta: Root, gamma: Root) -> bool:
    """Coefficientwise dominance order on root coefficient vectors."""
    return all(b <= g for b, g in zip(beta, gamma))
