"""Quantum Bruhat graph on a finite Weyl group.

Vertices are the group elements.  For each element x and positive root beta
there is an "up" edge x -> x s_beta of weight zero when the length rises by
one, and a "down" edge of weight beta_check when the length drops by exactly
<2 rho, beta_check> - 1.  A drop of that size forces ell(s_beta) =
<2 rho, beta_check> - 1, so down edges can only use quantum roots; the
builder asserts this instead of assuming it.

All shortest directed paths between two fixed vertices carry the same
accumulated weight.  Rather than trusting that, the breadth-first searches
here assert weight agreement layer by layer, which amounts to a complete
check over the whole graph.  The common weight wt(x, y), the distance
d_Gamma(x, y), and the downward-only decompositions extracted from the
search drive the closed-form weight tables and the weight bound used
elsewhere for Newton points.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .rootsys import (
    Coroot,
    Root,
    RootSystem,
    VALID_RANKS,
    WEYL_ORDER,
    pair_root_coroot,
)
from .weyl import (
    GroupTable,
    WeylElt,
    enumerate_group,
    identity_elt,
    reflection,
    reflection_length,
)

__all__ = [
    "QBGraph",
    "RQRD",
    "RQRDReport",
    "build_qbg",
    "verify_rqrd",
    "wt_w0_closed_form",
    "w0_rqrd_exhibit",
    "compute_M",
    "m_tilde",
    "reflection_length_w0",
    "DEFAULT_QBG_CAP",
]

DEFAULT_QBG_CAP = 10 ** 5


@dataclass(frozen=True)
class RQRD:
    """A factorization x = s_{beta_1} ... s_{beta_k} into reflections in
    quantum roots, with additive length and k as small as possible.  Factors
    are root coefficient vectors, in product order."""

    factors: tuple[Root, ...]

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


class QBGraph:
    """The graph, with weighted breadth-first search utilities.

    ``out[x]`` lists the edges ``(target, root_index, is_down)`` leaving x in
    root-index order; ``rin[y]`` lists them by target.  Searches are layered
    and, with ``verify`` on (the default), assert that every predecessor of a
    vertex on the shortest-path level agrees about the accumulated weight.
    """

    def __init__(self, table: GroupTable, verify: bool = True):
        self.table = table
        self.rs = rs = table.rs
        self.verify = verify
        nv = len(table)
        nroots = len(rs.positive_roots)
        lengths = table.lengths
        out: list[list[tuple[int, int, bool]]] = [[] for _ in range(nv)]
        rin: list[list[tuple[int, int, bool]]] = [[] for _ in range(nv)]
        rin_down: list[list[tuple[int, int, bool]]] = [[] for _ in range(nv)]
        for a in range(nroots):
            drop = pair_root_coroot(rs, rs.two_rho, rs.positive_coroots[a]) - 1
            quantum = rs.quantum_flags[a]
            tab = table.rmult_root(a)
            for x in range(nv):
                y = tab[x]
                d = lengths[y] - lengths[x]
                if d == 1:
                    out[x].append((y, a, False))
                    rin[y].append((x, a, False))
                elif d == -drop:
                    assert quantum, "down edge through a non-quantum root"
                    out[x].append((y, a, True))
                    rin[y].append((x, a, True))
                    rin_down[y].append((x, a, True))
        self.out = out
        self.rin = rin
        self.rin_down = rin_down
        self._fwd: dict[int, tuple[list[int], list[Coroot]]] = {}
        self._rev: tuple[list[int], list[Coroot]] | None = None
        self._rev_down: tuple[list[int], list[Coroot], list] | None = None
        # Strong connectivity: the identity reaches everything and is
        # reachable from everything.
        dist_from_e, _ = self._forward(0)
        assert all(d >= 0 for d in dist_from_e), "graph not strongly connected"
        rd, rwts, _step = self._run_bfs(0, rin)
        assert all(d >= 0 for d in rd), "graph not strongly connected"
        self._rev = (rd, rwts)

    # -- searches ---------------------------------------------------------

    def _run_bfs(self, src: int, adj):
        """Layered BFS accumulating down-edge weights; first-found parents
        make the extracted witnesses deterministic."""
        rs = self.rs
        coroots = rs.positive_coroots
        n = len(self.out)
        dist = [-1] * n
        wts: list = [None] * n
        step: list = [None] * n
        dist[src] = 0
        wts[src] = (0,) * rs.rank
        q = deque([src])
        verify = self.verify
        while q:
            v = q.popleft()
            dv = dist[v]
            wv = wts[v]
            for u, a, down in adj[v]:
                w = tuple(p + q2 for p, q2 in zip(wv, coroots[a])) if down else wv
                if dist[u] < 0:
                    dist[u] = dv + 1
                    wts[u] = w
                    step[u] = (a, v)
                    q.append(u)
                elif verify and dist[u] == dv + 1:
                    assert wts[u] == w, (
                        "two shortest paths with different weights"
                    )
        return dist, wts, step

    def _forward(self, src: int):
        got = self._fwd.get(src)
        if got is None:
            dist, wts, _ = self._run_bfs(src, self.out)
            got = (dist, wts)
            self._fwd[src] = got
        return got

    def _reverse(self):
        if self._rev is None:
            dist, wts, _ = self._run_bfs(0, self.rin)
            self._rev = (dist, wts)
        return self._rev

    def _reverse_down(self):
        if self._rev_down is None:
            dist, wts, step = self._run_bfs(0, self.rin_down)
            assert all(d >= 0 for d in dist), (
                "element with no downward decomposition"
            )
            # Down-only distance to the identity agrees with the
            # unrestricted one.
            assert dist == self._reverse()[0], (
                "a shortest path to the identity beats the down-only one"
            )
            self._rev_down = (dist, wts, step)
        return self._rev_down

    # -- queries ----------------------------------------------------------

    def _idx(self, x) -> int:
        return x if isinstance(x, int) else self.table.idx(x)

    def edge(self, x, root_idx: int):
        """("up"|"down", target index) for the edge at (x, beta), or None."""
        xi = self._idx(x)
        y = self.table.rmult_root(root_idx)[xi]
        d = self.table.lengths[y] - self.table.lengths[xi]
        if d == 1:
            return ("up", y)
        drop = pair_root_coroot(
            self.rs, self.rs.two_rho, self.rs.positive_coroots[root_idx]
        ) - 1
        if d == -drop:
            return ("down", y)
        return None

    def d_gamma(self, x, y) -> int:
        dist, _ = self._forward(self._idx(x))
        return dist[self._idx(y)]

    def wt(self, x, y) -> Coroot:
        _, wts = self._forward(self._idx(x))
        return wts[self._idx(y)]

    def wt1(self, x) -> Coroot:
        """wt(x, 1), the weight to the identity."""
        return self._reverse()[1][self._idx(x)]

    def ell_down(self, x) -> int:
        """Least number of down edges from x to the identity."""
        return self._reverse_down()[0][self._idx(x)]

    def rqrd(self, x) -> RQRD:
        """A minimal downward decomposition of x read off the search tree."""
        _, _, step = self._reverse_down()
        v = self._idx(x)
        labels = []
        while v != 0:
            a, v = step[v]
            labels.append(a)
        roots = self.rs.positive_roots
        return RQRD(tuple(roots[a] for a in reversed(labels)))

    def all_wt1(self) -> list[Coroot]:
        return self._reverse()[1]

    def all_ell_down(self) -> list[int]:
        return self._reverse_down()[0]

    def down_root_indices(self) -> set[int]:
        """Indices of roots that appear on at least one down edge."""
        return {a for edges in self.out for _, a, down in edges if down}


_GRAPHS: dict[RootSystem, QBGraph] = {}


def build_qbg(rs: RootSystem, cap: int = DEFAULT_QBG_CAP) -> QBGraph:
    """Build (and cache) the graph; BudgetError when |W| exceeds ``cap``."""
    g = _GRAPHS.get(rs)
    if g is None:
        g = QBGraph(enumerate_group(rs, cap))
        _GRAPHS[rs] = g
    return g


@dataclass
class RQRDReport:
    """Outcome of checking a proposed downward decomposition."""

    ok: bool
    reasons: list[str] = field(default_factory=list)
    factor_count: int = 0
    length_sum: int = 0
    minimality: str | None = None  # "graph" or "reflection-length bound"


def verify_rqrd(x: WeylElt, factors, cap: int = DEFAULT_QBG_CAP) -> RQRDReport:
    """Check that ``factors`` (root coefficient vectors, product order) is a
    minimal length-additive quantum-reflection factorization of x.

    Minimality is decided by graph search when the group fits under ``cap``;
    otherwise it is certified only when the factor count meets the
    reflection-length lower bound rank(x - 1)."""
    rs = x.rs
    factors = tuple(tuple(f) for f in factors)
    k = len(factors)
    reasons: list[str] = []
    idxs: list[int] = []
    for f in factors:
        a = rs.root_index.get(f)
        if a is None:
            reasons.append(f"{f} is not a positive root")
        elif not rs.quantum_flags[a]:
            reasons.append(f"{f} is not a quantum root")
        else:
            idxs.append(a)
    lsum = 0
    if len(idxs) == k:
        prod = identity_elt(rs)
        for a in idxs:
            prod = prod.mul(reflection(rs, a))
            lsum += rs.reflection_lengths[a]
        if prod != x:
            reasons.append("factors do not multiply to the element")
        if lsum != x.length():
            reasons.append(
                f"length sum {lsum} differs from ell(x) = {x.length()}"
            )
    minimality = None
    if not reasons:
        if WEYL_ORDER(rs.cartan_type, rs.rank) <= cap:
            d = build_qbg(rs, cap).ell_down(x)
            if k == d:
                minimality = "graph"
            else:
                reasons.append(
                    f"not minimal: {k} factors, but a {d}-step "
                    "decomposition exists"
                )
        else:
            lr = reflection_length(x)
            if k == lr:
                minimality = "reflection-length bound"
            else:
                reasons.append(
                    f"minimality undecided without enumeration "
                    f"({k} factors, lower bound {lr})"
                )
    return RQRDReport(not reasons, reasons, k, lsum, minimality)


# -- closed forms ---------------------------------------------------------


def _check_type(cartan_type: str, rank: int) -> str:
    ct = cartan_type.upper()
    if ct not in VALID_RANKS or not VALID_RANKS[ct](rank):
        raise ValueError(f"no irreducible type {cartan_type}{rank}")
    return ct


def _pairs(top: int) -> list[int]:
    """(2, 2, 4, 4, ..., top, top) for even top >= 0."""
    out: list[int] = []
    for v in range(2, top + 1, 2):
        out += [v, v]
    return out


def wt_w0_closed_form(cartan_type: str, rank: int) -> Coroot:
    """wt(w_0) in simple-coroot coordinates, per type and rank.

    >>> wt_w0_closed_form("A", 3)
    (1, 2, 1)
    >>> wt_w0_closed_form("G", 2)
    (2, 2)
    """
    ct = _check_type(cartan_type, rank)
    n = rank
    k = n // 2
    if ct == "A":
        if n % 2 == 0:
            half = list(range(1, k + 1))
            return tuple(half + half[::-1])
        half = list(range(1, k + 2))
        return tuple(half + half[-2::-1])
    if ct == "B":
        if n % 2 == 0:
            return tuple(_pairs(2 * k - 2) + [2 * k, k])
        return tuple(_pairs(2 * k) + [k + 1])
    if ct == "C":
        return tuple(range(1, n + 1))
    if ct == "D":
        if n % 2 == 0:
            return tuple(_pairs(2 * k - 2) + [k, k])
        return tuple(_pairs(2 * k - 2) + [2 * k, k, k])
    return {
        ("E", 6): (2, 2, 4, 6, 4, 2),
        ("E", 7): (2, 5, 6, 8, 7, 4, 3),
        ("E", 8): (4, 8, 10, 14, 12, 8, 6, 2),
        ("F", 4): (2, 6, 4, 2),
        ("G", 2): (2, 2),
    }[(ct, n)]


def _unit_root(n: int, pos: int) -> Root:
    """alpha_pos as a coefficient vector, 1-based position."""
    return tuple(1 if j == pos - 1 else 0 for j in range(n))


def w0_rqrd_exhibit(cartan_type: str, rank: int) -> tuple[Root, ...]:
    """A minimal downward decomposition of the longest element, as root
    coefficient vectors in product order.

    The factors are pairwise orthogonal (they form the cascade of strongly
    orthogonal roots), the factor count equals the reflection length of w_0,
    and the coroots of the factors sum to ``wt_w0_closed_form``.  All three
    facts are what the test suite checks."""
    ct = _check_type(cartan_type, rank)
    n = rank
    k = n // 2
    facs: list[Root] = []
    if ct == "A":
        for j in range(1, (n + 1) // 2 + 1):
            facs.append(
                tuple(1 if j - 1 <= i <= n - j else 0 for i in range(n))
            )
        return tuple(facs)
    if ct == "B":
        last_o = n - 1 if n % 2 == 0 else n - 2
        for o in range(1, last_o + 1, 2):
            long_root = tuple(
                0 if i < o - 1 else (1 if i == o - 1 else 2)
                for i in range(n)
            )
            facs += [long_root, _unit_root(n, o)]
        if n % 2 == 1:
            facs.append(_unit_root(n, n))
        return tuple(facs)
    if ct == "C":
        for j in range(1, n + 1):
            facs.append(
                tuple(
                    0 if i < j - 1 else (1 if i == n - 1 else 2)
                    for i in range(n)
                )
            )
        return tuple(facs)
    if ct == "D":
        # Tails are 2's through position n-2, then 1, 1 on the fork.
        last_o = n - 3 if n % 2 == 0 else n - 4
        for o in range(1, last_o + 1, 2):
            long_root = tuple(
                0 if i < o - 1
                else 1 if i == o - 1 or i >= n - 2
                else 2
                for i in range(n)
            )
            facs += [long_root, _unit_root(n, o)]
        if n % 2 == 0:
            facs += [_unit_root(n, n - 1), _unit_root(n, n)]
        else:
            fork = tuple(1 if i >= n - 3 else 0 for i in range(n))
            facs += [fork, _unit_root(n, n - 2)]
        return tuple(facs)
    return {
        ("E", 6): (
            (1, 2, 2, 3, 2, 1),
            (1, 0, 1, 1, 1, 1),
            (0, 0, 1, 1, 1, 0),
            (0, 0, 0, 1, 0, 0),
        ),
        ("E", 7): (
            (2, 2, 3, 4, 3, 2, 1),
            (0, 1, 1, 2, 2, 2, 1),
            (0, 1, 1, 2, 1, 0, 0),
            (0, 1, 0, 0, 0, 0, 0),
            (0, 0, 1, 0, 0, 0, 0),
            (0, 0, 0, 0, 1, 0, 0),
            (0, 0, 0, 0, 0, 0, 1),
        ),
        ("E", 8): (
            (2, 3, 4, 6, 5, 4, 3, 2),
            (2, 2, 3, 4, 3, 2, 1, 0),
            (0, 1, 1, 2, 2, 2, 1, 0),
            (0, 1, 1, 2, 1, 0, 0, 0),
            (0, 1, 0, 0, 0, 0, 0, 0),
            (0, 0, 1, 0, 0, 0, 0, 0),
            (0, 0, 0, 0, 1, 0, 0, 0),
            (0, 0, 0, 0, 0, 0, 1, 0),
        ),
        ("F", 4): (
            (2, 3, 4, 2),
            (0, 1, 2, 2),
            (0, 1, 2, 0),
            (0, 1, 0, 0),
        ),
        ("G", 2): ((3, 2), (1, 0)),
    }[(ct, n)]


# -- weight bounds --------------------------------------------------------


def m_tilde(cartan_type: str, rank: int) -> int:
    """Tabulated bound for max over x and simple alpha of <alpha, wt(x)>."""
    ct = _check_type(cartan_type, rank)
    if ct == "A":
        return rank + 1
    if ct in ("B", "C", "D"):
        return 2 * rank
    return {("E", 6): 12, ("E", 7): 16, ("E", 8): 28,
            ("F", 4): 12, ("G", 2): 4}[(ct, rank)]


def reflection_length_w0(cartan_type: str, rank: int) -> int:
    """Tabulated reflection length of the longest element (the least number
    of reflections, simple or not, whose product is w0)."""
    ct = _check_type(cartan_type, rank)
    if ct == "A":
        return (rank + 1) // 2
    if ct in ("B", "C"):
        return rank
    if ct == "D":
        return 2 * (rank // 2)
    return {("E", 6): 4, ("E", 7): 7, ("E", 8): 8,
            ("F", 4): 4, ("G", 2): 2}[(ct, rank)]


def compute_M(rs: RootSystem, cap: int = DEFAULT_QBG_CAP) -> int:
    """max over x in W and simple alpha of <alpha, wt(x)>, by enumeration."""
    g = build_qbg(rs, cap)
    C = rs.cartan
    n = rs.rank
    best = 0
    for v in g.all_wt1():
        for i in range(n):
            s = sum(v[j] * C[j][i] for j in range(n) if v[j])
            if s > best:
                best = s
    return best
