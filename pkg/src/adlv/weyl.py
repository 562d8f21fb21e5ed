"""Finite Weyl group elements as exact integer matrices.

An element carries four integer matrices: its action on coroot coordinates,
its action on root coordinates, and the two inverses.  Carrying the inverses
makes inversion free and gives O(n^2) access to both "how does w move this
root" and "which root maps onto this one", which the graph algorithms lean on
heavily.

Lengths come from counting inverted positive roots, Bruhat order from the
standard lifting recursion, reflection length from the rank of (action - id)
on the reflection representation.

>>> rs = build_root_system("A", 2)
>>> w0 = longest_element(rs)
>>> w0.length(), reflection_length(w0)
(3, 1)
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from ._matrix import identity, mat_mul, mat_rank, mat_sub, mat_vec
from .errors import BudgetError
from .rootsys import Root, RootSystem, WEYL_ORDER

__all__ = [
    "WeylElt",
    "GroupTable",
    "identity_elt",
    "simple_reflection",
    "reflection",
    "from_word",
    "longest_element",
    "bruhat_leq",
    "reflection_length",
    "enumerate_group",
    "word_str",
]


class WeylElt:
    """A finite Weyl group element; build via the module constructors."""

    __slots__ = ("rs", "m", "r", "mi", "ri", "_len", "_hash")

    def __init__(self, rs: RootSystem, m, r, mi, ri):
        self.rs = rs
        self.m = m      # action on coroot coordinates
        self.r = r      # action on root coordinates
        self.mi = mi
        self.ri = ri
        self._len = None
        self._hash = None

    # -- group operations -------------------------------------------------

    def mul(self, other: "WeylElt") -> "WeylElt":
        assert self.rs is other.rs
        return WeylElt(
            self.rs,
            mat_mul(self.m, other.m),
            mat_mul(self.r, other.r),
            mat_mul(other.mi, self.mi),
            mat_mul(other.ri, self.ri),
        )

    def inv(self) -> "WeylElt":
        return WeylElt(self.rs, self.mi, self.ri, self.m, self.r)

    # -- actions ----------------------------------------------------------

    def act_root(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return mat_vec(self.r, coeffs)

    def act_root_inv(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return mat_vec(self.ri, coeffs)

    def act_coroot(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return mat_vec(self.m, coeffs)

    def act_pairing(self, p: Sequence) -> tuple:
        # <alpha_k, w lambda> = <w^-1 alpha_k, lambda>; column k of ri holds
        # the root coordinates of w^-1 alpha_k.
        ri = self.ri
        n = len(p)
        return tuple(sum(ri[j][k] * p[j] for j in range(n)) for k in range(n))

    def act_pairing_inv(self, p: Sequence) -> tuple:
        r = self.r
        n = len(p)
        return tuple(sum(r[j][k] * p[j] for j in range(n)) for k in range(n))

    # -- length and descents ----------------------------------------------

    def length(self) -> int:
        if self._len is None:
            cnt = 0
            for root in self.rs.positive_roots:
                if _sign(self.act_root(root)) < 0:
                    cnt += 1
            self._len = cnt
        return self._len

    def inv_set(self) -> list[Root]:
        """Positive roots sent negative by this element."""
        return [root for root in self.rs.positive_roots
                if _sign(self.act_root(root)) < 0]

    def is_identity(self) -> bool:
        return self.m == _id_mat(self.rs)

    def descent_right(self, i: int) -> bool:
        """ell(w s_i) < ell(w), i.e. w(alpha_i) < 0 (i is 0-based)."""
        return _sign(tuple(row[i] for row in self.r)) < 0

    def descent_left(self, i: int) -> bool:
        """ell(s_i w) < ell(w), i.e. w^-1(alpha_i) < 0."""
        return _sign(tuple(row[i] for row in self.ri)) < 0

    def to_word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (0-based generator indices)."""
        w = self
        out: list[int] = []
        n = self.rs.rank
        while True:
            i = next((k for k in range(n) if w.descent_left(k)), None)
            if i is None:
                assert w.is_identity()
                return tuple(out)
            out.append(i)
            w = simple_reflection(self.rs, i).mul(w)

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElt) and self.m == other.m and self.rs is other.rs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.m)
        return self._hash

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        w = self.to_word()
        return "WeylElt(e)" if not w else f"WeylElt({word_str(w)})"


def _sign(v: Sequence[int]) -> int:
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


def word_str(word: Iterable[int], letters_are_affine: bool = False) -> str:
    """Human form of a word.  Finite words use 1-based Bourbaki labels; affine
    words are already over letters 0..n with 0 the affine node."""
    seq = list(word)
    if not seq:
        return "e"
    if letters_are_affine:
        return "".join(f"s{j}" for j in seq)
    return "".join(f"s{i + 1}" for i in seq)


@lru_cache(maxsize=None)
def _id_mat(rs: RootSystem):
    return identity(rs.rank)


@lru_cache(maxsize=None)
def identity_elt(rs: RootSystem) -> WeylElt:
    e = _id_mat(rs)
    return WeylElt(rs, e, e, e, e)


@lru_cache(maxsize=None)
def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    """s_i for 0-based simple index i."""
    n = rs.rank
    C = rs.cartan
    m = tuple(
        tuple((1 if k == j else 0) - (C[j][i] if k == i else 0) for j in range(n))
        for k in range(n)
    )
    r = tuple(
        tuple((1 if k == j else 0) - (C[i][j] if k == i else 0) for j in range(n))
        for k in range(n)
    )
    return WeylElt(rs, m, r, m, r)


def reflection(rs: RootSystem, root) -> WeylElt:
    """s_beta for a positive root (given by coefficients or by index)."""
    a = root if isinstance(root, int) else rs.root_index[tuple(root)]
    return _reflection_by_index(rs, a)


@lru_cache(maxsize=None)
def _reflection_by_index(rs: RootSystem, a: int) -> WeylElt:
    beta = rs.positive_roots[a]
    bc = rs.positive_coroots[a]
    n = rs.rank
    C = rs.cartan
    # <alpha_j, beta_check> and <beta, alpha_j_check>
    prc = tuple(sum(bc[i] * C[i][j] for i in range(n)) for j in range(n))
    pr = rs.pairing_rows[a]
    r = tuple(
        tuple((1 if k == j else 0) - prc[j] * beta[k] for j in range(n))
        for k in range(n)
    )
    m = tuple(
        tuple((1 if k == j else 0) - pr[j] * bc[k] for j in range(n))
        for k in range(n)
    )
    return WeylElt(rs, m, r, m, r)


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElt:
    """Product of simple reflections (0-based indices)."""
    w = identity_elt(rs)
    for i in word:
        w = w.mul(simple_reflection(rs, i))
    return w


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> WeylElt:
    w = identity_elt(rs)
    n = rs.rank
    while True:
        i = next((k for k in range(n) if not w.descent_right(k)), None)
        if i is None:
            assert w.length() == len(rs.positive_roots)
            return w
        w = w.mul(simple_reflection(rs, i))


@lru_cache(maxsize=None)
def _bruhat(x: WeylElt, y: WeylElt) -> bool:
    if x.length() > y.length():
        return False
    if x.length() == y.length():
        return x == y
    # deterministic lifting: take the least left descent of y
    rs = x.rs
    i = next(k for k in range(rs.rank) if y.descent_left(k))
    s = simple_reflection(rs, i)
    sy = s.mul(y)
    if x.descent_left(i):
        return _bruhat(s.mul(x), sy)
    return _bruhat(x, sy)


def bruhat_leq(x: WeylElt, y: WeylElt) -> bool:
    """Bruhat order on the finite Weyl group, by the lifting recursion."""
    assert x.rs is y.rs
    return _bruhat(x, y)


def reflection_length(x: WeylElt) -> int:
    """Least number of reflections multiplying to x: the rank of (x - 1) on
    the reflection representation."""
    return mat_rank(mat_sub(x.m, _id_mat(x.rs)))


class GroupTable:
    """Breadth-first enumeration of a finite Weyl group.

    Elements are indexed 0..|W|-1 ordered by (length, lexicographic reduced
    word); index 0 is the identity.  ``rmult[i][a]`` is the index of
    ``elements[a] * s_i``.  Reflection-multiplication tables and the full
    Bruhat relation (as bitmasks) are built lazily.
    """

    def __init__(self, rs: RootSystem, cap: int = 10 ** 6):
        order = WEYL_ORDER(rs.cartan_type, rs.rank)
        if order > cap:
            raise BudgetError(
                f"Weyl group of type {rs.cartan_type}{rs.rank} has {order} "
                f"elements, exceeding the cap of {cap}"
            )
        self.rs = rs
        n = rs.rank
        e = identity_elt(rs)
        gens = [simple_reflection(rs, i) for i in range(n)]
        elements: list[WeylElt] = [e]
        words: list[tuple[int, ...]] = [()]
        index: dict = {e.m: 0}
        rmult: list[list[int]] = [[-1] * order for _ in range(n)]
        layer = [0]
        while layer:
            nxt: list[int] = []
            for a in layer:
                x = elements[a]
                for i in range(n):
                    if x.descent_right(i):
                        continue
                    y = x.mul(gens[i])
                    b = index.get(y.m)
                    if b is None:
                        b = len(elements)
                        index[y.m] = b
                        elements.append(y)
                        words.append(words[a] + (i,))
                        y._len = len(words[b])
                        nxt.append(b)
                    rmult[i][a] = b
                    rmult[i][b] = a
            layer = nxt
        assert len(elements) == order, f"BFS found {len(elements)} of {order}"
        self.elements = elements
        self.words = words
        self.index = index
        self.lengths = [len(w) for w in words]
        self.rmult = rmult
        self._lmult: dict[int, list[int]] = {}
        self._refl_mult: dict[int, list[int]] = {}
        self._inv: list[int] | None = None
        self._leq_masks: list[int] | None = None
        self.w0_idx = index[longest_element(rs).m]

    def __len__(self) -> int:
        return len(self.elements)

    def idx(self, x: WeylElt) -> int:
        return self.index[x.m]

    def inv_idx(self, a: int) -> int:
        if self._inv is None:
            self._inv = [self.index[x.mi] for x in self.elements]
        return self._inv[a]

    def prod_idx(self, a: int, b: int) -> int:
        return self.index[mat_mul(self.elements[a].m, self.elements[b].m)]

    def lmult_gen(self, i: int, a: int) -> int:
        tab = self._lmult.get(i)
        if tab is None:
            s = simple_reflection(self.rs, i)
            tab = [self.index[mat_mul(s.m, x.m)] for x in self.elements]
            self._lmult[i] = tab
        return tab[a]

    def rmult_root(self, root_idx: int) -> list[int]:
        """Table of right multiplication by the reflection s_beta."""
        tab = self._refl_mult.get(root_idx)
        if tab is None:
            s = reflection(self.rs, root_idx)
            tab = [self.index[mat_mul(x.m, s.m)] for x in self.elements]
            self._refl_mult[root_idx] = tab
        return tab

    def bruhat_masks(self) -> list[int]:
        """For each index a, a bitmask of all indices b with b <= a in Bruhat
        order.  Built once by the cocover recursion, in length order."""
        if self._leq_masks is None:
            nroots = len(self.rs.positive_roots)
            tabs = [self.rmult_root(t) for t in range(nroots)]
            masks = [0] * len(self.elements)
            for a in range(len(self.elements)):
                m = 1 << a
                la = self.lengths[a]
                for t in range(nroots):
                    b = tabs[t][a]
                    if self.lengths[b] == la - 1:
                        m |= masks[b]
                assert la == 0 or m != (1 << a), "element without a cocover"
                masks[a] = m
            self._leq_masks = masks
        return self._leq_masks

    def leq_idx(self, a: int, b: int) -> bool:
        return bool((self.bruhat_masks()[b] >> a) & 1)


_TABLES: dict[tuple[RootSystem, int], GroupTable] = {}


def enumerate_group(rs: RootSystem, cap: int = 10 ** 6) -> GroupTable:
    """Enumerate W (cached).  Raises BudgetError when |W| exceeds ``cap``."""
    order = WEYL_ORDER(rs.cartan_type, rs.rank)
    if order > cap:
        raise BudgetError(
            f"Weyl group of type {rs.cartan_type}{rs.rank} has {order} "
            f"elements, exceeding the cap of {cap}"
        )
    key = (rs, 0)
    tab = _TABLES.get(key)
    if tab is None:
        tab = GroupTable(rs, cap)
        _TABLES[key] = tab
    return tab


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
