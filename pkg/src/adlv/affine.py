"""Extended affine Weyl group elements t^lambda x, with exact lengths.

An element is a pair: an integral coweight lambda (pairing coordinates) and a
finite part x, multiplying by t^a x . t^b y = t^{a + x(b)} (xy).  The affine
simple generator is s_0 = t^{theta_check} s_theta; words use letters 0..n
with 0 the affine node and j >= 1 the finite simple reflection s_j.

Length is the number of affine hyperplanes separating the base alcove from
its image, evaluated at the generic point rho_check / h (h the Coxeter
number).  Clearing denominators by h makes the count pure integer
arithmetic: for each positive root alpha the contribution is
|<alpha, lambda>| when x^-1 alpha > 0 and |<alpha, lambda> - 1| otherwise.

Bruhat order is by the lifting recursion, lower intervals by the subword
dynamic program over a reduced word, cocovers by enumerating separating
reflections, and the three Demazure products (max-fold, left min-fold,
right min-fold) by folding reduced words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._matrix import transpose, mat_vec
from .errors import BudgetError
from .rootsys import Coweight, RootSystem
from .weyl import (
    GroupTable,
    WeylElt,
    identity_elt,
    reflection,
    simple_reflection,
    word_str,
)

__all__ = [
    "AffineElt",
    "BruhatInterval",
    "embed",
    "translation",
    "simple_affine",
    "affine_length",
    "descent_left",
    "descent_right",
    "reduced_word",
    "reduced_word_and_tau",
    "tau_letter_map",
    "coroot_pairing_coords",
    "engine_for",
    "bruhat_leq_affine",
    "lower_interval",
    "cocovers",
    "cocovers_with_reflections",
    "demazure_star",
    "demazure_rtri",
    "demazure_ltri",
    "IntervalEngine",
    "affine_word_str",
]

DEFAULT_INTERVAL_BUDGET = 30


class AffineElt:
    """t^lam * fin, with lam given in integer pairing coordinates."""

    __slots__ = ("rs", "lam", "fin", "_len", "_hash", "_omega")

    def __init__(self, rs: RootSystem, lam: Sequence[int], fin: WeylElt):
        assert all(isinstance(c, int) for c in lam), "translation part must be integral"
        self.rs = rs
        self.lam = tuple(lam)
        self.fin = fin
        self._len = None
        self._hash = None
        self._omega = None

    def mul(self, other: "AffineElt") -> "AffineElt":
        assert self.rs is other.rs
        moved = self.fin.act_pairing(other.lam)
        return AffineElt(
            self.rs,
            tuple(a + b for a, b in zip(self.lam, moved)),
            self.fin.mul(other.fin),
        )

    def inv(self) -> "AffineElt":
        lam = self.fin.act_pairing_inv(self.lam)
        return AffineElt(self.rs, tuple(-a for a in lam), self.fin.inv())

    def is_identity(self) -> bool:
        return not any(self.lam) and self.fin.is_identity()

    def is_translation(self) -> bool:
        return self.fin.is_identity()

    @property
    def omega(self) -> tuple:
        """Class of the translation part in (coweight lattice)/(coroot
        lattice): the fractional parts of the coroot coordinates."""
        if self._omega is None:
            cc = mat_vec(self.rs.inv_cartan_t, self.lam)
            self._omega = tuple(Fraction(x) % 1 for x in cc)
        return self._omega

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineElt)
            and self.lam == other.lam
            and self.fin == other.fin
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.lam, self.fin.m))
        return self._hash

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"AffineElt(t^{list(self.lam)} {self.fin!r})"


@dataclass(frozen=True)
class BruhatInterval:
    top: AffineElt
    members: frozenset


def embed(x: WeylElt) -> AffineElt:
    """The finite element x viewed as t^0 x."""
    return AffineElt(x.rs, (0,) * x.rs.rank, x)


def translation(lam: Coweight) -> AffineElt:
    """t^lam; lam must have integer pairing coordinates."""
    assert all(isinstance(c, int) for c in lam.pairing), (
        "translation requires an integral coweight"
    )
    return AffineElt(lam.rs, lam.pairing, identity_elt(lam.rs))


@lru_cache(maxsize=None)
def coroot_pairing_coords(rs: RootSystem, a: int) -> tuple[int, ...]:
    """Pairing coordinates <alpha_i, beta_check> of the a-th positive coroot."""
    return mat_vec(transpose(rs.cartan), rs.positive_coroots[a])


@lru_cache(maxsize=None)
def simple_affine(rs: RootSystem, j: int) -> AffineElt:
    """The affine generator s_0 = t^{theta_check} s_theta, or s_j for j >= 1."""
    if j == 0:
        return AffineElt(
            rs,
            coroot_pairing_coords(rs, rs.theta_index),
            reflection(rs, rs.theta_index),
        )
    return embed(simple_reflection(rs, j - 1))


def _mul_letter_right(w: AffineElt, j: int) -> AffineElt:
    rs = w.rs
    if j == 0:
        thp = coroot_pairing_coords(rs, rs.theta_index)
        moved = w.fin.act_pairing(thp)
        return AffineElt(
            rs,
            tuple(a + b for a, b in zip(w.lam, moved)),
            w.fin.mul(reflection(rs, rs.theta_index)),
        )
    return AffineElt(rs, w.lam, w.fin.mul(simple_reflection(rs, j - 1)))


def _mul_letter_left(j: int, w: AffineElt) -> AffineElt:
    rs = w.rs
    if j == 0:
        thp = coroot_pairing_coords(rs, rs.theta_index)
        st = reflection(rs, rs.theta_index)
        moved = st.act_pairing(w.lam)
        return AffineElt(
            rs,
            tuple(a + b for a, b in zip(thp, moved)),
            st.mul(w.fin),
        )
    s = simple_reflection(rs, j - 1)
    return AffineElt(rs, s.act_pairing(w.lam), s.mul(w.fin))


def affine_length(w: AffineElt) -> int:
    """Number of affine root hyperplanes separating the base alcove from its
    image under w, via an exact count at the point rho_check / h."""
    if w._len is not None:
        return w._len
    lam = w.lam
    fin = w.fin
    total = 0
    for root in w.rs.positive_roots:
        a = sum(c * p for c, p in zip(root, lam))
        img = fin.act_root_inv(root)
        pos = _root_sign(img) > 0
        total += abs(a) if pos else abs(a - 1)
    w._len = total
    return total


def _root_sign(v: Sequence[int]) -> int:
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


def descent_right(w: AffineElt, j: int) -> bool:
    """True iff ell(w s_j) < ell(w)."""
    rs = w.rs
    if j == 0:
        gamma = w.fin.act_root(rs.theta)
        c = sum(g * p for g, p in zip(gamma, w.lam))
        return c < -1 or (c == -1 and _root_sign(gamma) > 0)
    gamma = w.fin.act_root(rs.simple_root(j - 1))
    c = sum(g * p for g, p in zip(gamma, w.lam))
    return c > 0 or (c == 0 and _root_sign(gamma) < 0)


def descent_left(w: AffineElt, j: int) -> bool:
    """True iff ell(s_j w) < ell(w)."""
    rs = w.rs
    if j == 0:
        c = sum(g * p for g, p in zip(rs.theta, w.lam))
        return c > 1 or (c == 1 and _root_sign(w.fin.act_root_inv(rs.theta)) > 0)
    i = j - 1
    li = w.lam[i]
    return li < 0 or (
        li == 0 and _root_sign(w.fin.act_root_inv(rs.simple_root(i))) < 0
    )


def reduced_word_and_tau(w: AffineElt) -> tuple[tuple[int, ...], AffineElt]:
    """Greedy least-left-descent word and the length-zero residual:
    w = s_{j_1} ... s_{j_l} tau with l = ell(w).

    The residual tau is the identity exactly when the translation part lies
    in the coroot lattice; otherwise it is the stabilizer element of w's
    lattice class."""
    n = w.rs.rank
    target = affine_length(w)
    out: list[int] = []
    cur = w
    while len(out) < target:
        j = next((k for k in range(n + 1) if descent_left(cur, k)), None)
        assert j is not None, "no descent on a length-positive element"
        out.append(j)
        cur = _mul_letter_left(j, cur)
    assert affine_length(cur) == 0, "peeling left descents left length behind"
    return tuple(out), cur


def reduced_word(w: AffineElt) -> tuple[int, ...]:
    """Reduced word over letters 0..n, chosen by least left descent.  Only
    for elements of the affine Weyl group proper; elements with a
    length-zero component have no word over the generators."""
    word, tau = reduced_word_and_tau(w)
    if not tau.is_identity():
        raise ValueError(
            "element has a nontrivial length-zero part; use "
            "reduced_word_and_tau"
        )
    return word


def tau_letter_map(tau: AffineElt) -> tuple[int, ...]:
    """The permutation sigma of the letters 0..n with
    tau s_j tau^{-1} = s_{sigma(j)}, for a length-zero tau."""
    rs = tau.rs
    assert affine_length(tau) == 0
    ti = tau.inv()
    out = []
    for j in range(rs.rank + 1):
        c = tau.mul(simple_affine(rs, j)).mul(ti)
        k = next(
            (i for i in range(rs.rank + 1) if c == simple_affine(rs, i)),
            None,
        )
        assert k is not None, "conjugate of a generator is not a generator"
        out.append(k)
    assert sorted(out) == list(range(rs.rank + 1))
    return tuple(out)


def affine_word_str(word: Iterable[int]) -> str:
    return word_str(word, letters_are_affine=True)


@lru_cache(maxsize=500_000)
def _ableq(a: AffineElt, b: AffineElt) -> bool:
    if a == b:
        return True
    if affine_length(a) >= affine_length(b):
        return False
    n = a.rs.rank
    j = next(k for k in range(n + 1) if descent_left(b, k))
    sb = _mul_letter_left(j, b)
    if descent_left(a, j):
        return _ableq(_mul_letter_left(j, a), sb)
    return _ableq(a, sb)


def bruhat_leq_affine(a: AffineElt, b: AffineElt) -> bool:
    """Bruhat order on the extended affine Weyl group.  Elements in different
    translation-lattice classes are incomparable."""
    assert a.rs is b.rs
    if a.omega != b.omega:
        return False
    return _ableq(a, b)


def lower_interval(w: AffineElt, budget: int = DEFAULT_INTERVAL_BUDGET) -> BruhatInterval:
    """All u <= w, by the subword dynamic program along a reduced word."""
    lw = affine_length(w)
    if lw > budget:
        raise BudgetError(
            f"lower interval of an element of length {lw} exceeds the budget "
            f"of {budget}; raise the budget explicitly to proceed"
        )
    word, tau = reduced_word_and_tau(w)
    members: set[AffineElt] = {embed(identity_elt(w.rs))}
    for j in word:
        members |= {_mul_letter_right(u, j) for u in members}
    if not tau.is_identity():
        members = {u.mul(tau) for u in members}
    assert w in members
    return BruhatInterval(top=w, members=frozenset(members))


def cocovers_with_reflections(w: AffineElt) -> list[tuple[int, int, AffineElt]]:
    """All Bruhat cocovers of w, as (root index, translation step m, r w)
    where the separating reflection is r = t^{m alpha_check} s_alpha.

    Candidate reflections are exactly those whose hyperplane separates the
    base alcove from w's alcove; their number must equal ell(w), which is
    asserted.  Cocovers are the candidates that drop the length by exactly 1.
    """
    rs = w.rs
    h = rs.coxeter_number
    lam, x = w.lam, w.fin
    lw = affine_length(w)
    out = []
    nsep = 0
    for a, root in enumerate(rs.positive_roots):
        aval = sum(c * p for c, p in zip(root, lam))
        img = x.act_root_inv(root)
        ht2 = sum(img)
        hi = h * aval + ht2          # h * <alpha, w(p)> with p = rho_check/h
        # integers m with m*h strictly between ht(alpha) in (0,h) and hi
        if hi > 0:
            ms = range(1, (hi - 1) // h + 1)
        else:
            ms = range(hi // h + 1, 1)
        for m in ms:
            nsep += 1
            r = AffineElt(
                rs,
                tuple(m * c for c in coroot_pairing_coords(rs, a)),
                reflection(rs, a),
            )
            cand = r.mul(w)
            if affine_length(cand) == lw - 1:
                out.append((a, m, cand))
    assert nsep == lw, f"separating-hyperplane count {nsep} != length {lw}"
    return out


def cocovers(w: AffineElt) -> list[AffineElt]:
    return [c for (_, _, c) in cocovers_with_reflections(w)]


# -- Demazure products ---------------------------------------------------

def demazure_star(x: AffineElt, y: AffineElt) -> AffineElt:
    """Max-fold product: the longest element of {u v : u <= x, v <= y}."""
    word, tau = reduced_word_and_tau(y)
    cur = x
    for j in word:
        cand = _mul_letter_right(cur, j)
        if affine_length(cand) > affine_length(cur):
            cur = cand
    return cur if tau.is_identity() else cur.mul(tau)


def demazure_rtri(x: AffineElt, y: AffineElt) -> AffineElt:
    """Left min-fold x |> y: the unique minimum of {u y : u <= x}."""
    word, tau = reduced_word_and_tau(x)
    cur = y if tau.is_identity() else tau.mul(y)
    for j in reversed(word):
        cand = _mul_letter_left(j, cur)
        if affine_length(cand) < affine_length(cur):
            cur = cand
    return cur


def demazure_ltri(x: AffineElt, y: AffineElt) -> AffineElt:
    """Right min-fold x <| y: the unique minimum of {x v : v <= y}."""
    word, tau = reduced_word_and_tau(y)
    cur = x
    for j in word:
        cand = _mul_letter_right(cur, j)
        if affine_length(cand) < affine_length(cur):
            cur = cand
    return cur if tau.is_identity() else cur.mul(tau)


# -- packed interval engine ----------------------------------------------

class IntervalEngine:
    """Subword dynamic programming over packed integer states.

    A state is t^mu z with z indexed in a GroupTable and mu offset-shifted
    into a fixed box; the whole state packs into one int, so interval sweeps
    work on sets of ints.  Transitions by a right letter only touch the
    finite index (j >= 1) or additionally shift mu by z(theta_check) (j = 0).
    """

    def __init__(self, table: GroupTable, bound: int):
        self.table = table
        self.rs = table.rs
        self.bound = bound
        self.width = 2 * bound + 1
        self.nw = len(table.elements)
        rs = self.rs
        self.theta_pair = coroot_pairing_coords(rs, rs.theta_index)
        self.rmult_stheta = table.rmult_root(rs.theta_index)
        self.delta = [e.act_pairing(self.theta_pair) for e in table.elements]
        self._zero = self.pack(0, (0,) * rs.rank)

    def pack(self, x_idx: int, mu: Sequence[int]) -> int:
        code = 0
        for c in reversed(mu):
            s = c + self.bound
            assert 0 <= s < self.width, "interval state out of the coweight box"
            code = code * self.width + s
        return code * self.nw + x_idx

    def unpack(self, state: int) -> tuple[int, tuple[int, ...]]:
        x_idx = state % self.nw
        code = state // self.nw
        mu = []
        for _ in range(self.rs.rank):
            code, s = divmod(code, self.width)
            mu.append(s - self.bound)
        return x_idx, tuple(mu)

    def to_elt(self, state: int) -> AffineElt:
        x_idx, mu = self.unpack(state)
        return AffineElt(self.rs, mu, self.table.elements[x_idx])

    def apply(self, state: int, j: int) -> int:
        if j >= 1:
            x_idx = state % self.nw
            return state - x_idx + self.table.rmult[j - 1][x_idx]
        x_idx, mu = self.unpack(state)
        mu2 = tuple(a + b for a, b in zip(mu, self.delta[x_idx]))
        return self.pack(self.rmult_stheta[x_idx], mu2)

    def step(self, states: set[int], j: int) -> set[int]:
        out = set(states)
        for s in states:
            out.add(self.apply(s, j))
        return out

    def interval_states(self, word: Sequence[int], state_cap: int | None = None) -> set[int]:
        states = {self._zero}
        for j in word:
            states = self.step(states, j)
            if state_cap is not None and len(states) > state_cap:
                raise BudgetError(
                    f"interval grew past {state_cap} states"
                )
        return states


def engine_for(table: GroupTable, max_length: int) -> IntervalEngine:
    """Engine sized for intervals below elements of the given length: every
    coordinate of any translation part in such an interval is bounded by the
    element length plus the number of positive roots."""
    bound = max_length + len(table.rs.positive_roots) + 2
    return IntervalEngine(table, bound)


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
