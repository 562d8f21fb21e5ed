"""Newton points of affine Weyl group elements.

The Newton point of w = t^mu z averages mu over the cyclic group generated
by the finite part z and takes the dominant representative; it is an exact
rational coweight.  The maximal Newton point over the Bruhat interval below
w admits a closed form for deeply dominant translations, lam - wt(x) for
w = t^lam x, which this module implements side by side with a brute-force
maximum that scans the whole interval.  The depth thresholds gating the
closed form are table arithmetic; the sweep helpers compare both routes on
integer grids just above the threshold and emit JSON-friendly records.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from random import Random

from .affine import (
    AffineElt,
    IntervalEngine,
    demazure_ltri,
    embed,
    engine_for,
    reduced_word_and_tau,
    tau_letter_map,
)
from .errors import RefusalError
from .qbg import DEFAULT_QBG_CAP, build_qbg, m_tilde
from .rootsys import (
    Coweight,
    Num,
    RootSystem,
    _dominantize,
    build_root_system,
    coweight,
    coweight_from_coroot,
    depth,
    dominance_leq,
    dominant_rep,
)
from .weyl import GroupTable, WeylElt, enumerate_group, longest_element, word_str

__all__ = [
    "NewtonPoint",
    "FormulaResult",
    "newton_point",
    "max_newton_brute",
    "max_translation_below",
    "max_newton_formula",
    "reduce_to_dominant",
    "xi_bound",
    "s_bound",
    "theorem_grid",
    "sample_lambdas",
    "sweep_records",
    "exploration_report",
]


@dataclass(frozen=True)
class NewtonPoint:
    """A dominant rational coweight; the slope invariant of an element."""

    value: Coweight

    def __post_init__(self):
        assert all(p >= 0 for p in self.value.pairing), (
            "Newton point with a negative pairing coordinate"
        )

    @property
    def pairing(self) -> tuple[Num, ...]:
        return self.value.pairing

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"NewtonPoint{self.value.pairing}"


def newton_point(w: AffineElt) -> NewtonPoint:
    """Dominant representative of (1/m) sum of z^i(mu) over i = 1..m, for
    w = t^mu z with z of order m."""
    rs = w.rs
    z = w.fin
    total = [0] * rs.rank
    cur = z
    m = 0
    while True:
        m += 1
        v = cur.act_pairing(w.lam)
        for k in range(rs.rank):
            total[k] += v[k]
        if cur.is_identity():
            break
        cur = cur.mul(z)
    dom, _ = _dominantize(rs, tuple(total))
    return NewtonPoint(coweight(rs, tuple(Fraction(c, m) for c in dom)))


# -- brute force over intervals -------------------------------------------


@lru_cache(maxsize=None)
def _averaging_data(table: GroupTable) -> list[tuple[tuple[int, ...], int]]:
    """Per element z: (sum over i=1..ord(z) of the pairing-action matrix of
    z^i, row-major, and ord(z)).  Lets the Newton sum run in integers."""
    rs = table.rs
    n = rs.rank
    out = []
    for z in table.elements:
        acc = [0] * (n * n)
        cur = z
        m = 0
        while True:
            m += 1
            ri = cur.ri
            for j in range(n):
                row = ri[j]
                base = j * n
                for k in range(n):
                    acc[base + k] += row[k]
            if cur.is_identity():
                break
            cur = cur.mul(z)
        out.append((tuple(acc), m))
    return out


def _tau_twist(eng: IntervalEngine, tau: AffineElt | None):
    """Translate 'state followed by tau' into per-finite-part data: the index
    of z*g and the shift z(nu) to add to mu, for tau = t^nu g.  None when tau
    is trivial."""
    if tau is None or tau.is_identity():
        return None
    table = eng.table
    g_idx = table.idx(tau.fin)
    zg = [table.prod_idx(x, g_idx) for x in range(len(table.elements))]
    delta = [z.act_pairing(tau.lam) for z in table.elements]
    return zg, delta


def _nu_keys(
    eng: IntervalEngine, states, tau: AffineElt | None = None
) -> set[tuple[tuple[int, ...], int]]:
    """Distinct Newton points over a packed state set (each state optionally
    right-multiplied by a length-zero tau), as normalized
    (integer dominant vector, denominator) keys."""
    rs = eng.rs
    n = rs.rank
    data = _averaging_data(eng.table)
    twist = _tau_twist(eng, tau)
    keys: set[tuple[tuple[int, ...], int]] = set()
    for s in states:
        x_idx, mu = eng.unpack(s)
        if twist is not None:
            zg, delta = twist
            mu = tuple(a + b for a, b in zip(mu, delta[x_idx]))
            x_idx = zg[x_idx]
        T, m = data[x_idx]
        raw = tuple(
            sum(mu[j] * T[j * n + k] for j in range(n)) for k in range(n)
        )
        dom, _ = _dominantize(rs, raw)
        g = m
        for c in dom:
            g = gcd(g, c)
        keys.add((tuple(c // g for c in dom), m // g))
    return keys


def _max_point(rs: RootSystem, keys) -> NewtonPoint:
    """Dominance maximum of a set of normalized keys; asserts the set has a
    single top element."""
    assert keys, "empty Newton point set"
    pts = [
        coweight(rs, tuple(Fraction(c, m) for c in cs)) for cs, m in keys
    ]
    two_rho = rs.two_rho
    best = max(
        pts,
        key=lambda p: sum(r * c for r, c in zip(two_rho, p.pairing)),
    )
    for p in pts:
        assert dominance_leq(p, best), (
            "maximal Newton point is not unique"
        )
    return NewtonPoint(best)


def max_newton_brute(w: AffineElt, state_cap: int | None = 5_000_000) -> NewtonPoint:
    """max{nu(u) : u <= w} by scanning the whole lower interval."""
    table = enumerate_group(w.rs)
    word, tau = reduced_word_and_tau(w)
    eng = engine_for(table, len(word))
    states = eng.interval_states(word, state_cap)
    return _max_point(w.rs, _nu_keys(eng, states, tau))


def max_translation_below(w: AffineElt, state_cap: int | None = 5_000_000) -> NewtonPoint:
    """max{gamma_plus : t^gamma <= w}; the dominance top over dominant
    representatives of translations in the interval (unique in the deep
    regimes where it is used)."""
    rs = w.rs
    table = enumerate_group(rs)
    word, tau = reduced_word_and_tau(w)
    eng = engine_for(table, len(word))
    twist = _tau_twist(eng, tau)
    # u = t^mu z * tau is a translation iff its finite part z*g is trivial
    if twist is None:
        z_req = 0
    else:
        z_req = table.inv_idx(table.idx(tau.fin))
    keys = set()
    for s in eng.interval_states(word, state_cap):
        x_idx, mu = eng.unpack(s)
        if x_idx == z_req:
            if twist is not None:
                mu = tuple(a + b for a, b in zip(mu, twist[1][x_idx]))
            dom, _ = _dominantize(rs, mu)
            keys.add((dom, 1))
    return _max_point(rs, keys)


# -- thresholds -----------------------------------------------------------


def s_bound(cartan_type: str, rank: int) -> int:
    """<theta, 2 rho_check>, i.e. twice the coefficient sum of the highest
    root: A_n 2n; B_n/C_n 4n-2; D_n 4n-6; E6 22; E7 34; E8 58; F4 22;
    G2 10.  Checked against the built root system at small rank."""
    ct = cartan_type.upper()
    if ct == "A":
        val = 2 * rank
    elif ct in ("B", "C"):
        val = 4 * rank - 2
    elif ct == "D":
        val = 4 * rank - 6
    else:
        val = {("E", 6): 22, ("E", 7): 34, ("E", 8): 58,
               ("F", 4): 22, ("G", 2): 10}[(ct, rank)]
    if rank <= 8:
        rs = build_root_system(ct, rank)
        assert val == 2 * sum(rs.theta), "table disagrees with the root system"
    return val


def xi_bound(cartan_type: str, rank: int) -> int:
    """Depth threshold for the closed-form maximal Newton point: the weight
    bound plus <theta, 2 rho_check>.  Values: A_n 3n+1; B_n/C_n 6n-2;
    D_n 6n-6; E6 34; E7 50; E8 86; F4 34; G2 14."""
    return m_tilde(cartan_type, rank) + s_bound(cartan_type, rank)


# -- the closed form ------------------------------------------------------


def reduce_to_dominant(u: WeylElt, lam: Coweight, v: WeylElt) -> AffineElt:
    """t^lam (v <| u), which shares its maximal Newton point with
    u t^lam v when lam is dominant regular."""
    if not (lam.is_dominant() and lam.is_regular()):
        raise RefusalError("lambda must be dominant regular to reduce")
    x = demazure_ltri(embed(v), embed(u)).fin
    return AffineElt(lam.rs, tuple(int(p) for p in lam.pairing), x)


@dataclass
class FormulaResult:
    """Closed-form evaluation with its validity status.

    ``status`` is "ok" above the depth threshold and "below-threshold"
    otherwise; in the latter case ``value`` is filled only on request, and
    need not be dominant."""

    status: str
    value: Coweight | None
    depth: Num
    threshold: int

    @property
    def point(self) -> NewtonPoint:
        assert self.value is not None, "no value computed"
        return NewtonPoint(self.value)


def _wt_coweight(rs: RootSystem, x: WeylElt, cap: int) -> Coweight:
    return coweight_from_coroot(rs, build_qbg(rs, cap).wt1(x))


def max_newton_formula(
    w: AffineElt, force: bool = False, cap: int = DEFAULT_QBG_CAP
) -> FormulaResult:
    """Closed form for the maximal Newton point: lam - wt(x) after writing
    w = u t^lam v with lam dominant and folding u into the finite part.

    Guaranteed only when depth(lam) exceeds ``xi_bound``; below that the
    result carries a "below-threshold" status, and a value only when
    ``force`` is set (exploration mode)."""
    rs = w.rs
    lam_plus, g = dominant_rep(coweight(rs, w.lam))
    thr = xi_bound(rs.cartan_type, rs.rank)
    d = depth(lam_plus)
    ok = d > thr
    if not ok and not force:
        return FormulaResult("below-threshold", None, d, thr)
    if g.is_identity():
        x = w.fin
    else:
        if not lam_plus.is_regular():
            raise RefusalError(
                "translation part is singular and not dominant; cannot fold"
            )
        # w = u t^lam v with u = g^{-1}, v = g z.
        x = demazure_ltri(embed(g.mul(w.fin)), embed(g.inv())).fin
    value = lam_plus - _wt_coweight(rs, x, cap)
    return FormulaResult("ok" if ok else "below-threshold", value, d, thr)


# -- verification sweeps --------------------------------------------------


def theorem_grid(rs: RootSystem) -> list[Coweight]:
    """All integral dominant lam with every pairing coordinate in
    {Xi+1, Xi+2}: depths sit in the first two integers above the bound."""
    thr = xi_bound(rs.cartan_type, rs.rank)
    return [
        coweight(rs, p)
        for p in product((thr + 1, thr + 2), repeat=rs.rank)
    ]


def sample_lambdas(
    rs: RootSystem, count: int, lo: int, hi: int, seed: int = 0
) -> list[Coweight]:
    """Seeded sample of dominant regular coweights with coordinates in
    [lo, hi]."""
    rng = Random(seed)
    out = []
    for _ in range(count):
        out.append(
            coweight(rs, tuple(rng.randint(lo, hi) for _ in range(rs.rank)))
        )
    return out


def _chain_cover(table: GroupTable) -> list[tuple[int, ...]]:
    """Reduced words of the longest element whose prefix products p_k,
    left-multiplied by w0, jointly cover the whole group.  Greedy and
    deterministic: the word for an uncovered x runs through w0 x, so the
    chain of tops w0 p_k passes through x."""
    w0 = table.w0_idx
    covered = [False] * len(table)
    chains: list[tuple[int, ...]] = []
    for x in range(len(table)):
        if covered[x]:
            continue
        p = table.prod_idx(w0, x)
        tail = table.prod_idx(table.inv_idx(p), w0)
        word = table.words[p] + table.words[tail]
        assert len(word) == table.lengths[w0], "chain word not reduced"
        pref = 0
        covered[w0] = True
        for j in word:
            pref = table.rmult[j][pref]
            covered[table.prod_idx(w0, pref)] = True
        chains.append(word)
    return chains


def sweep_records(
    rs: RootSystem,
    lambdas,
    state_cap: int | None = 5_000_000,
) -> list[dict]:
    """Compare the closed form against the brute-force maximum for every
    x in W and each given dominant regular lam.

    Walks one interval per (lam, chain): a reduced word of t^lam w0 extended
    letter by letter along a reduced word of w0 stays reduced, so snapshots
    of the subword DP along the way are exactly the intervals below t^lam x
    for x on a chain from w0 down to the identity."""
    table = enumerate_group(rs)
    graph = build_qbg(rs)
    w0_elt = longest_element(rs)
    n_elts = len(table)
    chains = _chain_cover(table)
    records: list[dict] = []
    for lam in lambdas:
        assert lam.is_dominant() and lam.is_regular(), (
            "sweep needs dominant regular lambda"
        )
        lam_int = tuple(int(p) for p in lam.pairing)
        base_word, base_tau = reduced_word_and_tau(
            AffineElt(rs, lam_int, w0_elt)
        )
        # t^lam w0 p = w2 (tau p tau^-1) tau: extending w2 by the
        # conjugated letters keeps the word reduced, and evaluation adds
        # the tau twist per state.
        sigma = tau_letter_map(base_tau)
        eng = engine_for(table, len(base_word) + table.lengths[table.w0_idx])
        base = eng.interval_states(base_word, state_cap)
        done = [False] * n_elts
        results: dict[int, dict] = {}
        for chain in chains:
            states = set(base)
            pref = 0
            for step_no in range(len(chain) + 1):
                top = table.prod_idx(table.w0_idx, pref)
                if not done[top]:
                    done[top] = True
                    nu_b = _max_point(rs, _nu_keys(eng, states, base_tau))
                    wt_cw = coweight_from_coroot(
                        rs, graph.wt1(table.elements[top])
                    )
                    nu_f = lam - wt_cw
                    results[top] = {
                        "type": rs.cartan_type,
                        "rank": rs.rank,
                        "lambda": list(lam_int),
                        "x": word_str(table.words[top]),
                        "nu_formula": [str(c) for c in nu_f.pairing],
                        "nu_brute": [str(c) for c in nu_b.pairing],
                        "match": nu_f.pairing == nu_b.pairing,
                    }
                if step_no < len(chain):
                    j = chain[step_no]
                    states = eng.step(states, sigma[j + 1])
                    pref = table.rmult[j][pref]
        records.extend(results[i] for i in sorted(results))
    return records


def exploration_report(
    rs: RootSystem,
    max_depth: int,
    state_cap: int | None = 5_000_000,
) -> list[dict]:
    """Data, not assertions: for each x, the least depth d (lam = d along
    every coordinate) at which the closed form agrees with brute force, and
    whether agreement holds at every depth from there through max_depth."""
    per_x: dict[str, list[tuple[int, bool]]] = {}
    for d in range(1, max_depth + 1):
        lam = coweight(rs, (d,) * rs.rank)
        for rec in sweep_records(rs, [lam], state_cap):
            per_x.setdefault(rec["x"], []).append((d, rec["match"]))
    report = []
    for x, seq in sorted(per_x.items()):
        first = next((d for d, m in seq if m), None)
        stable = first is not None and all(m for d, m in seq if d >= first)
        report.append(
            {
                "type": rs.cartan_type,
                "rank": rs.rank,
                "x": x,
                "first_agree_depth": first,
                "agrees_onward": stable,
            }
        )
    return report
