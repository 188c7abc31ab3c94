"""Balanced separators with small stability number.

The dominated separator (a set Y of at most d vertices whose closed
neighbourhood balances the weight) is found by bounded search, since no
constructive bound for d is available.  Everything downstream follows the
iterative construction exactly, checking its seven invariants at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InputError, InvariantViolation, ResourceError
from .graph import (
    Graph,
    component_masks,
    components,
    iter_bits,
    neighborhood,
    stability_number,
    total_weight,
)
from .separate import SeparatorResult, separate_cooperative_pair

HALF = Fraction(1, 2)
DEFAULT_D = 8
EXHAUSTIVE_CAP = 4
EXHAUSTIVE_BUDGET = 50_000

PairSeparator = Callable[[Graph, frozenset, frozenset], SeparatorResult]


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def ceil_log_multiple(n: int, k: int) -> int:
    """Exact ceil(k * log2 n) for n >= 1."""
    return (n ** k - 1).bit_length() if n > 1 else 0


@dataclass(frozen=True)
class BreakabilityConfig:
    L: int
    d: int
    r: int
    # alpha(Bad) threshold above which the stable filter replaces Bad;
    # None means the value 96 d^2 used in the construction
    bad_cap: Optional[int] = None
    exhaustive_cap: int = EXHAUSTIVE_CAP
    exhaustive_budget: int = EXHAUSTIVE_BUDGET

    def __post_init__(self) -> None:
        if min(self.L, self.d, self.r) < 1:
            raise InputError("L, d and r must all be at least 1")
        if self.bad_cap is not None and self.bad_cap < 0:
            raise InputError("bad_cap must be nonnegative")

    @classmethod
    def for_graph(cls, n: int, d: int = DEFAULT_D, **kw) -> "BreakabilityConfig":
        """r = ceil(d (2 + log n)) and L = ceil(32 log n), both at least 1."""
        r = 2 * d + ceil_log_multiple(n, d)
        L = max(1, ceil_log_multiple(n, 32))
        return cls(L=L, d=d, r=max(1, r), **kw)

    @property
    def cap(self) -> int:
        return 96 * self.d * self.d if self.bad_cap is None else self.bad_cap

    @property
    def C(self) -> int:
        return 100 * self.d * self.d


@dataclass(frozen=True)
class IterationState:
    step: int
    Z: frozenset
    L: frozenset
    K_list: Tuple[frozenset, ...]
    Bad: frozenset
    z_mode: str = ""
    heavy: Optional[frozenset] = None

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "Z": sorted(self.Z),
            "L": sorted(self.L),
            "K": [sorted(k) for k in self.K_list],
            "Bad": sorted(self.Bad),
            "z_mode": self.z_mode,
        }


@dataclass
class BalancedSeparatorResult:
    cut: frozenset
    alpha: int
    balance_c: Fraction = HALF
    trace: List[IterationState] = field(default_factory=list)
    steps: int = 0
    bound: Optional[float] = None
    pair_alphas: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "cut": sorted(self.cut),
            "alpha": self.alpha,
            "balance_c": str(self.balance_c),
            "steps": self.steps,
            "bound": self.bound,
            "trace": [s.to_dict() for s in self.trace],
        }


# ----------------------------------------------------------------------
# exact weight bookkeeping on bitmasks
# ----------------------------------------------------------------------

class _Scaled:
    """Weights on ``g`` rescaled to integers over a common denominator."""

    def __init__(self, g: Graph, w: Mapping[int, Fraction]) -> None:
        fr = [Fraction(w.get(v, 0)) for v in g.vertices]
        den = 1
        for q in fr:
            den = den * q.denominator // math.gcd(den, q.denominator)
        self.ints = [int(q * den) for q in fr]
        self.total = sum(self.ints)
        self.g = g
        self.adj = g.adj_masks

    def of(self, mask: int) -> int:
        ints = self.ints
        return sum(ints[i] for i in iter_bits(mask))

    def heaviest(self, removed: int) -> Tuple[int, int]:
        """(weight, mask) of the heaviest component of g minus ``removed``."""
        best = (-1, 0)
        for comp in component_masks(self.g, self.g.full_mask & ~removed):
            wt = self.of(comp)
            if wt > best[0]:
                best = (wt, comp)
        return best

    def balanced(self, removed: int, c: Fraction = HALF) -> bool:
        wt, _ = self.heaviest(removed)
        return wt * c.denominator <= c.numerator * self.total


def _check_normal(g: Graph, w: Mapping[int, Fraction]) -> None:
    if total_weight(w, g.vertices) != 1:
        raise InputError("weight function is not normal on this graph")


def is_balanced_separator(g: Graph, w: Mapping[int, Fraction], cut: Iterable[int], c=HALF) -> bool:
    c = Fraction(c)
    if not 0 <= c < 1:
        raise InputError("balance parameter must lie in [0, 1)")
    _check_normal(g, w)
    cut = g.check(cut)
    return all(total_weight(w, comp) <= c for comp in components(g, cut))


def heavy_component(g: Graph, w: Mapping[int, Fraction], cut: Iterable[int], c=HALF) -> Optional[frozenset]:
    """The unique component of g - cut with weight above c (c >= 1/2), if any."""
    heavy = [comp for comp in components(g, cut) if total_weight(w, comp) > c]
    if len(heavy) > 1:
        raise InvariantViolation("two components each carry more than half of the weight")
    return heavy[0] if heavy else None


# ----------------------------------------------------------------------
# dominated separator search
# ----------------------------------------------------------------------

def dominated_balanced_separator(g: Graph, w: Mapping[int, Fraction], d_max: int,
                                 exhaustive_cap: int = EXHAUSTIVE_CAP,
                                 budget: int = EXHAUSTIVE_BUDGET) -> Optional[frozenset]:
    """A set Y, |Y| <= d_max, with N[Y] a (w, 1/2)-balanced separator; None if not found.

    Greedy first: add the vertex leaving the lightest heaviest component
    (ties to the smaller id).  Then every subset of size at most
    min(d_max, exhaustive_cap) in lexicographic order, within ``budget``
    evaluations.
    """
    _check_normal(g, w)
    sc = _Scaled(g, w)
    adj = sc.adj
    closed = [adj[i] | (1 << i) for i in range(g.n)]
    if sc.balanced(0):
        return frozenset()

    chosen: List[int] = []
    removed = 0
    while len(chosen) < d_max:
        wt, comp = sc.heaviest(removed)
        if 2 * wt <= sc.total:
            return frozenset(g.vertices[i] for i in chosen)
        cand_mask = comp
        for i in iter_bits(comp):
            cand_mask |= adj[i]
        best = None
        for i in iter_bits(cand_mask):
            score = sc.heaviest(removed | closed[i])[0]
            if best is None or score < best[0]:
                best = (score, i)
        chosen.append(best[1])
        removed |= closed[best[1]]
    if sc.balanced(removed):
        return frozenset(g.vertices[i] for i in chosen)

    spent = 0
    for size in range(1, min(d_max, exhaustive_cap) + 1):
        for combo in combinations(range(g.n), size):
            spent += 1
            if spent > budget:
                return None
            rm = 0
            for i in combo:
                rm |= closed[i]
            if sc.balanced(rm):
                return frozenset(g.vertices[i] for i in combo)
    return None


def _pair_cut(pair_sep: PairSeparator, g: Graph, a: frozenset, b: frozenset, L: int, what: str) -> SeparatorResult:
    res = pair_sep(g, a, b)
    if res.alpha > L:
        raise ResourceError(f"{what}: pair separator has alpha {res.alpha} > L = {L}")
    return res


def clique_dominated_separator(g: Graph, w: Mapping[int, Fraction], cfg: BreakabilityConfig,
                               pair_sep: PairSeparator = separate_cooperative_pair,
                               pair_alphas: Optional[List[int]] = None) -> Tuple[frozenset, frozenset]:
    """(K, Y(K)): K a clique with |K| <= d, alpha(Y(K)) <= d^2 L, N[K] | Y(K) balanced.

    Y(K) excludes K itself; N[K] contains K, so the separator is unchanged.
    """
    _check_normal(g, w)
    x = dominated_balanced_separator(g, w, cfg.d, cfg.exhaustive_cap, cfg.exhaustive_budget)
    if x is None:
        raise ResourceError(f"no dominated balanced separator with at most {cfg.d} vertices")
    y = set(x)
    for a, b in combinations(sorted(x), 2):
        if not g.adjacent(a, b):
            res = _pair_cut(pair_sep, g, frozenset((a,)), frozenset((b,)), cfg.L, f"pair {a},{b}")
            if pair_alphas is not None:
                pair_alphas.append(res.alpha)
            y |= res.cut
    y = frozenset(y)
    heavy = heavy_component(g, w, y)
    if heavy is None:
        k = frozenset()
    else:
        k = frozenset(v for v in x if g.neighbors(v) & heavy)
        if not g.is_clique(k):
            raise InvariantViolation(f"attachments {sorted(k)} of the heavy component are not a clique")
    y_k = y - k
    if len(k) > cfg.d:
        raise InvariantViolation(f"|K| = {len(k)} exceeds d = {cfg.d}")
    if len(y_k) > cfg.d * cfg.d * cfg.L and stability_number(g, y_k) > cfg.d * cfg.d * cfg.L:
        raise InvariantViolation("alpha(Y(K)) exceeds d^2 L")
    if not is_balanced_separator(g, w, neighborhood(g, k, closed=True) | y_k):
        raise InvariantViolation("N[K] | Y(K) is not balanced")
    return k, y_k


# ----------------------------------------------------------------------
# the stable filter
# ----------------------------------------------------------------------

def high_degree_stable_filter(g: Graph, y: Iterable[int], c: int) -> frozenset:
    """All z with alpha(N(z) & Y) >= alpha(Y) / c."""
    if c < 2:
        raise InputError("c must be at least 2")
    y = g.check(y)
    a = stability_number(g, y)
    out = []
    for z in g.vertices:
        ny = g.neighbors(z) & y
        # |N(z) & Y| bounds the stability number from above
        if c * len(ny) < a:
            continue
        if c * stability_number(g, ny) >= a:
            out.append(z)
    return frozenset(out)


def clique_partition(members: Iterable[int], r: int, g: Optional[Graph] = None) -> List[frozenset]:
    """Split a clique into ceil(|members| / r) chunks of size at most r, ids ascending."""
    if r < 1:
        raise InputError("r must be at least 1")
    ms = sorted(set(members))
    if g is not None and not g.is_clique(ms):
        raise InputError("members do not form a clique")
    return [frozenset(ms[i:i + r]) for i in range(0, len(ms), r)]


# ----------------------------------------------------------------------
# from domination to stability
# ----------------------------------------------------------------------

def stability_bound(n: int, cfg: BreakabilityConfig) -> float:
    """C(d) * ceil(d (2 + log n) / r) * (2 + log n) * L."""
    lg = 2 + (math.log2(n) if n > 0 else 0)
    ratio = math.ceil(cfg.d * lg / cfg.r - 1e-12)
    return cfg.C * max(ratio, 1) * lg * cfg.L


def _at_most(g: Graph, xs: frozenset, bound) -> bool:
    """alpha(G[xs]) <= bound, skipping the exact search when |xs| already fits."""
    return len(xs) <= bound or stability_number(g, xs) <= bound


def _check_invariants(g: Graph, w, cfg: BreakabilityConfig, n: int, i: int, state: IterationState,
                      prev: IterationState, history: List[IterationState]) -> None:
    def fail(msg: str):
        raise InvariantViolation(f"({msg}) fails at step {i}", step=i, trace=history + [state])

    z, k_i = state.Z, state.K_list[-1]
    if k_i & prev.Z:
        fail("I")
    junk = Fraction(cfg.C * cfg.L * -(-cfg.d * i // cfg.r) * i, 2)
    if not _at_most(g, z, junk):
        fail("II")
    g_i = frozenset(g.vertices) - z
    for v in g_i:
        if all(g.neighbors(v) & k for k in state.K_list) and v not in state.Bad:
            fail("IV")
    if not (state.Bad <= g_i):
        fail("III")
    if not _at_most(g, state.Bad, Fraction(n, 2 ** i)):
        fail("V")
    if not g.is_clique(state.L) or len(state.L) > cfg.d * i:
        fail("VI")
    for k in state.K_list:
        if not is_balanced_separator(g, w, z | neighborhood(g, k & state.L)):
            fail("VII")


def domination_to_stability(g: Graph, w: Mapping[int, Fraction], cfg: BreakabilityConfig,
                            pair_sep: PairSeparator = separate_cooperative_pair,
                            check: bool = True) -> BalancedSeparatorResult:
    """Balanced separator of small stability number built from dominated ones."""
    _check_normal(g, w)
    n = g.n
    limit = 2 + ceil_log2(n)
    empty = frozenset()
    state = IterationState(0, empty, empty, (), frozenset(g.vertices))
    history = [state]
    pair_alphas: List[int] = []
    i = 0
    while True:
        i += 1
        if is_balanced_separator(g, w, state.Z):
            break
        if i > limit:
            raise InvariantViolation(f"no balanced separator after {limit} steps", step=i, trace=history)
        bad = state.Bad
        a_bad = stability_number(g, bad) if len(bad) > cfg.cap else None
        if a_bad is not None and a_bad > cfg.cap:
            z = high_degree_stable_filter(g, bad, 2 * cfg.d)
            mode = "filter"
        else:
            z = bad
            mode = "bad"
        g_prime = g.remove(state.Z | z)
        mass = total_weight(w, g_prime.vertices)
        if mass == 0:
            k_i, y_k = empty, empty
        else:
            w_prime = {v: w.get(v, 0) / mass for v in g_prime.vertices}
            k_i, y_k = clique_dominated_separator(g_prime, w_prime, cfg, pair_sep, pair_alphas)
        z_prime = set()
        for v in sorted(k_i):
            rest = state.L - g.neighbors(v)
            for chunk in clique_partition(rest, cfg.r, g):
                res = _pair_cut(pair_sep, g, frozenset((v,)), chunk, cfg.L, f"vertex {v} vs clique chunk")
                pair_alphas.append(res.alpha)
                z_prime |= res.cut
        z_i = state.Z | frozenset(z_prime) | z | k_i | y_k
        g_i = frozenset(g.vertices) - z_i
        bad_i = bad & neighborhood(g_prime, k_i) & g_i
        heavy = heavy_component(g, w, z_i)
        if heavy is None:
            l_i = state.L
        else:
            attach = neighborhood(g, heavy)
            l_i = (attach & state.L) | (attach & k_i)
        new = IterationState(i, z_i, l_i, state.K_list + (k_i,), bad_i, mode, heavy)
        if check:
            _check_invariants(g, w, cfg, n, i, new, state, history)
        history.append(new)
        state = new
    cut = state.Z
    alpha = stability_number(g, cut)
    bound = stability_bound(n, cfg)
    if check and alpha > bound:
        raise InvariantViolation(f"alpha {alpha} exceeds bound {bound:.1f}", step=i, trace=history)
    return BalancedSeparatorResult(cut, alpha, HALF, history, i, bound, pair_alphas)


def search_d(g: Graph, w: Mapping[int, Fraction], n: Optional[int] = None, d_values: Sequence[int] = range(1, DEFAULT_D + 1),
             **kw) -> Tuple[int, BalancedSeparatorResult]:
    """Run the construction with the smallest d in ``d_values`` for which the
    dominated separator search succeeds throughout."""
    n = g.n if n is None else n
    last = None
    for d in d_values:
        cfg = BreakabilityConfig.for_graph(n, d, **kw)
        try:
            return d, domination_to_stability(g, w, cfg)
        except ResourceError as exc:
            last = exc
    raise ResourceError(f"d-search failed for d in {list(d_values)}: {last}")
