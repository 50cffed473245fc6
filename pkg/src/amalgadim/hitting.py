"""Exact minimum hitting set by branch and bound over bit masks.

Every minimum-set question in the package (local metric bases, traversals,
out-solving sets, co-traversals, covers) is an instance of: given a list of
constraint masks, find the smallest set of admissible elements meeting each
of them. Element ``i`` is bit ``i``; lower bits come first in the canonical
order, so the lexicographically smallest set is the one whose sorted bit
positions compare smallest.

Search: branch on the live constraint with fewest admissible elements (the
k-th branch takes its k-th element and forbids the earlier ones), prune with
a greedy packing of pairwise disjoint constraints, seed the incumbent with
greedy set cover. Duplicate and superset constraints are dropped and
singleton constraints committed at every node.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, Infeasible

DEFAULT_NODES = 10**8
DEFAULT_TIMEOUT = 300.0


@dataclass(frozen=True)
class Budget:
    nodes: int = DEFAULT_NODES
    timeout: float = DEFAULT_TIMEOUT
    workers: int = 1

    def __post_init__(self):
        if self.nodes < 1 or self.timeout <= 0 or self.workers < 1:
            raise ValueError("budgets must be positive and workers >= 1")


@dataclass(frozen=True)
class HittingResult:
    size: int
    mask: int
    nodes: int
    lower_bound: int
    upper_seed: int


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reduce_constraints(cons: Iterable[int]) -> list[int]:
    """Drop duplicates and supersets; result sorted by (size, value)."""
    kept: list[int] = []
    for c in sorted(set(cons), key=lambda c: (c.bit_count(), c)):
        for k in kept:
            if k & c == k:
                break
        else:
            kept.append(c)
    return kept


def packing_bound(sorted_cons: Sequence[int]) -> int:
    used = 0
    count = 0
    for c in sorted_cons:
        if not c & used:
            used |= c
            count += 1
    return count


def greedy_cover(cons: Sequence[int], allowed: int) -> int:
    live = [c & allowed for c in cons]
    chosen = 0
    while live:
        counts: dict[int, int] = {}
        for c in live:
            for e in bits(c):
                counts[e] = counts.get(e, 0) + 1
        e = min(counts, key=lambda x: (-counts[x], x))
        chosen |= 1 << e
        live = [c for c in live if not c >> e & 1]
    return chosen


class Search:
    """One search context: node counter and deadline shared by all calls."""

    def __init__(self, budget: Budget = Budget()):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.timeout
        self.root_bound = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.nodes:
            raise BudgetExceeded(f"node cap {self.budget.nodes} exceeded", self.nodes, self.root_bound)
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"timeout of {self.budget.timeout}s exceeded", self.nodes, self.root_bound)

    def solve(self, cons: Sequence[int], allowed: int, limit: int, first: bool = False) -> int | None:
        """Smallest hitting set of size <= ``limit`` inside ``allowed``.

        Returns its mask or ``None``. With ``first`` any feasible set is
        returned as soon as one is found.
        """
        self._tick()
        live = []
        for c in cons:
            c &= allowed
            if not c:
                return None
            live.append(c)
        if not live:
            return 0
        if limit <= 0:
            return None
        live = reduce_constraints(live)
        if live[0].bit_count() == 1:
            forced = 0
            for c in live:
                if c.bit_count() > 1:
                    break
                forced |= c
            k = forced.bit_count()
            if k > limit:
                return None
            sub = self.solve([c for c in live if not c & forced], allowed & ~forced, limit - k, first)
            return None if sub is None else sub | forced
        lb = packing_bound(live)
        if lb > limit:
            return None
        best = None
        pivot = live[0]
        banned = 0
        for e in bits(pivot):
            bit = 1 << e
            rest = [c for c in live if not c & bit]
            sub = self.solve(rest, allowed & ~banned & ~bit, limit - 1, first)
            if sub is not None:
                best = sub | bit
                if first:
                    return best
                limit = best.bit_count() - 1
                if limit < lb:
                    break
            banned |= bit
        return best

    def feasible(self, cons: Sequence[int], allowed: int, limit: int) -> bool:
        return self.solve(cons, allowed, limit, first=True) is not None

    # -- top-level questions --------------------------------------------

    def minimum(self, cons: Sequence[int], universe: int) -> HittingResult:
        check_feasible(cons, universe)
        seed = greedy_cover(cons, universe)
        root = reduce_constraints([c & universe for c in cons])
        self.root_bound = packing_bound(root)
        ub = seed.bit_count()
        if self.budget.workers > 1 and ub > self.root_bound:
            best = self._parallel_minimum(root, universe, ub)
        else:
            best = self.solve(root, universe, ub - 1) if ub > self.root_bound else None
        if best is None:
            best = seed
        return HittingResult(best.bit_count(), best, self.nodes, self.root_bound, ub)

    def _parallel_minimum(self, root: list[int], universe: int, ub: int) -> int | None:
        # only the optimum size is taken from here, so the split cannot
        # influence which witness is finally reported
        forced = 0
        for c in root:
            if c.bit_count() == 1:
                forced |= c
        rest = [c for c in root if not c & forced]
        base = ub - 1 - forced.bit_count()
        if not rest or base < 0:
            return self.solve(root, universe, ub - 1)
        pivot = rest[0]
        tasks = []
        banned = 0
        for e in bits(pivot):
            bit = 1 << e
            tasks.append(([c for c in rest if not c & bit], universe & ~forced & ~banned & ~bit, base - 1))
            banned |= bit
        remaining = max(1.0, self.deadline - time.monotonic())
        sub_budget = Budget(max(1, self.budget.nodes - self.nodes), remaining, 1)
        with ProcessPoolExecutor(max_workers=self.budget.workers) as pool:
            results = list(pool.map(_run_task, [(t, sub_budget) for t in tasks]))
        best = None
        for e, (mask, nodes) in zip(bits(pivot), results):
            self.nodes += nodes
            if mask is not None:
                cand = mask | (1 << e) | forced
                if best is None or cand.bit_count() < best.bit_count():
                    best = cand
        if self.nodes > self.budget.nodes:
            raise BudgetExceeded(f"node cap {self.budget.nodes} exceeded", self.nodes, self.root_bound)
        return best

    def lex_min(self, cons: Sequence[int], universe: int, k: int) -> int:
        """Lexicographically smallest hitting set of ``k`` elements.

        ``k`` is expected to be the optimum; the set is grown one element at
        a time, each time taking the smallest element that still admits a
        completion using only larger elements.
        """
        if not self.feasible(cons, universe, k):
            raise Infeasible(f"no hitting set of size {k}")
        chosen = 0
        last = -1
        remaining = [c & universe for c in cons]
        while remaining:
            need = k - chosen.bit_count()
            for e in bits(universe & ~((1 << (last + 1)) - 1)):
                bit = 1 << e
                rest = [c for c in remaining if not c & bit]
                if self.feasible(rest, universe & ~((1 << (e + 1)) - 1), need - 1):
                    chosen |= bit
                    last = e
                    remaining = rest
                    break
            else:
                raise Infeasible(f"no hitting set of size {k}")
        return chosen

    def enumerate(self, cons: Sequence[int], universe: int, k: int, cap: int) -> tuple[list[int], bool]:
        """All hitting sets of exactly ``k`` elements, in lexicographic order.

        Only meaningful when ``k`` is the optimum. Stops after ``cap`` sets and
        reports truncation.
        """
        out: list[int] = []
        truncated = False

        def rec(chosen: int, last: int, remaining: list[int]) -> bool:
            nonlocal truncated
            need = k - chosen.bit_count()
            if need == 0:
                if remaining:
                    return True
                if len(out) >= cap:
                    truncated = True
                    return False
                out.append(chosen)
                return True
            for e in bits(universe & ~((1 << (last + 1)) - 1)):
                bit = 1 << e
                rest = [c for c in remaining if not c & bit]
                above = universe & ~((1 << (e + 1)) - 1)
                if self.feasible(rest, above, need - 1):
                    if not rec(chosen | bit, e, rest):
                        return False
            return True

        rec(0, -1, [c & universe for c in cons])
        return out, truncated


def _run_task(args) -> tuple[int | None, int]:
    (cons, allowed, limit), budget = args
    s = Search(budget)
    mask = s.solve(cons, allowed, limit) if limit >= 0 else None
    return mask, s.nodes


def check_feasible(cons: Sequence[int], universe: int) -> None:
    for c in cons:
        if not c & universe:
            raise Infeasible("a constraint has no admissible element")

