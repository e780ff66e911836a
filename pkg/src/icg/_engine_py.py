"""Pure-Python search kernel.

Mirrors the compiled kernel in icg._engine; icg.engine picks whichever is
available. The kernel works on raw adjacency bitmasks and computes, for a
game position, the number of rounds that will still be opened under
optimal play (a move made at a fresh position opens a round and counts 1,
every other action counts 0). Memoization stores lower/upper bounds per
position; the public entry point closes the gap by null-window bisection.

Variant codes: 0=A, 1=B, 2=AB, 3=BA, 4=AliceSkip.
"""

from __future__ import annotations

import time

from .errors import SearchLimitExceeded

INF = 1 << 20


class PyKernel:
    backend = "pure"

    def __init__(
        self,
        rows: tuple[int, ...],
        n: int,
        variant: int,
        max_states: int | None = None,
        time_budget: float | None = None,
    ) -> None:
        if n > 64:
            raise ValueError("pure kernel supports at most 64 vertices")
        self.rows = tuple(rows)
        self.n = n
        self.variant = variant
        self.max_states = max_states
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.nodes_expanded = 0
        self._tt: dict[int, tuple[int, int]] = {}

    # -- public ------------------------------------------------------------

    def value(self, U: int, P: int, alice: bool, fresh: bool) -> int:
        """Exact number of rounds still to be opened from this position."""
        U, P, alice, fresh = self._normalize(U, P, alice, fresh)
        if not U:
            return 0
        lo = self._lower(U, P, fresh)
        hi = self._upper(U)
        while lo < hi:
            beta = (lo + hi + 1) // 2
            g = self._search(U, P, alice, fresh, beta - 1, beta)
            if g >= beta:
                lo = g
            else:
                hi = g
        return lo

    # -- internals ----------------------------------------------------------

    def _normalize(self, U, P, alice, fresh):
        if not fresh and U and U & ~P == 0:
            P = 0
            fresh = True
            if self.variant == 0:
                alice = True
            elif self.variant == 1:
                alice = False
        return U, P, alice, fresh

    def _lower(self, U, P, fresh):
        rows = self.rows
        edge_in_u = False
        m = U
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if rows[v] & U:
                edge_in_u = True
                break
        if fresh:
            return 2 if edge_in_u else 1
        m = P
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if rows[v] & P:
                return 2
        return 1 if P or edge_in_u else 0

    def _upper(self, U):
        rows = self.rows
        best = 0
        m = U
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (rows[v] & U).bit_count()
            if d > best:
                best = d
        return min(best + 1, U.bit_count())

    def _search(self, U, P, alice, fresh, alpha, beta):
        U, P, alice, fresh = self._normalize(U, P, alice, fresh)
        if not U:
            return 0
        self.nodes_expanded += 1
        if self.max_states is not None and self.nodes_expanded > self.max_states:
            raise SearchLimitExceeded("states", f"more than {self.max_states} positions")
        if self.deadline is not None and self.nodes_expanded % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise SearchLimitExceeded("time", "search deadline passed")
        lo = self._lower(U, P, fresh)
        hi = self._upper(U)
        n = self.n
        key = U | P << n | alice << (2 * n) | fresh << (2 * n + 1)
        entry = self._tt.get(key)
        if entry is not None:
            if entry[0] > lo:
                lo = entry[0]
            if entry[1] < hi:
                hi = entry[1]
        if lo == hi:
            return lo
        if lo >= beta:
            return lo
        if hi <= alpha:
            return hi
        a = alpha if alpha > lo else lo
        b = beta if beta < hi else hi

        rows = self.rows
        legal = U & ~P
        bonus = 1 if fresh else 0
        moves = []
        m = legal
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            moves.append(((rows[v] & U).bit_count(), v))
        # The minimizer protects aggressively (high residual degree first),
        # the maximizer the other way around.
        moves.sort(key=(lambda t: (-t[0], t[1])) if alice else None)

        search = self._search
        if alice:
            best = INF
            cut = b
            for _, v in moves:
                U2 = U & ~(1 << v)
                val = bonus + search(U2, (P | rows[v]) & U2, False, False,
                                     a - bonus, cut - bonus)
                if val < best:
                    best = val
                    if best < cut:
                        cut = best
                        if cut <= a:
                            break
            else:
                if self.variant == 4:
                    val = search(U, P, False, fresh, a, cut)
                    if val < best:
                        best = val
        else:
            best = -INF
            cut = a
            for _, v in moves:
                U2 = U & ~(1 << v)
                val = bonus + search(U2, (P | rows[v]) & U2, True, False,
                                     cut - bonus, b - bonus)
                if val > best:
                    best = val
                    if best > cut:
                        cut = best
                        if cut >= b:
                            break

        if best <= a:
            store = (lo, best if best < hi else hi)
        elif best >= b:
            store = (best if best > lo else lo, hi)
        else:
            store = (best, best)
        self._tt[key] = store
        return best
