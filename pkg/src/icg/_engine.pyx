# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; mirrors icg._engine_py.PyKernel.

Positions are (uncolored mask, protected mask, mover, fresh) packed into
a 64-bit key, which caps graphs at 31 vertices. The transposition table
is an open-addressing array of lower/upper value bounds; slot 0 in key
space is free because a stored position always has uncolored vertices.
"""

import time as _time

from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport calloc, free

from .errors import SearchLimitExceeded

cdef extern from *:
    int __builtin_popcountll(unsigned long long x)
    int __builtin_ctzll(unsigned long long x)

cdef int INF = 1 << 20
cdef uint64_t MIX = <uint64_t>0x9E3779B97F4A7C15


cdef class Kernel:
    backend = "compiled"

    cdef uint64_t adj[32]
    cdef int n, variant
    cdef int64_t nodes, max_states
    cdef double deadline
    cdef uint64_t* keys
    cdef uint8_t* lows
    cdef uint8_t* highs
    cdef size_t cap, filled

    def __cinit__(self, rows, int n, int variant, max_states=None, time_budget=None):
        if n > 31:
            raise ValueError("compiled kernel supports at most 31 vertices")
        self.n = n
        self.variant = variant
        cdef int i
        for i in range(n):
            self.adj[i] = rows[i]
        self.max_states = -1 if max_states is None else <int64_t>max_states
        self.deadline = -1.0 if time_budget is None else _time.monotonic() + time_budget
        self.nodes = 0
        self.cap = 1 << 15
        self.filled = 0
        self._allocate(self.cap)

    cdef void _allocate(self, size_t cap) except *:
        self.keys = <uint64_t*>calloc(cap, sizeof(uint64_t))
        self.lows = <uint8_t*>calloc(cap, 1)
        self.highs = <uint8_t*>calloc(cap, 1)
        if not self.keys or not self.lows or not self.highs:
            raise MemoryError()

    def __dealloc__(self):
        if self.keys:
            free(self.keys)
        if self.lows:
            free(self.lows)
        if self.highs:
            free(self.highs)

    @property
    def nodes_expanded(self):
        return self.nodes

    def value(self, U, P, alice, fresh):
        """Exact number of rounds still to be opened from this position."""
        cdef uint64_t u = U, p = P
        cdef bint al = alice, fr = fresh
        self._normalize(&u, &p, &al, &fr)
        if u == 0:
            return 0
        cdef int lo = self._lower(u, p, fr)
        cdef int hi = self._upper(u)
        cdef int beta, g
        while lo < hi:
            beta = (lo + hi + 1) // 2
            g = self._search(u, p, al, fr, beta - 1, beta)
            if g >= beta:
                lo = g
            else:
                hi = g
        return lo

    cdef void _normalize(self, uint64_t* U, uint64_t* P, bint* alice, bint* fresh):
        if not fresh[0] and U[0] != 0 and (U[0] & ~P[0]) == 0:
            P[0] = 0
            fresh[0] = True
            if self.variant == 0:
                alice[0] = True
            elif self.variant == 1:
                alice[0] = False

    cdef int _lower(self, uint64_t U, uint64_t P, bint fresh):
        cdef bint edge_in_u = False
        cdef uint64_t m = U
        cdef int v
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            if self.adj[v] & U:
                edge_in_u = True
                break
        if fresh:
            return 2 if edge_in_u else 1
        m = P
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            if self.adj[v] & P:
                return 2
        if P or edge_in_u:
            return 1
        return 0

    cdef int _upper(self, uint64_t U):
        cdef int best = 0, d, v
        cdef uint64_t m = U
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            d = __builtin_popcountll(self.adj[v] & U)
            if d > best:
                best = d
        d = __builtin_popcountll(U)
        return d if d < best + 1 else best + 1

    cdef size_t _slot(self, uint64_t key):
        cdef size_t mask = self.cap - 1
        cdef size_t h = <size_t>((key * MIX) >> 32) & mask
        while self.keys[h] != 0 and self.keys[h] != key:
            h = (h + 1) & mask
        return h

    cdef void _grow(self) except *:
        cdef uint64_t* old_keys = self.keys
        cdef uint8_t* old_lows = self.lows
        cdef uint8_t* old_highs = self.highs
        cdef size_t old_cap = self.cap
        self.cap <<= 1
        self._allocate(self.cap)
        cdef size_t i, s
        for i in range(old_cap):
            if old_keys[i]:
                s = self._slot(old_keys[i])
                self.keys[s] = old_keys[i]
                self.lows[s] = old_lows[i]
                self.highs[s] = old_highs[i]
        free(old_keys)
        free(old_lows)
        free(old_highs)

    cdef int _search(self, uint64_t U, uint64_t P, bint alice, bint fresh,
                     int alpha, int beta) except -1:
        self._normalize(&U, &P, &alice, &fresh)
        if U == 0:
            return 0
        self.nodes += 1
        if self.max_states >= 0 and self.nodes > self.max_states:
            raise SearchLimitExceeded("states", f"more than {self.max_states} positions")
        if self.deadline >= 0.0 and (self.nodes & 1023) == 0:
            if _time.monotonic() > self.deadline:
                raise SearchLimitExceeded("time", "search deadline passed")

        cdef int lo = self._lower(U, P, fresh)
        cdef int hi = self._upper(U)
        cdef int shift = 2 * self.n
        cdef uint64_t key = (U | (P << self.n)
                             | (<uint64_t>(1 if alice else 0) << shift)
                             | (<uint64_t>(1 if fresh else 0) << (shift + 1)))
        cdef size_t slot = self._slot(key)
        if self.keys[slot] == key:
            if self.lows[slot] > lo:
                lo = self.lows[slot]
            if self.highs[slot] < hi:
                hi = self.highs[slot]
        if lo == hi:
            return lo
        if lo >= beta:
            return lo
        if hi <= alpha:
            return hi
        cdef int a = alpha if alpha > lo else lo
        cdef int b = beta if beta < hi else hi

        cdef uint64_t legal = U & ~P
        cdef int bonus = 1 if fresh else 0
        cdef int count = 0
        cdef int degs[32]
        cdef int vs[32]
        cdef uint64_t m = legal
        cdef int v, d, i, j
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            d = __builtin_popcountll(self.adj[v] & U)
            vs[count] = v
            degs[count] = d
            count += 1
        # Insertion sort; Alice wants high residual degree first, Bob low.
        cdef int kd, kv
        for i in range(1, count):
            kd = degs[i]
            kv = vs[i]
            j = i - 1
            if alice:
                while j >= 0 and (degs[j] < kd or (degs[j] == kd and vs[j] > kv)):
                    degs[j + 1] = degs[j]
                    vs[j + 1] = vs[j]
                    j -= 1
            else:
                while j >= 0 and (degs[j] > kd or (degs[j] == kd and vs[j] > kv)):
                    degs[j + 1] = degs[j]
                    vs[j + 1] = vs[j]
                    j -= 1
            degs[j + 1] = kd
            vs[j + 1] = kv

        cdef int best, cut, val
        cdef uint64_t U2, P2
        cdef bint cutoff = False
        if alice:
            best = INF
            cut = b
            for i in range(count):
                v = vs[i]
                U2 = U & ~(<uint64_t>1 << v)
                P2 = (P | self.adj[v]) & U2
                val = bonus + self._search(U2, P2, False, False,
                                           a - bonus, cut - bonus)
                if val < best:
                    best = val
                    if best < cut:
                        cut = best
                        if cut <= a:
                            cutoff = True
                            break
            if self.variant == 4 and not cutoff:
                val = self._search(U, P, False, fresh, a, cut)
                if val < best:
                    best = val
        else:
            best = -INF
            cut = a
            for i in range(count):
                v = vs[i]
                U2 = U & ~(<uint64_t>1 << v)
                P2 = (P | self.adj[v]) & U2
                val = bonus + self._search(U2, P2, True, False,
                                           cut - bonus, b - bonus)
                if val > best:
                    best = val
                    if best > cut:
                        cut = best
                        if cut >= b:
                            break

        cdef int new_lo = lo, new_hi = hi
        if best <= a:
            if best < new_hi:
                new_hi = best
        elif best >= b:
            if best > new_lo:
                new_lo = best
        else:
            new_lo = best
            new_hi = best
        slot = self._slot(key)
        if self.keys[slot] == 0:
            self.filled += 1
            self.keys[slot] = key
            if self.filled * 10 > self.cap * 7:
                self._grow()
                slot = self._slot(key)
                self.keys[slot] = key
        self.lows[slot] = <uint8_t>new_lo
        self.highs[slot] = <uint8_t>new_hi
        return best
