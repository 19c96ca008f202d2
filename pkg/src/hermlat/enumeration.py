"""Exact Fincke-Pohst enumeration over a rational positive-definite Gram matrix.

The Gram matrix is decomposed once as U^T diag(D) U in exact rationals.
Each level walks integers outward from the projected centre (Schnorr-Euchner
order), so a side stops at the first candidate whose partial length exceeds
the radius. Every comparison is a Fraction comparison.
"""

from fractions import Fraction
from math import floor

from . import linalg
from .config import settings
from .errors import BudgetExceeded


class Enumerator:
    def __init__(self, gram, budget=None):
        self.gram = [[Fraction(v) for v in row] for row in gram]
        self.n = len(gram)
        self.D, self.U = linalg.ldl(self.gram)
        self.budget = budget if budget is not None else settings().node_budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"enumeration exceeded {self.budget} nodes")

    def _walk(self, target, radius, on_leaf, strict=False):
        """Depth-first search; ``radius()`` is re-read so callers can shrink it."""
        n, D, U = self.n, self.D, self.U
        x = [0] * n
        y = [Fraction(0)] * n  # x - target

        def level(i, partial):
            c = target[i]
            Ui = U[i]
            for j in range(i + 1, n):
                if Ui[j]:
                    c -= Ui[j] * y[j]
            Di = D[i]
            x0 = floor(c + Fraction(1, 2))
            up, dn = x0, x0 - 1
            up_alive = dn_alive = True
            while up_alive or dn_alive:
                if up_alive and (not dn_alive or up - c <= c - dn):
                    cand, is_up = up, True
                    up += 1
                else:
                    cand, is_up = dn, False
                    dn -= 1
                self._tick()
                diff = cand - c
                val = partial + Di * diff * diff
                r = radius()
                if val > r or (strict and val == r):
                    if is_up:
                        up_alive = False
                    else:
                        dn_alive = False
                    continue
                x[i] = cand
                y[i] = cand - target[i]
                if i == 0:
                    on_leaf(tuple(x), val)
                else:
                    level(i - 1, val)

        if n:
            level(n - 1, Fraction(0))

    def babai(self, target):
        """Nearest-plane rounding; returns (coords, squared distance)."""
        n, U = self.n, self.U
        x = [0] * n
        y = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            c = target[i] - sum(U[i][j] * y[j] for j in range(i + 1, n))
            x[i] = floor(c + Fraction(1, 2))
            y[i] = x[i] - target[i]
        return tuple(x), linalg.quad(self.gram, y)

    def closest(self, target):
        """All lattice points at minimal distance from ``target`` (lattice coordinates).

        Returns ``(squared_distance, sorted list of coordinate tuples)``.
        """
        target = [Fraction(v) for v in target]
        _, r0 = self.babai(target)
        state = {"r": r0, "best": []}

        def leaf(x, val):
            if val < state["r"]:
                state["r"] = val
                state["best"] = [x]
            elif val == state["r"]:
                state["best"].append(x)

        self._walk(target, lambda: state["r"], leaf)
        return state["r"], sorted(state["best"])

    def short_vectors(self, bound, include_zero=False, strict=False):
        """Every x with x^T G x <= bound (``< bound`` when strict), as (x, value) pairs."""
        out = []
        bound = Fraction(bound)

        def leaf(x, val):
            if include_zero or any(x):
                out.append((x, val))

        self._walk([Fraction(0)] * self.n, lambda: bound, leaf, strict=strict)
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def shortest(self):
        """Minimum over nonzero vectors and every vector attaining it."""
        start = min(self.gram[i][i] for i in range(self.n))
        state = {"r": start, "best": []}

        def leaf(x, val):
            if not any(x):
                return
            if val < state["r"]:
                state["r"] = val
                state["best"] = [x]
            elif val == state["r"]:
                state["best"].append(x)

        self._walk([Fraction(0)] * self.n, lambda: state["r"], leaf)
        return state["r"], sorted(state["best"])
