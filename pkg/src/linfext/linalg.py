"""Sparse exact Gaussian elimination over Q or Q(c).

Vectors are dicts from sortable positions to nonzero scalars.  The pivot of
a vector is its smallest position, so an echelon basis built here is
"triangular" with respect to the position order; for weight-filtered
problems (position = (weight, ...)) the pivots are the leading terms.
"""
from __future__ import annotations

import heapq


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    """Incrementally built echelon basis with optional source tracking.

    Each stored row has its pivot coefficient normalized to 1.  With
    ``track=True`` every row remembers the combination of added source
    labels it came from, so reductions can report preimages and dependent
    additions yield kernel vectors.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict = {}  # pivot -> (vector, combination)
        self.kernel: list[dict] = []

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec: dict, full: bool = True, limit=None):
        """Reduce ``vec`` by the stored rows.

        Returns (remainder, combination) with vec = remainder + sum(combo*rows).
        With ``full=False`` the reduction stops at the first non-pivot position
        (the remainder's lead is then final).  Positions beyond ``limit`` are
        left untouched.
        """
        v = dict(vec)
        combo: dict = {}
        heap = list(v)
        heapq.heapify(heap)
        done = set()
        while heap:
            p = heapq.heappop(heap)
            if p in done or p not in v:
                continue
            if limit is not None and p > limit:
                break
            done.add(p)
            row = self.rows.get(p)
            if row is None:
                if not full:
                    break
                continue
            a = v[p]
            rv, rc = row
            for k, x in rv.items():
                s = v.get(k, 0) - a * x
                if s:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = s
                else:
                    v.pop(k, None)
            if self.track:
                axpy(combo, a, rc)
        return v, combo

    def add(self, vec: dict, label=None):
        """Insert a vector; returns its new pivot or None when dependent."""
        v, combo = self.reduce(vec, full=False)
        if self.track:
            # vec = v + sum(combo*rows) so v corresponds to label - combo
            combo = {k: -x for k, x in combo.items()}
            combo[label] = combo.get(label, 0) + 1
        if not v:
            if self.track:
                self.kernel.append({k: x for k, x in combo.items() if x})
            return None
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        if self.track:
            combo = {k: x * inv for k, x in combo.items() if x}
        self.rows[p] = (v, combo if self.track else None)
        return p

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)
