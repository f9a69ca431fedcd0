"""Sparse exact linear algebra over any exact field.

Vectors are dicts {row: value} with integer rows.  Echelon keeps pivot
columns normalised so that the pivot row is the smallest row of the vector
and carries the value 1; reducing a new vector therefore only ever creates
entries in rows above the pivot it was reduced against, and a heap over the
candidate rows finishes in one sweep.
"""

import heapq


class LinAlgError(ValueError):
    pass


class NotInvertible(LinAlgError):
    pass


class Echelon:
    def __init__(self, track=False):
        self.pivots = {}
        self.track = track
        self.rank = 0

    def reduce(self, vec, combo=None):
        """Reduce a copy of vec; returns (residual, combo).

        With tracking, combo starts as the given dict and has the pivot
        combinations subtracted, so residual = Σ combo[k]·column_k holds.
        """
        v = dict(vec)
        pivots = self.pivots
        heap = [r for r in v if r in pivots]
        heapq.heapify(heap)
        while heap:
            r = heapq.heappop(heap)
            c = v.get(r)
            if c is None:
                continue
            pv, pc = pivots[r]
            for rr, val in pv.items():
                x = v.get(rr)
                if x is None:
                    v[rr] = -c * val
                    if rr in pivots:
                        heapq.heappush(heap, rr)
                else:
                    x = x - c * val
                    if x:
                        v[rr] = x
                    else:
                        del v[rr]
            if combo is not None and pc is not None:
                for k, val in pc.items():
                    x = combo.get(k)
                    x = -c * val if x is None else x - c * val
                    if x:
                        combo[k] = x
                    else:
                        combo.pop(k, None)
        return v, combo

    def add(self, vec, tag=None):
        """Insert a column; returns None if independent, else its kernel combo."""
        combo = {tag: 1} if self.track else None
        v, combo = self.reduce(vec, combo)
        if not v:
            return combo if self.track else {}
        r = min(v)
        p = v[r]
        # plain ints only arise as ±1 from tag combos; 1/1 would be a float
        inv = p if isinstance(p, int) and p in (1, -1) else 1 / p
        v = {k: x * inv for k, x in v.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        self.pivots[r] = (v, combo)
        self.rank += 1
        return None

    def contains(self, vec):
        v, _ = self.reduce(vec)
        return not v

    def express(self, vec):
        """Coefficients c with vec = Σ c[tag]·column_tag, or None if vec is outside the span."""
        if not self.track:
            raise LinAlgError("express needs a tracking echelon")
        v, combo = self.reduce(vec, {})
        if v:
            return None
        return {k: -x for k, x in combo.items()}


def rank(columns):
    e = Echelon()
    for col in columns:
        e.add(col)
    return e.rank


def kernel(columns):
    """Basis of {c : Σ c_j column_j = 0} as dicts over column indices."""
    e = Echelon(track=True)
    out = []
    for j, col in enumerate(columns):
        k = e.add(col, j)
        if k is not None:
            out.append(k)
    return out


def solve(columns, rhs):
    """Unique x with Σ x_j column_j = rhs; raises NotInvertible otherwise."""
    e = Echelon(track=True)
    for j, col in enumerate(columns):
        if e.add(col, j) is not None:
            raise NotInvertible("columns are linearly dependent")
    x = e.express(rhs)
    if x is None:
        raise NotInvertible("right-hand side is not in the column span")
    return x


def apply(columns, x):
    out = {}
    for j, c in x.items():
        for r, v in columns[j].items():
            y = out.get(r)
            y = c * v if y is None else y + c * v
            if y:
                out[r] = y
            else:
                out.pop(r, None)
    return out
