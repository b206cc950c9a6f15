"""Reduced and relative simplicial homology over GF(p); Reisner's
criterion; Hochster's formula for multigraded Betti numbers.

Boundary matrices are assembled over the block-major vertex order with
the usual alternating signs and ranks are taken mod p, so dimensions are
reported per characteristic.
"""

import numpy as np

from .errors import DomainError, InputError
from .linalg import rank_mod_p
from .simplicial import _bits, _popcount

DEFAULT_CHAR = 32003


class HomologyProfile:
    """Reduced homology dimensions indexed from -1."""

    def __init__(self, dims, p, void=False):
        self.dims = {int(i): int(d) for i, d in dims.items() if d}
        self.p = p
        self.void = void

    def dim(self, i):
        return self.dims.get(i, 0)

    def top_degree(self):
        return max(self.dims, default=-1)

    def as_list(self, upto=None):
        """JSON form: list of dimensions starting at index -1."""
        if upto is None:
            upto = self.top_degree()
        return [self.dim(i) for i in range(-1, upto + 1)]

    def __eq__(self, other):
        return isinstance(other, HomologyProfile) and self.dims == other.dims

    def __repr__(self):
        return "HomologyProfile(%r, p=%d)" % (self.dims, self.p)


def _boundary_rank(faces_lo, faces_hi, p):
    """Rank of the boundary map from span(faces_hi) to span(faces_lo)."""
    if not faces_hi or not faces_lo:
        return 0
    index = {m: i for i, m in enumerate(faces_lo)}
    A = np.zeros((len(faces_lo), len(faces_hi)), dtype=np.int64)
    for j, mask in enumerate(faces_hi):
        bits = _bits(mask)
        for k, v in enumerate(bits):
            sub = mask ^ (1 << v)
            i = index.get(sub)
            if i is not None:
                A[i, j] = 1 if k % 2 == 0 else p - 1
    return rank_mod_p(A, p)


def reduced_homology(cc, p=DEFAULT_CHAR):
    """Profile of reduced homology dimensions of the complex over GF(p)."""
    if cc.is_void():
        return HomologyProfile({}, p, void=True)
    by_dim = cc.faces_by_dim()
    top = cc.dim()
    ranks = {}
    for i in range(0, top + 1):
        ranks[i] = _boundary_rank(by_dim.get(i - 1, []), by_dim.get(i, []), p)
    ranks[top + 1] = 0
    dims = {}
    for i in range(-1, top + 1):
        f_i = len(by_dim.get(i, []))
        dims[i] = f_i - ranks.get(i, 0) - ranks.get(i + 1, 0)
    return HomologyProfile(dims, p)


def relative_homology(cc, sub, degree, p=DEFAULT_CHAR):
    """dim_k H_degree(cc, sub; k) via relative chain groups.

    The relative chains in each dimension are the faces of cc outside sub.
    A void sub yields reduced homology of cc.
    """
    for f in sub.facets:
        if not cc.contains(f):
            raise DomainError("second complex is not a subcomplex of the first")
    in_sub = set(sub.faces()) if not sub.is_void() else set()
    by_dim = {}
    for m in cc.faces():
        if m not in in_sub:
            by_dim.setdefault(_popcount(m) - 1, []).append(m)

    def rel_rank(i):
        lo, hi = by_dim.get(i - 1, []), by_dim.get(i, [])
        if not lo or not hi:
            return 0
        index = {m: k for k, m in enumerate(lo)}
        A = np.zeros((len(lo), len(hi)), dtype=np.int64)
        for j, mask in enumerate(hi):
            for k, v in enumerate(_bits(mask)):
                sub_face = mask ^ (1 << v)
                i2 = index.get(sub_face)
                if i2 is not None:
                    A[i2, j] = 1 if k % 2 == 0 else p - 1
        return rank_mod_p(A, p)

    f_i = len(by_dim.get(degree, []))
    return f_i - rel_rank(degree) - rel_rank(degree + 1)


def reisner_is_cm(cc, p=DEFAULT_CHAR):
    """Reisner's criterion with a witness.

    Returns (True, None) when every link has vanishing reduced homology
    below its dimension, otherwise (False, (face_mask, degree)) for the
    first failure in (dimension, mask) order.
    """
    if cc.is_void():
        raise DomainError("Reisner's criterion requires a nonvoid complex")
    for sigma in cc.faces():
        link = cc.link(sigma)
        d = link.dim()
        if d is None or d <= -1:
            continue
        profile = reduced_homology(link, p)
        for i in range(-1, d):
            if profile.dim(i):
                return False, (sigma, i)
    return True, None


class BettiTable:
    """Multigraded Betti numbers keyed by (homological index, multidegree)."""

    def __init__(self, entries, p):
        self.entries = {(int(i), tuple(a)): int(v)
                        for (i, a), v in entries.items() if v}
        self.p = p

    def total(self, i):
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def totals(self):
        top = max((i for (i, _) in self.entries), default=-1)
        return [self.total(i) for i in range(top + 1)]

    def twists(self, i):
        """Sorted multiset of twist vectors in homological degree i."""
        out = []
        for (j, a), v in sorted(self.entries.items()):
            if j == i:
                out.extend([a] * v)
        return sorted(out)

    def to_json(self):
        return {"%d,%s" % (i, ",".join(str(x) for x in a)): v
                for (i, a), v in sorted(self.entries.items())}

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return "BettiTable(totals=%r)" % (self.totals(),)


def hochster_betti(cc, p=DEFAULT_CHAR):
    """Betti table of S/I_Delta from restriction homology.

    beta_{i, W} = dim Hred_{|W|-i-1} of the induced subcomplex on W, summed
    into Z^r multidegrees.
    """
    if cc.is_void():
        return BettiTable({}, p)
    entries = {}
    nv = cc.nvertices
    for wmask in range(1 << nv):
        size = _popcount(wmask)
        profile = reduced_homology(cc.restrict(wmask), p)
        if not profile.dims:
            continue
        deg = [0] * cc.r
        for v in _bits(wmask):
            deg[cc.vertex_label(v)[0] - 1] += 1
        deg = tuple(deg)
        for j, d in profile.dims.items():
            i = size - j - 1
            key = (i, deg)
            entries[key] = entries.get(key, 0) + d
    return BettiTable(entries, p)
