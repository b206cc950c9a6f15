"""Colored simplicial complexes on the vertex set of a product of
projective spaces.

A vertex (i, j) is the variable x_{i,j} (block i is 1-based, j 0-based);
vertices of block i have color i.  Faces are bitmasks over the block-major
vertex ordering, so color extraction is a couple of mask operations.
Facet sets are kept as inclusion antichains; membership is a
subset-of-facet test.

The empty complex {emptyset} (facets == {0}) and the void complex
(no faces at all) are distinguished.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError, InputError


def _popcount(x):
    return bin(x).count("1")


def _bits(x):
    out = []
    v = 0
    while x:
        if x & 1:
            out.append(v)
        x >>= 1
        v += 1
    return out


def _antichain(masks):
    masks = sorted(set(masks), key=_popcount, reverse=True)
    keep = []
    for m in masks:
        if not any(m & ~k == 0 for k in keep):
            keep.append(m)
    return frozenset(keep)


@dataclass(frozen=True)
class Face:
    """A face as a sorted tuple of (color, index) vertices."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(tuple(v) for v in self.vertices)))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("face has duplicate vertices")

    @property
    def dim(self):
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)


class ColoredComplex:

    __slots__ = ("blocks", "r", "nvertices", "facets", "_offsets",
                 "_block_masks", "_full_mask", "_faces")

    def __init__(self, blocks, facets, _raw=False):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise InputError("every block needs at least one vertex")
        self.blocks = blocks
        self.r = len(blocks)
        self.nvertices = sum(blocks)
        offsets = []
        pos = 0
        for b in blocks:
            offsets.append(pos)
            pos += b
        self._offsets = tuple(offsets)
        self._block_masks = tuple(((1 << b) - 1) << off
                                  for b, off in zip(blocks, offsets))
        self._full_mask = (1 << self.nvertices) - 1
        if _raw:
            masks = frozenset(facets)
        else:
            masks = []
            for f in facets:
                masks.append(self.face_mask(f))
            masks = _antichain(masks)
        self.facets = masks
        self._faces = None

    # -- vertex/face encoding ------------------------------------------------

    def vertex_index(self, vertex):
        i, j = vertex
        if not (1 <= i <= self.r) or not (0 <= j < self.blocks[i - 1]):
            raise InputError("vertex (%r, %r) outside the declared blocks" % (i, j))
        return self._offsets[i - 1] + j

    def vertex_label(self, v):
        for i, (b, off) in enumerate(zip(self.blocks, self._offsets)):
            if off <= v < off + b:
                return (i + 1, v - off)
        raise InputError("vertex index out of range")

    def face_mask(self, face):
        if isinstance(face, int):
            if face < 0 or face > self._full_mask:
                raise InputError("face mask out of range")
            return face
        if isinstance(face, Face):
            face = face.vertices
        mask = 0
        for vertex in face:
            mask |= 1 << self.vertex_index(vertex)
        return mask

    def face_from_mask(self, mask):
        return Face(tuple(self.vertex_label(v) for v in _bits(mask)))

    # -- basic structure -----------------------------------------------------

    def is_void(self):
        return not self.facets

    def is_empty_complex(self):
        return self.facets == frozenset([0])

    def dim(self):
        """Dimension; -1 for the empty complex, None for the void complex."""
        if not self.facets:
            return None
        return max(_popcount(f) for f in self.facets) - 1

    def contains(self, face):
        mask = self.face_mask(face)
        return any(mask & ~f == 0 for f in self.facets)

    def faces(self):
        """All face masks, sorted by (dimension, mask)."""
        if self._faces is None:
            seen = set()
            for f in self.facets:
                sub = f
                while True:
                    seen.add(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & f
            self._faces = sorted(seen, key=lambda m: (_popcount(m), m))
        return self._faces

    def faces_by_dim(self):
        out = {}
        for m in self.faces():
            out.setdefault(_popcount(m) - 1, []).append(m)
        return out

    def face_count(self):
        return len(self.faces())

    def colors(self, face):
        mask = self.face_mask(face)
        return frozenset(i + 1 for i, bm in enumerate(self._block_masks) if mask & bm)

    def is_relevant_face(self, face):
        mask = self.face_mask(face)
        return all(mask & bm for bm in self._block_masks)

    def is_relevant(self):
        return any(self.is_relevant_face(f) for f in self.facets)

    def vertex_support(self):
        mask = 0
        for f in self.facets:
            mask |= f
        return mask

    # -- constructions -------------------------------------------------------

    def link(self, face):
        mask = self.face_mask(face)
        if not self.contains(mask):
            raise DomainError("cannot take a link of a non-face")
        gens = [f & ~mask for f in self.facets if mask & ~f == 0]
        return ColoredComplex(self.blocks, _antichain(gens), _raw=True)

    def restrict(self, vertex_mask):
        """Induced subcomplex on the given vertex set."""
        gens = _antichain(f & vertex_mask for f in self.facets)
        return ColoredComplex(self.blocks, gens, _raw=True)

    def union(self, other):
        if self.blocks != other.blocks:
            raise InputError("union requires matching block structure")
        return ColoredComplex(self.blocks,
                              _antichain(self.facets | other.facets), _raw=True)

    def join_with_face(self, face):
        mask = self.face_mask(face)
        if self.is_void():
            raise DomainError("join with the void complex is undefined")
        gens = _antichain(f | mask for f in self.facets)
        return ColoredComplex(self.blocks, gens, _raw=True)

    def __eq__(self, other):
        return (isinstance(other, ColoredComplex)
                and self.blocks == other.blocks and self.facets == other.facets)

    def __hash__(self):
        return hash((self.blocks, self.facets))

    def __repr__(self):
        if self.is_void():
            return "ColoredComplex(blocks=%r, void)" % (list(self.blocks),)
        return "ColoredComplex(blocks=%r, %d facets, dim %s)" % (
            list(self.blocks), len(self.facets), self.dim())


# ---------------------------------------------------------------------------
# spec operations


def face_colors(cc, face):
    """Color set of a face together with its relevance flag."""
    colors = cc.colors(face)
    return colors, len(colors) == cc.r


def stanley_reisner_nonfaces(cc):
    """Masks of the minimal non-faces, sorted by (size, mask)."""
    face_set = set(cc.faces())
    nonfaces = []
    if not face_set:
        return [0]
    for mask in range(1 << cc.nvertices):
        if mask in face_set:
            continue
        minimal = True
        m = mask
        while m:
            v = m & -m
            if (mask ^ v) not in face_set:
                minimal = False
                break
            m ^= v
        if minimal:
            nonfaces.append(mask)
    return sorted(nonfaces, key=lambda m: (_popcount(m), m))


def stanley_reisner_exponents(cc):
    """Squarefree exponent tuples of the minimal generators of I_Delta."""
    out = []
    for mask in stanley_reisner_nonfaces(cc):
        e = [0] * cc.nvertices
        for v in _bits(mask):
            e[v] = 1
        out.append(tuple(e))
    return out


def build_br(blocks, rbound, colors=None):
    """The complex of all irrelevant faces of dimension at most rbound.

    With a color subset, irrelevance as well as the vertex universe are
    taken relative to those colors (used by the join recursion).
    """
    if rbound < 0:
        raise InputError("dimension bound must be nonnegative")
    probe = ColoredComplex(blocks, [])
    if colors is None:
        colors = range(1, probe.r + 1)
    colors = sorted(set(colors))
    universe = 0
    for c in colors:
        universe |= probe._block_masks[c - 1]
    gens = set()
    for omit in colors:
        vmask = universe & ~probe._block_masks[omit - 1]
        verts = _bits(vmask)
        if len(verts) <= rbound + 1:
            gens.add(vmask)
        else:
            for combo in combinations(verts, rbound + 1):
                m = 0
                for v in combo:
                    m |= 1 << v
                gens.add(m)
    gens.add(0)
    return ColoredComplex(blocks, _antichain(gens), _raw=True)


def augment_with_br(cc, rbound=None):
    """Facet-antichain union of the complex with B_r (r defaults to the block count)."""
    if rbound is None:
        rbound = cc.r
    return cc.union(build_br(cc.blocks, rbound))


@dataclass
class ComponentSplit:
    components: list
    irrelevant_facets: list
    is_relevant: bool


def relevant_connected_components(cc):
    """Partition of the relevant facets into relevant-connected classes.

    Two facets are adjacent when they share a relevant face, i.e. their
    intersection still uses every color.  Returns the closed subcomplex
    generated by each class; irrelevant facets are reported separately.
    """
    relevant = [f for f in cc.facets if cc.is_relevant_face(f)]
    irrelevant = [f for f in cc.facets if not cc.is_relevant_face(f)]
    if not relevant:
        return ComponentSplit([], irrelevant, False)
    parent = list(range(len(relevant)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in combinations(range(len(relevant)), 2):
        shared = relevant[i] & relevant[j]
        if all(shared & bm for bm in cc._block_masks):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups = {}
    for i in range(len(relevant)):
        groups.setdefault(find(i), []).append(relevant[i])
    components = [ColoredComplex(cc.blocks, frozenset(g), _raw=True)
                  for _, g in sorted(groups.items(), key=lambda kv: min(kv[1]))]
    return ComponentSplit(components, irrelevant, True)


@dataclass
class FaceSplit:
    """Link faces split by membership in the link inside B_r."""

    exterior: frozenset
    interior: frozenset
    link: ColoredComplex

    def __post_init__(self):
        if self.exterior & self.interior:
            raise InputError("exterior and interior must be disjoint")


def exterior_interior_split(cc, face, rbound=None):
    mask = cc.face_mask(face)
    if mask == 0:
        raise DomainError("the split is defined for nonempty faces only")
    if rbound is None:
        rbound = cc.r
    link = cc.link(mask)
    br = build_br(cc.blocks, rbound)
    if br.contains(mask):
        br_link = br.link(mask)
        ext = frozenset(f for f in link.faces() if br_link.contains(f))
    else:
        ext = frozenset()
    interior = frozenset(link.faces()) - ext
    return FaceSplit(ext, interior, link)


def twoface_profile(cc, face):
    """Interior codimension-1 face counts of the link facets.

    Requires a complex whose facets are all relevant of dimension r.  For
    each facet tau of link(face) the count is 0, 1 or 2, matching whether
    the face repeats a color, tau shares a color with the face, or tau
    repeats a color.
    """
    r = cc.r
    mask = cc.face_mask(face)
    if mask == 0:
        raise DomainError("profile requires a nonempty face")
    if cc.is_void() or cc.dim() != r:
        raise DomainError("profile requires an r-dimensional complex")
    for f in cc.facets:
        if _popcount(f) != r + 1 or not cc.is_relevant_face(f):
            raise DomainError("profile requires a pure complex with relevant facets")
    if not cc.contains(mask):
        raise DomainError("face is not in the complex")
    split = exterior_interior_split(cc, mask, r)
    link = split.link
    sigma_colors = cc.colors(mask)
    out = []
    for tau in link.facets:
        interior_count = 0
        for v in _bits(tau):
            gamma = tau & ~(1 << v)
            if gamma in split.interior:
                interior_count += 1
        tau_colors = [cc.colors(1 << v) for v in _bits(tau)]
        flat = [next(iter(c)) for c in tau_colors]
        sigma_flat = [next(iter(cc.colors(1 << v))) for v in _bits(mask)]
        if len(set(sigma_flat)) < len(sigma_flat):
            kind = "face-repeats-color"
        elif set(flat) & set(sigma_flat):
            kind = "shares-color"
        elif len(set(flat)) < len(flat):
            kind = "facet-repeats-color"
        else:
            kind = "unclassified"
        out.append({"facet": tau, "interior_codim1": interior_count, "kind": kind})
    return out


def join_decomposition(cc):
    """Maximal join factor (tau, Omega) with disjoint color supports, or None.

    tau is the greatest set of common facet vertices whose colors do not
    appear outside it; for a single simplex the lex-least color group is
    split off instead so the residual complex is nonempty.
    """
    if cc.is_void() or cc.is_empty_complex():
        return None
    support = cc.vertex_support()
    common = support
    for f in cc.facets:
        common &= f
    if common == 0:
        return None
    tau = common
    while True:
        outside = support & ~tau
        bad = 0
        for i, bm in enumerate(cc._block_masks):
            if outside & bm:
                bad |= bm
        new_tau = tau & ~bad
        if new_tau == tau:
            break
        tau = new_tau
    if tau == 0:
        return None
    if tau == support:
        # single simplex: split off the least color present
        least = next(i for i, bm in enumerate(cc._block_masks) if support & bm)
        tau = support & cc._block_masks[least]
        if tau == support:
            omega = ColoredComplex(cc.blocks, frozenset([0]), _raw=True)
            return tau, omega
    omega_facets = _antichain(f & ~tau for f in cc.facets)
    omega = ColoredComplex(cc.blocks, omega_facets, _raw=True)
    return tau, omega
