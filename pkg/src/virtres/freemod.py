"""Graded free modules, homogeneous matrices, and module presentations.

Twist lists store the generator multidegrees a_k of F = (+) S(-a_k), so a
matrix F_col -> F_row is homogeneous when every nonzero entry satisfies
deg(entry) = col_twist - row_twist.
"""

from .gradings import GradingSetup
from .groebner import (SubmoduleGB, annihilator_of_cokernel, dim_of_ideal_cols,
                       dim_of_monomial_ideal, quotient_by_ideal, quotient_by_poly,
                       reduced_gb, saturate_cols, vec_lead)
from .poly import Polynomial


class GradedFreeModule:
    __slots__ = ("setup", "twists")

    def __init__(self, setup, twists):
        self.setup = setup
        self.twists = tuple(tuple(int(x) for x in t) for t in twists)
        for t in self.twists:
            if len(t) != setup.degree_rank:
                raise ValueError("twist %r has wrong length" % (t,))

    @property
    def rank(self):
        return len(self.twists)

    def dual(self):
        return GradedFreeModule(self.setup, [tuple(-x for x in t) for t in self.twists])

    def __eq__(self, other):
        return (isinstance(other, GradedFreeModule)
                and self.setup == other.setup and self.twists == other.twists)

    def __repr__(self):
        return "GradedFreeModule(rank=%d, twists=%r)" % (self.rank, list(self.twists))


def _sub_deg(a, b):
    return tuple(x - y for x, y in zip(a, b))


class GradedMatrix:
    """Homogeneous matrix between graded free modules, columns = images."""

    __slots__ = ("setup", "row_twists", "col_twists", "entries")

    def __init__(self, setup, row_twists, col_twists, entries, check=True):
        self.setup = setup
        self.row_twists = tuple(tuple(t) for t in row_twists)
        self.col_twists = tuple(tuple(t) for t in col_twists)
        self.entries = {}
        for (i, j), terms in entries.items():
            if isinstance(terms, Polynomial):
                terms = terms.terms
            if terms:
                self.entries[(i, j)] = dict(terms)
        if check:
            self.validate()

    def validate(self):
        nr, nc = len(self.row_twists), len(self.col_twists)
        for (i, j), terms in self.entries.items():
            if not (0 <= i < nr and 0 <= j < nc):
                raise ValueError("entry (%d,%d) outside %dx%d matrix" % (i, j, nr, nc))
            want = _sub_deg(self.col_twists[j], self.row_twists[i])
            for m in terms:
                if self.setup.multideg(m) != want:
                    raise ValueError(
                        "entry (%d,%d) is not homogeneous of degree %r" % (i, j, want))

    @property
    def nrows(self):
        return len(self.row_twists)

    @property
    def ncols(self):
        return len(self.col_twists)

    def is_zero(self):
        return not self.entries

    def entry(self, i, j):
        return Polynomial(self.setup, self.entries.get((i, j), {}))

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), terms in self.entries.items():
            col = cols[j]
            for m, c in terms.items():
                col[(i, m)] = c
        return cols

    @classmethod
    def from_columns(cls, setup, row_twists, cols, col_twists=None, check=True):
        if col_twists is None:
            col_twists = []
            for col in cols:
                if not col:
                    raise ValueError("cannot infer the twist of a zero column")
                (comp, mono), _ = next(iter(col.items()))
                d = setup.multideg(mono)
                col_twists.append(tuple(x + y for x, y in zip(d, row_twists[comp])))
        entries = {}
        for j, col in enumerate(cols):
            for (i, m), c in col.items():
                entries.setdefault((i, j), {})[m] = c
        return cls(setup, row_twists, col_twists, entries, check=check)

    @classmethod
    def zero(cls, setup, row_twists, col_twists):
        return cls(setup, row_twists, col_twists, {}, check=False)

    @classmethod
    def identity(cls, setup, twists):
        one = {(0,) * setup.nvars: 1}
        return cls(setup, twists, twists,
                   {(i, i): dict(one) for i in range(len(twists))}, check=False)

    def compose(self, other):
        """self * other, where other feeds into self."""
        if self.col_twists != other.row_twists:
            raise ValueError("twist lists do not match for composition")
        p = self.setup.p
        out = {}
        by_col = {}
        for (i, j), terms in other.entries.items():
            by_col.setdefault(j, []).append((i, terms))
        by_row = {}
        for (i, j), terms in self.entries.items():
            by_row.setdefault(j, []).append((i, terms))
        from .poly import mono_mul
        for j, rights in by_col.items():
            for k, right_terms in rights:
                for i, left_terms in by_row.get(k, []):
                    acc = out.setdefault((i, j), {})
                    for m1, c1 in left_terms.items():
                        for m2, c2 in right_terms.items():
                            m = mono_mul(m1, m2)
                            v = (acc.get(m, 0) + c1 * c2) % p
                            if v:
                                acc[m] = v
                            else:
                                acc.pop(m, None)
        out = {k: v for k, v in out.items() if v}
        return GradedMatrix(self.setup, self.row_twists, other.col_twists, out,
                            check=False)

    def transpose_dual(self):
        entries = {(j, i): dict(t) for (i, j), t in self.entries.items()}
        neg = lambda ts: tuple(tuple(-x for x in t) for t in ts)
        return GradedMatrix(self.setup, neg(self.col_twists), neg(self.row_twists),
                            entries, check=False)

    def scale_column(self, j, c):
        p = self.setup.p
        for key in [k for k in self.entries if k[1] == j]:
            self.entries[key] = {m: (v * c) % p for m, v in self.entries[key].items()}

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix)
                and self.row_twists == other.row_twists
                and self.col_twists == other.col_twists
                and self.entries == other.entries)

    def __repr__(self):
        return "GradedMatrix(%dx%d)" % (self.nrows, self.ncols)


def groebner_basis(setup, gens):
    """Reduced Groebner basis of an ideal or of the column span of a matrix.

    Accepts a list of Polynomials or a GradedMatrix; returns objects of the
    same flavor.  Idempotent, and normal forms against it are unique.
    """
    if isinstance(gens, GradedMatrix):
        basis = reduced_gb(gens.columns(), setup)
        return GradedMatrix.from_columns(setup, gens.row_twists, basis)
    cols = []
    for g in gens:
        terms = g.terms if isinstance(g, Polynomial) else g
        if terms:
            cols.append({(0, m): c for m, c in terms.items()})
    basis = reduced_gb(cols, setup)
    return [Polynomial(setup, {m: c for (_, m), c in v.items()}) for v in basis]


def syzygy_module(matrix):
    """First syzygies of the columns; the composite with the input is zero."""
    from .groebner import syzygy_columns
    cols = syzygy_columns(matrix.columns(), matrix.setup)
    return GradedMatrix.from_columns(matrix.setup, matrix.col_twists, cols)


def module_quotient(matrix, ideal_gens):
    """(N : J) inside the ambient of the matrix, as a matrix of generators."""
    terms = []
    for g in ideal_gens:
        t = g.terms if isinstance(g, Polynomial) else dict(g)
        if t:
            terms.append(t)
    cols = quotient_by_ideal(matrix.columns(), terms, matrix.nrows, matrix.setup)
    return GradedMatrix.from_columns(matrix.setup, matrix.row_twists, cols)


class ModulePresentation:
    """Finitely generated graded module as the cokernel of a matrix."""

    def __init__(self, setup, ambient, relations=None):
        self.setup = setup
        self.ambient = ambient
        if relations is None:
            relations = GradedMatrix.zero(setup, ambient.twists, [])
        if relations.row_twists != ambient.twists:
            raise ValueError("relation rows must match the ambient twists")
        self.relations = relations
        self._cache = {}

    @classmethod
    def cyclic(cls, setup, ideal_gens, twist=None):
        """S(-twist)/I for an ideal given by polynomials."""
        if twist is None:
            twist = setup.zero_deg()
        amb = GradedFreeModule(setup, [twist])
        cols = []
        col_twists = []
        for g in ideal_gens:
            if isinstance(g, Polynomial):
                terms = g.terms
            else:
                terms = g
            if not terms:
                continue
            cols.append({(0, m): c for m, c in terms.items()})
            d = setup.multideg(next(iter(terms)))
            col_twists.append(tuple(x + y for x, y in zip(d, twist)))
        rel = GradedMatrix.from_columns(setup, amb.twists, cols, col_twists)
        return cls(setup, amb, rel)

    @classmethod
    def free(cls, setup, twists):
        return cls(setup, GradedFreeModule(setup, twists))

    def relation_cols(self):
        return self.relations.columns()

    def relation_gb(self):
        gb = self._cache.get("gb")
        if gb is None:
            gb = SubmoduleGB(self.relation_cols(), self.setup)
            self._cache["gb"] = gb
        return gb

    def is_cyclic(self):
        return self.ambient.rank == 1

    def ideal_cols(self):
        if not self.is_cyclic():
            raise ValueError("not a cyclic module")
        return self.relation_cols()

    def is_zero_module(self):
        gb = self.relation_gb()
        zero = (0,) * self.setup.nvars
        return all(gb.contains({(k, zero): 1}) for k in range(self.ambient.rank))

    def annihilator_cols(self):
        ann = self._cache.get("ann")
        if ann is None:
            ann = annihilator_of_cokernel(self.relation_cols(),
                                          self.ambient.rank, self.setup)
            self._cache["ann"] = ann
        return ann

    def annihilator(self):
        return [Polynomial(self.setup, {m: c for (_, m), c in v.items()})
                for v in self.annihilator_cols()]

    def dim(self):
        """Krull dimension of the module; None for the zero module."""
        d = self._cache.get("dim")
        if d is None:
            ann = self.annihilator_cols()
            lead = [vec_lead(v)[1] for v in reduced_gb(ann, self.setup)]
            d = dim_of_monomial_ideal(lead, self.setup) if lead \
                else self.setup.nvars
            self._cache["dim"] = d
        return d

    def codim(self):
        d = self.dim()
        if d is None:
            return None
        return self.setup.nvars - d

    def saturated_relation_cols(self):
        sat = self._cache.get("sat")
        if sat is None:
            sat = saturate_cols(self.relation_cols(), self.ambient.rank, self.setup)
            self._cache["sat"] = sat
        return sat

    def saturate(self):
        """The presentation with relations replaced by their B-saturation."""
        cols = self.saturated_relation_cols()
        rel = GradedMatrix.from_columns(self.setup, self.ambient.twists, cols)
        return ModulePresentation(self.setup, self.ambient, rel)

    def is_irrelevant(self):
        """True when the sheafification vanishes (module is B-power torsion)."""
        flag = self._cache.get("irr")
        if flag is None:
            gb = SubmoduleGB(self.saturated_relation_cols(), self.setup)
            zero = (0,) * self.setup.nvars
            flag = all(gb.contains({(k, zero): 1})
                       for k in range(self.ambient.rank))
            self._cache["irr"] = flag
        return flag

    def quotient_elements(self, f):
        """(0 :_M f) as columns of (N : f) in the ambient module."""
        terms = f.terms if isinstance(f, Polynomial) else f
        return quotient_by_poly(self.relation_cols(), terms,
                                self.ambient.rank, self.setup)

    def mod_element(self, f):
        """M / f M with the same ambient."""
        terms = f.terms if isinstance(f, Polynomial) else f
        cols = self.relation_cols()
        extra = []
        d = self.setup.multideg(next(iter(terms)))
        for k in range(self.ambient.rank):
            extra.append({(k, m): c for m, c in terms.items()})
        new_cols = cols + extra
        twists = list(self.relations.col_twists)
        for k in range(self.ambient.rank):
            twists.append(tuple(x + y for x, y in zip(d, self.ambient.twists[k])))
        rel = GradedMatrix.from_columns(self.setup, self.ambient.twists,
                                        new_cols, twists)
        return ModulePresentation(self.setup, self.ambient, rel)

    def __repr__(self):
        return "ModulePresentation(ambient rank %d, %d relations)" % (
            self.ambient.rank, self.relations.ncols)
