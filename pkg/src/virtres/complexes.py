"""Finite chain complexes of graded free modules.

diffs[i] maps modules[i+1] to modules[i].  Minimization cancels
degree-zero (constant) entries by Gaussian elimination on the pair of
adjacent differentials; for complexes of graded free modules the graded
ranks of the result do not depend on the elimination order.
"""

from .errors import InputError
from .freemod import GradedFreeModule, GradedMatrix
from .poly import mono_mul


class ChainComplex:

    def __init__(self, setup, modules, diffs, check=True, meta=None):
        self.setup = setup
        self.modules = list(modules)
        self.diffs = list(diffs)
        self.meta = dict(meta or {})
        if len(self.diffs) != max(len(self.modules) - 1, 0):
            raise InputError("expected one differential per adjacent pair of modules")
        if check:
            self.validate()

    def validate(self):
        for i, d in enumerate(self.diffs):
            if d.row_twists != self.modules[i].twists:
                raise InputError("differential %d target twists mismatch" % (i + 1,))
            if d.col_twists != self.modules[i + 1].twists:
                raise InputError("differential %d source twists mismatch" % (i + 1,))
            d.validate()
        for i in range(len(self.diffs) - 1):
            if not self.diffs[i].compose(self.diffs[i + 1]).is_zero():
                raise InputError("differentials do not compose to zero at %d" % (i + 1,))

    @property
    def top_index(self):
        return len(self.modules) - 1

    def length(self):
        """Largest homological index carrying a nonzero module."""
        for i in range(len(self.modules) - 1, -1, -1):
            if self.modules[i].rank:
                return i
        return 0

    def ranks(self):
        return [m.rank for m in self.modules]

    def twists(self):
        return [list(m.twists) for m in self.modules]

    def differential(self, i):
        """The map C_i -> C_{i-1}; zero matrix outside the stored range."""
        if 1 <= i <= len(self.diffs):
            return self.diffs[i - 1]
        if i == len(self.diffs) + 1:
            return GradedMatrix.zero(self.setup, self.modules[-1].twists, [])
        raise InputError("no differential at index %d" % i)

    def trimmed(self):
        n = self.length()
        return ChainComplex(self.setup, self.modules[:n + 1], self.diffs[:n],
                            check=False, meta=self.meta)

    def is_minimal(self):
        zero = (0,) * self.setup.nvars
        for d in self.diffs:
            for terms in d.entries.values():
                if zero in terms:
                    return False
        return True

    def dual(self):
        """Hom(-, S): reversed indexing, negated twists, transposed maps."""
        n = self.top_index
        modules = [self.modules[n - j].dual() for j in range(n + 1)]
        diffs = [self.diffs[n - i - 1].transpose_dual() for i in range(n)]
        meta = dict(self.meta)
        meta["dual_of_length"] = n
        return ChainComplex(self.setup, modules, diffs, check=False, meta=meta)

    def homology_index_of_cohomology(self, i):
        n = self.meta.get("dual_of_length")
        if n is None:
            raise InputError("not a dual complex")
        return n - i

    def minimize(self, order="forward"):
        return minimize_complex(self, order=order)

    def to_json(self):
        from .serialize import chain_complex_to_json
        return chain_complex_to_json(self)

    def __repr__(self):
        return "ChainComplex(ranks=%r)" % (self.ranks(),)


def _poly_scale(terms, c, p):
    return {m: (v * c) % p for m, v in terms.items()}


def _poly_iadd_mult(acc, a_terms, b_terms, p, negate=False):
    for m1, c1 in a_terms.items():
        for m2, c2 in b_terms.items():
            m = mono_mul(m1, m2)
            d = c1 * c2
            v = (acc.get(m, 0) + (p - d % p if negate else d)) % p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)


class _Work:
    """Mutable complex state during minimization: entries plus alive flags."""

    def __init__(self, complex_):
        self.setup = complex_.setup
        self.p = complex_.setup.p
        self.twists = [list(m.twists) for m in complex_.modules]
        self.alive = [set(range(len(t))) for t in self.twists]
        self.entries = [{k: dict(t) for k, t in d.entries.items()}
                        for d in complex_.diffs]

    def find_unit(self, order):
        zero = (0,) * self.setup.nvars
        indices = range(len(self.entries))
        if order == "reverse":
            indices = reversed(list(indices))
        for d in indices:
            for (i, j) in sorted(self.entries[d]):
                terms = self.entries[d][(i, j)]
                if zero in terms:
                    return d, i, j, terms[zero]
        return None

    def cancel(self, d, r, c, u):
        p = self.p
        uinv = pow(u, p - 2, p)
        E = self.entries[d]
        row = {j: t for (i, j), t in E.items() if i == r and j != c}
        colc = {i: t for (i, j), t in E.items() if j == c}
        # clear row r by column operations; adjust the next differential
        for j, e_terms in row.items():
            lam = _poly_scale(e_terms, uinv, p)
            for i, f_terms in colc.items():
                acc = dict(E.get((i, j), {}))
                _poly_iadd_mult(acc, lam, f_terms, p, negate=True)
                if acc:
                    E[(i, j)] = acc
                else:
                    E.pop((i, j), None)
            if d + 1 < len(self.entries):
                E2 = self.entries[d + 1]
                rowj = {k: t for (i2, k), t in E2.items() if i2 == j}
                for k, g_terms in rowj.items():
                    acc = dict(E2.get((c, k), {}))
                    _poly_iadd_mult(acc, lam, g_terms, p)
                    if acc:
                        E2[(c, k)] = acc
                    else:
                        E2.pop((c, k), None)
        # clear column c by row operations; adjust the previous differential
        colc = {i: t for (i, j), t in E.items() if j == c and i != r}
        roww = {j: t for (i, j), t in E.items() if i == r}
        for i, e_terms in colc.items():
            mu = _poly_scale(e_terms, uinv, p)
            for j, f_terms in roww.items():
                acc = dict(E.get((i, j), {}))
                _poly_iadd_mult(acc, mu, f_terms, p, negate=True)
                if acc:
                    E[(i, j)] = acc
                else:
                    E.pop((i, j), None)
            if d - 1 >= 0:
                E0 = self.entries[d - 1]
                coli = {i2: t for (i2, k), t in E0.items() if k == i}
                for i2, g_terms in coli.items():
                    acc = dict(E0.get((i2, r), {}))
                    _poly_iadd_mult(acc, mu, g_terms, p)
                    if acc:
                        E0[(i2, r)] = acc
                    else:
                        E0.pop((i2, r), None)
        # the cancelled pair must now be isolated
        for (i, j) in list(E):
            if (i == r or j == c) and (i, j) != (r, c):
                if E[(i, j)]:
                    raise AssertionError("cancellation left a nonzero entry behind")
        E.pop((r, c), None)
        if d + 1 < len(self.entries):
            E2 = self.entries[d + 1]
            for (i2, k) in list(E2):
                if i2 == c:
                    if E2[(i2, k)]:
                        raise AssertionError("next differential row did not vanish")
                    E2.pop((i2, k))
        if d - 1 >= 0:
            E0 = self.entries[d - 1]
            for (i2, k) in list(E0):
                if k == r:
                    if E0[(i2, k)]:
                        raise AssertionError("previous differential column did not vanish")
                    E0.pop((i2, k))
        self.alive[d + 1].discard(c)
        self.alive[d].discard(r)

    def rebuild(self, setup, meta):
        remap = []
        for lvl, alive in enumerate(self.alive):
            order = sorted(alive)
            remap.append({old: new for new, old in enumerate(order)})
        modules = [GradedFreeModule(self.setup,
                                    [self.twists[lvl][old] for old in sorted(alive)])
                   for lvl, alive in enumerate(self.alive)]
        diffs = []
        for d, E in enumerate(self.entries):
            entries = {}
            for (i, j), terms in E.items():
                entries[(remap[d][i], remap[d + 1][j])] = terms
            diffs.append(GradedMatrix(self.setup, modules[d].twists,
                                      modules[d + 1].twists, entries, check=False))
        return ChainComplex(setup, modules, diffs, check=False, meta=meta)


def minimize_complex(complex_, order="forward"):
    """Homotopy-equivalent complex with no degree-zero entries left."""
    work = _Work(complex_)
    while True:
        hit = work.find_unit(order)
        if hit is None:
            break
        d, r, c, u = hit
        work.cancel(d, r, c, u)
    out = work.rebuild(complex_.setup, dict(complex_.meta))
    return out.trimmed()


def hom_dual(complex_):
    """Hom(-, S) of a finite complex; (C*)* equals C entrywise."""
    return complex_.dual()


def direct_sum(complexes):
    """Degreewise direct sum; the length is the max of the input lengths."""
    if not complexes:
        raise InputError("direct sum of an empty list")
    setup = complexes[0].setup
    for c in complexes:
        if c.setup != setup:
            raise InputError("direct sum requires a common grading setup")
    n = max(c.top_index for c in complexes)
    modules = []
    offsets = []
    for i in range(n + 1):
        twists = []
        offs = []
        for c in complexes:
            offs.append(len(twists))
            if i <= c.top_index:
                twists.extend(c.modules[i].twists)
        offsets.append(offs)
        modules.append(GradedFreeModule(setup, twists))
    diffs = []
    for i in range(n):
        entries = {}
        for ci, c in enumerate(complexes):
            if i + 1 <= c.top_index:
                d = c.diffs[i]
                ro, co = offsets[i][ci], offsets[i + 1][ci]
                for (a, b), terms in d.entries.items():
                    entries[(a + ro, b + co)] = dict(terms)
        diffs.append(GradedMatrix(setup, modules[i].twists, modules[i + 1].twists,
                                  entries, check=False))
    return ChainComplex(setup, modules, diffs, check=False)


def tensor_with_koszul_factor(complex_, f_terms):
    """Total complex of C tensored with [S(-deg f) --f--> S].

    E_i = C_i (+) C_{i-1}(-deg f) with blocks [[d_i, (-1)^(i-1) f],[0, d_{i-1}]].
    """
    setup = complex_.setup
    p = setup.p
    if not f_terms:
        raise InputError("cannot tensor with the zero multiplier")
    d = setup.multideg(next(iter(f_terms)))
    n = complex_.top_index
    modules = []
    for i in range(n + 2):
        twists = []
        if i <= n:
            twists.extend(complex_.modules[i].twists)
        if 0 <= i - 1 <= n:
            twists.extend(tuple(x + y for x, y in zip(t, d))
                          for t in complex_.modules[i - 1].twists)
        modules.append(GradedFreeModule(setup, twists))
    diffs = []
    for i in range(1, n + 2):
        entries = {}
        rank_ci = complex_.modules[i].rank if i <= n else 0
        rank_prev = complex_.modules[i - 1].rank
        if i <= n:
            for (a, b), terms in complex_.diffs[i - 1].entries.items():
                entries[(a, b)] = dict(terms)
        sign = 1 if (i - 1) % 2 == 0 else p - 1
        for k in range(rank_prev):
            entries[(k, rank_ci + k)] = {m: (c * sign) % p for m, c in f_terms.items()}
        if i >= 2:
            for (a, b), terms in complex_.diffs[i - 2].entries.items():
                entries[(rank_prev + a, rank_ci + b)] = dict(terms)
        diffs.append(GradedMatrix(setup, modules[i - 1].twists, modules[i].twists,
                                  entries, check=False))
    return ChainComplex(setup, modules, diffs, check=False)
