"""Free resolutions, derived functors up to sheafification, and the two
shortening constructions for virtual resolutions.

A complex F of graded free modules is a virtual resolution of M when its
positive homology is irrelevant (B-power torsion) and H_0 agrees with M
after B-saturation.  The mapping-cone shortening resolves the cokernel E
of the top dualized differential, extending the given presentation so
that the two top comparison maps are identities; the reduced cone then
ends one step below the input length.
"""

from dataclasses import dataclass, field

from .complexes import (ChainComplex, direct_sum, minimize_complex,
                        tensor_with_koszul_factor)
from .errors import (DomainError, InputError, LiftingError, ObstructionError,
                     PreconditionError, TheoremContradictionError)
from .freemod import GradedFreeModule, GradedMatrix, ModulePresentation
from .groebner import (SubmoduleGB, reduced_gb, saturate_cols, syzygy_columns,
                       vec_lead)
from .hilbert import hilbert_function
from .poly import Polynomial

_MAX_EXTRA_STEPS = 4


def _twist_of_vec(setup, row_twists, vec):
    comp, mono = vec_lead(vec)
    d = setup.multideg(mono)
    return tuple(x + y for x, y in zip(d, row_twists[comp]))


def _matrix_from_vecs(setup, row_twists, vecs):
    twists = [_twist_of_vec(setup, row_twists, v) for v in vecs]
    return GradedMatrix.from_columns(setup, row_twists, vecs, twists)


def _prune_level(complexlike, lowest=1):
    """Cancel constant entries in the top differential pair of a diff list."""
    setup, modules, diffs = complexlike
    cc = ChainComplex(setup, modules, diffs, check=False)
    zero = (0,) * setup.nvars
    top = len(diffs) - 1
    if top < lowest - 1:
        return modules, diffs
    from .complexes import _Work
    work = _Work(cc)
    while True:
        found = None
        E = work.entries[top]
        for (i, j) in sorted(E):
            if zero in E[(i, j)]:
                found = (i, j, E[(i, j)][zero])
                break
        if found is None:
            break
        i, j, u = found
        work.cancel(top, i, j, u)
    out = work.rebuild(setup, {})
    return out.modules, out.diffs


def free_resolution(module, minimal=True, max_length=None):
    """Finite free resolution of a module presentation.

    With minimal=True the result is the minimal resolution: every
    differential entry lies in the irrelevant maximal ideal.
    """
    setup = module.setup
    cache_key = ("resolution", bool(minimal))
    hit = module._cache.get(cache_key)
    if hit is not None:
        return hit
    modules = [GradedFreeModule(setup, module.ambient.twists)]
    diffs = []
    if module.relations.ncols:
        modules.append(GradedFreeModule(setup, module.relations.col_twists))
        diffs.append(module.relations)
    cap = setup.nvars + 1 + _MAX_EXTRA_STEPS if max_length is None else max_length
    while diffs and len(diffs) < cap:
        cols = diffs[-1].columns()
        syz = syzygy_columns(cols, setup)
        if not syz:
            break
        mat = _matrix_from_vecs(setup, modules[-1].twists, syz)
        modules.append(GradedFreeModule(setup, mat.col_twists))
        diffs.append(mat)
        if minimal:
            modules, diffs = _prune_level((setup, modules, diffs))
            while modules and modules[-1].rank == 0:
                modules.pop()
                diffs.pop()
    else:
        if diffs and len(diffs) >= cap and max_length is None:
            raise AssertionError("resolution exceeded the Hilbert syzygy bound")
    out = ChainComplex(setup, modules, diffs, check=False)
    if minimal:
        out = minimize_complex(out).trimmed()
    module._cache[cache_key] = out
    return out


def pdim(module):
    return free_resolution(module, minimal=True).length()


def betti_from_resolution(module):
    from .homology import BettiTable
    res = free_resolution(module, minimal=True)
    entries = {}
    for i, mod in enumerate(res.modules):
        for t in mod.twists:
            key = (i, t)
            entries[key] = entries.get(key, 0) + 1
    return BettiTable(entries, module.setup.p)


def _resolution_extending(setup, ambient_twists, first_matrix, max_extra):
    """Free resolution of coker(first_matrix) whose first step is kept as given.

    Pruning skips the pair touching the fixed generator level, so the two
    leading terms of the output are exactly (ambient, source of the given
    matrix).
    """
    modules = [GradedFreeModule(setup, ambient_twists),
               GradedFreeModule(setup, first_matrix.col_twists)]
    diffs = [first_matrix]
    while len(diffs) < max_extra:
        cols = diffs[-1].columns()
        syz = syzygy_columns(cols, setup)
        if not syz:
            break
        mat = _matrix_from_vecs(setup, modules[-1].twists, syz)
        modules.append(GradedFreeModule(setup, mat.col_twists))
        diffs.append(mat)
        if len(diffs) >= 3:
            modules, diffs = _prune_level((setup, modules, diffs), lowest=3)
            while modules and modules[-1].rank == 0:
                modules.pop()
                diffs.pop()
    return ChainComplex(setup, modules, diffs, check=False)


# ---------------------------------------------------------------------------
# subquotients: Hom and Tor homology presentations

def _present_subquotient(setup, ambient_twists, numerator_cols, denominator_cols):
    """K / D as a presentation, for submodules D <= K of a free module."""
    gens = reduced_gb(numerator_cols, setup)
    if not gens:
        return ModulePresentation.free(setup, [])
    gen_twists = [_twist_of_vec(setup, ambient_twists, v) for v in gens]
    combined = [dict(g) for g in gens] + [dict(d) for d in denominator_cols]
    syz = syzygy_columns(combined, setup)
    rel_cols = []
    for s in syz:
        v = {}
        for (idx, mo), co in s.items():
            if idx < len(gens):
                key = (idx, mo)
                u = (v.get(key, 0) + co) % setup.p
                if u:
                    v[key] = u
                else:
                    v.pop(key, None)
        if v:
            rel_cols.append(v)
    rel_cols = reduced_gb(rel_cols, setup)
    ambient = GradedFreeModule(setup, gen_twists)
    if not rel_cols:
        return ModulePresentation(setup, ambient)
    rel = _matrix_from_vecs(setup, gen_twists, rel_cols)
    return ModulePresentation(setup, ambient, rel)


def _kernel_cols(matrix):
    """Generators of ker of a graded matrix, as columns in its source."""
    if matrix.ncols == 0:
        return []
    if matrix.nrows == 0 or matrix.is_zero():
        zero = (0,) * matrix.setup.nvars
        return [{(k, zero): 1} for k in range(matrix.ncols)]
    return syzygy_columns(matrix.columns(), matrix.setup)


def ext_module(module, i, resolution=None):
    """Ext^i(M, S) presented from the dualized free resolution, with flag."""
    if i < 0:
        raise InputError("Ext index must be nonnegative")
    setup = module.setup
    res = resolution if resolution is not None else free_resolution(module)
    top = res.length()
    if i > top:
        zero_mod = ModulePresentation.free(setup, [])
        return zero_mod, True
    delta_next = res.differential(i + 1).transpose_dual() if i + 1 <= top \
        else None
    dual_twists = tuple(tuple(-x for x in t) for t in res.modules[i].twists)
    if delta_next is None:
        zero = (0,) * setup.nvars
        kernel = [{(k, zero): 1} for k in range(len(dual_twists))]
    else:
        kernel = _kernel_cols(delta_next)
    if i >= 1:
        image_cols = res.differential(i).transpose_dual().columns()
    else:
        image_cols = []
    pres = _present_subquotient(setup, dual_twists, kernel, image_cols)
    return pres, pres.is_irrelevant()


def _tensor_level(setup, free_twists, nmod):
    """Ambient twists and relation columns of F_level (x) N."""
    amb = []
    for t in free_twists:
        for s in nmod.ambient.twists:
            amb.append(tuple(x + y for x, y in zip(t, s)))
    nrel = nmod.relation_cols()
    rel = []
    arank = nmod.ambient.rank
    for blk in range(len(free_twists)):
        for col in nrel:
            rel.append({(blk * arank + comp, mo): co for (comp, mo), co in col.items()})
    return amb, rel


def _tensor_map(setup, dmat, nmod):
    """(d (x) id_N-ambient) as a plain column map between tensor ambients."""
    arank = nmod.ambient.rank
    cols = []
    for j in range(dmat.ncols):
        for s in range(arank):
            col = {}
            for (i, j2), terms in dmat.entries.items():
                if j2 != j:
                    continue
                for mo, co in terms.items():
                    col[(i * arank + s, mo)] = co
            cols.append(col)
    return cols


def tor_sheaf(module, other, i, resolution=None):
    """Tor_i(M, N) up to sheafification, from any virtual resolution of M."""
    if i < 0:
        raise InputError("Tor index must be nonnegative")
    setup = module.setup
    res = resolution if resolution is not None else free_resolution(module)
    top = res.length()
    if i > top:
        return ModulePresentation.free(setup, []), True
    amb_i, rel_i = _tensor_level(setup, res.modules[i].twists, other)
    # numerator: preimage of the level i-1 relations under d_i (x) id
    if i == 0:
        zero = (0,) * setup.nvars
        numerator = [{(k, zero): 1} for k in range(len(amb_i))]
    else:
        dmap = _tensor_map(setup, res.differential(i), other)
        amb_prev, rel_prev = _tensor_level(setup, res.modules[i - 1].twists, other)
        combined = dmap + [dict(c) for c in rel_prev]
        syz = syzygy_columns(combined, setup)
        numerator = []
        for s in syz:
            v = {}
            for (idx, mo), co in s.items():
                if idx < len(dmap):
                    key = (idx, mo)
                    u = (v.get(key, 0) + co) % setup.p
                    if u:
                        v[key] = u
                    else:
                        v.pop(key, None)
            if v:
                numerator.append(v)
        numerator = reduced_gb(numerator, setup)
        if not numerator:
            return ModulePresentation.free(setup, []), True
    denominator = list(rel_i)
    if i + 1 <= top:
        denominator.extend(_tensor_map(setup, res.differential(i + 1), other))
    pres = _present_subquotient(setup, amb_i, numerator, denominator)
    return pres, pres.is_irrelevant()


# ---------------------------------------------------------------------------
# comparison maps and the mapping cone

class _LiftGB:
    """Tracked basis of a matrix image for solving A x = b columnwise."""

    def __init__(self, matrix):
        from .groebner import buchberger, normal_form
        self.setup = matrix.setup
        self._elems = buchberger(matrix.columns(), matrix.setup, track=True)
        self._nf = normal_form

    def solve(self, col):
        """Coordinates x in the source of the matrix with A x = col."""
        from .poly import mono_mul
        p = self.setup.p
        quots = [dict() for _ in self._elems]
        rem = self._nf(dict(col), self._elems, p, quotients=quots)
        if rem:
            raise LiftingError("comparison map does not lift: membership failed")
        acc = {}
        for e, q in zip(self._elems, quots):
            if not q:
                continue
            for idx, poly in e.expr.items():
                for mq, cq in q.items():
                    for mo, co in poly.items():
                        key = (idx, mono_mul(mq, mo))
                        v = (acc.get(key, 0) + cq * co) % p
                        if v:
                            acc[key] = v
                        else:
                            acc.pop(key, None)
        return acc


def lift_comparison_map(fdual, gdual):
    """Chain maps alpha_j: fdual_j -> gdual_j over a shared degree-0 module.

    gdual must be exact in positive degrees (a resolution read as a chain
    complex).  alpha_0 is the identity; when the degree-1 differentials
    coincide alpha_1 is taken to be the identity as well, which the cone
    reduction relies on, and deeper maps come from normal-form lifting.
    """
    setup = fdual.setup
    if fdual.modules[0].twists != gdual.modules[0].twists:
        raise PreconditionError("dual complexes do not share the top module")
    alphas = [GradedMatrix.identity(setup, fdual.modules[0].twists)]
    lifts = {}
    for j in range(1, fdual.top_index + 1):
        target = alphas[j - 1].compose(fdual.differential(j))
        if j > gdual.top_index or gdual.modules[j].rank == 0:
            if not target.is_zero():
                raise LiftingError("no room to lift a nonzero comparison map")
            row_twists = gdual.modules[j].twists if j <= gdual.top_index else ()
            alphas.append(GradedMatrix(setup, row_twists,
                                       fdual.modules[j].twists, {}, check=False))
            continue
        gd = gdual.differential(j)
        if (j == 1 and gd.col_twists == fdual.differential(1).col_twists
                and gd.entries == fdual.differential(1).entries):
            alphas.append(GradedMatrix.identity(setup, fdual.modules[1].twists))
            continue
        lift = lifts.get(j)
        if lift is None:
            lift = _LiftGB(gd)
            lifts[j] = lift
        cols = target.columns()
        alpha_cols = []
        for k in range(fdual.modules[j].rank):
            alpha_cols.append(lift.solve(cols[k]))
        mat = GradedMatrix.from_columns(setup, gdual.modules[j].twists, alpha_cols,
                                        fdual.modules[j].twists)
        alphas.append(mat)
    return alphas


def top_dual_cokernel(complex_):
    """coker of the top dualized differential of a complex, as a presentation."""
    t = complex_.length()
    if t < 1:
        raise PreconditionError("complex of length zero has no top differential")
    setup = complex_.setup
    dual_twists = tuple(tuple(-x for x in tt) for tt in complex_.modules[t].twists)
    rel = complex_.differential(t).transpose_dual()
    amb = GradedFreeModule(setup, dual_twists)
    return ModulePresentation(setup, amb, rel)


def mapping_cone_shorten(complex_, module, verify=True):
    """Shorten a virtual resolution by one via the reduced mapping cone.

    Requires the cokernel E of the top dualized differential to be
    irrelevant and to admit a free resolution of length at most t+1.
    """
    setup = complex_.setup
    t = complex_.length()
    if t < 1:
        raise PreconditionError("nothing to shorten: complex has length 0")
    epres = top_dual_cokernel(complex_)
    if not epres.is_irrelevant():
        raise ObstructionError(
            "the top dual cokernel is not irrelevant; no shorter virtual "
            "resolution exists below the obstructed index", index=t)
    if pdim(epres) > t + 1:
        raise PreconditionError(
            "the top dual cokernel needs a free resolution of length > t+1")
    rel = complex_.differential(t).transpose_dual()
    R = _resolution_extending(setup, epres.ambient.twists, rel, t + 2)
    L = R.length()
    if L > t + 1:
        raise AssertionError("extending resolution overshot the length bound")
    fdual = complex_.dual()
    alphas_dual = lift_comparison_map(fdual, R)
    # paper-index data: G_j = R_{t-j}^*, alpha_j = dual of alphas_dual[t-j]
    p = setup.p

    def g_twists(j):
        k = t - j
        if 0 <= k <= R.top_index:
            return tuple(tuple(-x for x in tt) for tt in R.modules[k].twists)
        return ()

    def alpha(j):
        k = t - j
        if 0 <= k < len(alphas_dual):
            return alphas_dual[k].transpose_dual()
        return None

    def psi(j):
        # G_j -> G_{j-1} is the dual of R's differential R_{t-j+1} -> R_{t-j}
        k = t - j
        if 0 <= k < R.top_index:
            return R.differential(k + 1).transpose_dual()
        return None

    modules = []
    for i in range(t - 1):
        twists = tuple(complex_.modules[i].twists) + g_twists(i - 1)
        modules.append(GradedFreeModule(setup, twists))
    modules.append(GradedFreeModule(setup, g_twists(t - 2)))
    diffs = []
    for i in range(1, t):
        # C_i = F_i (+) G_{i-1} (the F part is absent at i = t-1);
        # blocks [[phi_i, alpha_{i-1}], [0, -psi_{i-1}]]
        rank_f_target = complex_.modules[i - 1].rank if i - 1 <= t - 2 else 0
        f_cols = complex_.modules[i].rank if i <= t - 2 else 0
        entries = {}
        if i <= t - 2:
            for (a, b), terms in complex_.differential(i).entries.items():
                entries[(a, b)] = dict(terms)
        am = alpha(i - 1)
        if am is not None:
            for (a, b), terms in am.entries.items():
                entries[(a, b + f_cols)] = dict(terms)
        pm = psi(i - 1)
        if pm is not None:
            for (a, b), terms in pm.entries.items():
                entries[(rank_f_target + a, b + f_cols)] = {
                    mo: (p - co) % p for mo, co in terms.items()}
        diffs.append(GradedMatrix(setup, modules[i - 1].twists, modules[i].twists,
                                  entries, check=False))
    cone = ChainComplex(setup, modules, diffs, check=True)
    out = minimize_complex(cone).trimmed()
    if out.length() > max(t - 1, 0):
        raise AssertionError("reduced cone failed to drop the length")
    if verify:
        report = is_virtual_resolution(out, module)
        if not report.ok:
            raise TheoremContradictionError(
                "minimized cone is not a virtual resolution: %r" % (report,))
    return out


# ---------------------------------------------------------------------------
# virtual resolution verification

@dataclass
class VirtualityReport:
    ok: bool
    complex_condition: bool
    homology_irrelevant: dict
    h0_match: bool
    h0_grade: str
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "ok": self.ok,
            "complex_condition": self.complex_condition,
            "homology_irrelevant": {str(k): v for k, v in
                                    sorted(self.homology_irrelevant.items())},
            "h0_match": self.h0_match,
            "h0_grade": self.h0_grade,
            "notes": list(self.notes),
        }


def _box_degrees(setup, complex_, module):
    m1 = 0
    for mod in complex_.modules:
        for tw in mod.twists:
            for x in tw:
                m1 = max(m1, abs(x))
    for tw in module.ambient.twists:
        for x in tw:
            m1 = max(m1, abs(x))
    g = 0
    for tw in module.relations.col_twists:
        for x in tw:
            g = max(g, abs(x))
    d = max(1, 2 * m1 + g)
    corners = []
    from itertools import product
    for combo in product((d, d + 1), repeat=setup.degree_rank):
        corners.append(tuple(combo))
    return corners


def is_virtual_resolution(complex_, module, check_exactness=True):
    """Certify the three defining conditions of a virtual resolution.

    (a) differentials compose to zero, (b) positive homology is irrelevant,
    (c) H_0 matches the module up to B-saturation: exactly, by saturated
    ideal equality, in the cyclic case; by saturated Hilbert functions on
    an all-positive degree box otherwise (recorded as grade hilbert-box).
    """
    setup = complex_.setup
    notes = []
    complex_ok = True
    for i in range(len(complex_.diffs) - 1):
        if not complex_.diffs[i].compose(complex_.diffs[i + 1]).is_zero():
            complex_ok = False
            notes.append("d%d o d%d != 0" % (i + 1, i + 2))
    homology = {}
    if complex_ok and check_exactness:
        t = complex_.length()
        for i in range(1, t + 1):
            di = complex_.differential(i)
            kernel = _kernel_cols(di)
            if not kernel:
                homology[i] = True
                continue
            if i + 1 <= t:
                image = complex_.differential(i + 1).columns()
            else:
                image = []
            gb = SubmoduleGB(image, setup) if image else None
            if gb is not None and all(gb.contains(dict(k)) for k in kernel):
                homology[i] = True
                continue
            if not image:
                homology[i] = all(not k for k in kernel)
                if not homology[i]:
                    notes.append("H_%d is a nonzero submodule of a free module" % i)
                continue
            sat = saturate_cols(image, complex_.modules[i].rank, setup)
            satgb = SubmoduleGB(sat, setup)
            homology[i] = all(satgb.contains(dict(k)) for k in kernel)
            if not homology[i]:
                notes.append("H_%d is not irrelevant" % i)
    hom_ok = all(homology.values()) if homology else True

    # H_0 comparison
    h0_grade = "hilbert-box"
    h0_ok = False
    c0 = complex_.modules[0]
    im_cols = complex_.differential(1).columns() if complex_.length() >= 1 else []
    if (c0.rank == 1 and module.is_cyclic()
            and c0.twists == module.ambient.twists):
        h0_grade = "exact-ideal"
        left = saturate_cols(im_cols, 1, setup)
        right = module.saturated_relation_cols()
        h0_ok = reduced_gb(left, setup) == reduced_gb(right, setup)
    else:
        sat_left = saturate_cols(im_cols, c0.rank, setup)
        sat_right = module.saturated_relation_cols()
        degrees = _box_degrees(setup, complex_, module)
        h0_ok = True
        for a in degrees:
            lhs = hilbert_function(setup, c0.twists, sat_left, a)
            rhs = hilbert_function(setup, module.ambient.twists, sat_right, a)
            if lhs != rhs:
                h0_ok = False
                notes.append("Hilbert mismatch at degree %r: %d vs %d" % (a, lhs, rhs))
                break
        notes.append("H0 compared on degrees %r" % (degrees,))
    ok = complex_ok and hom_ok and h0_ok
    return VirtualityReport(ok, complex_ok, homology, h0_ok, h0_grade, notes)


# ---------------------------------------------------------------------------
# virtually regular elements and quotients

@dataclass
class VirtualRegularityReport:
    ok: bool
    annihilator_irrelevant: bool
    annihilator_nonzero: bool
    dim_before: int
    dim_after: int
    dim_drop_ok: bool
    tor1_irrelevant: bool = None

    def to_json(self):
        return {
            "virtually_regular": self.ok,
            "annihilator_irrelevant": self.annihilator_irrelevant,
            "annihilator_nonzero": self.annihilator_nonzero,
            "dim_before": self.dim_before,
            "dim_after": self.dim_after,
            "dim_drop_ok": self.dim_drop_ok,
            "tor1_irrelevant": self.tor1_irrelevant,
        }


def is_virtually_regular(module, f, tor_check=True):
    """Annihilator irrelevance plus a dimension drop of exactly one.

    The Tor_1 route is computed as a cross-check when tor_check is set;
    Tor_1(M, S/f) and (0 :_M f) agree, so their irrelevance flags must too.
    """
    if isinstance(f, Polynomial):
        fterms = f.terms
    else:
        fterms = dict(f)
    if not fterms:
        raise DomainError("the zero element is never virtually regular")
    poly = Polynomial(module.setup, fterms)
    if not poly.is_homogeneous():
        raise DomainError("virtual regularity is defined for homogeneous elements")
    setup = module.setup
    ann_cols = module.quotient_elements(fterms)
    relgb = module.relation_gb()
    nonzero = any(not relgb.contains(dict(c)) for c in ann_cols)
    satgb = SubmoduleGB(module.saturated_relation_cols(), setup)
    irrelevant = all(satgb.contains(dict(c)) for c in ann_cols)
    dim_before = module.dim()
    quotient = module.mod_element(fterms)
    dim_after = quotient.dim()
    if dim_after is None:
        drop_ok = dim_before == 1 if dim_before is not None else False
        dim_after_val = -1
    else:
        drop_ok = dim_before == dim_after + 1
        dim_after_val = dim_after
    tor1 = None
    if tor_check:
        sf = ModulePresentation.cyclic(setup, [fterms])
        _, tor1 = tor_sheaf(module, sf, 1)
        if tor1 != irrelevant:
            raise TheoremContradictionError(
                "Tor_1 irrelevance disagrees with the annihilator route")
    return VirtualRegularityReport(irrelevant and drop_ok, irrelevant, nonzero,
                                   dim_before if dim_before is not None else -1,
                                   dim_after_val, drop_ok, tor1)


def is_virtually_regular_sequence(module, elements, tor_check=False):
    """Check each element on the successive quotients; returns per-step reports."""
    cur = module
    reports = []
    for f in elements:
        rep = is_virtually_regular(cur, f, tor_check=tor_check)
        reports.append(rep)
        if not rep.ok:
            return False, reports
        fterms = f.terms if isinstance(f, Polynomial) else dict(f)
        cur = cur.mod_element(fterms)
    return True, reports


def quotient_total_complex(complex_, f, module=None):
    """Total complex of C (x) [S(-deg f) --f--> S]; certifies M/fM when given M.

    When module is supplied and f is not virtually regular on it, the
    complex is still returned but carries an uncertified warning.
    """
    if isinstance(f, Polynomial):
        fterms = f.terms
    else:
        fterms = dict(f)
    if not fterms:
        raise DomainError("cannot quotient by zero")
    out = tensor_with_koszul_factor(complex_, fterms)
    if module is not None:
        rep = is_virtually_regular(module, fterms, tor_check=False)
        if not rep.ok:
            out.meta["warnings"] = ["element is not virtually regular; "
                                    "output complex is uncertified"]
    return out


# ---------------------------------------------------------------------------
# classification

CLASSIFICATIONS = ("aCM", "vCM", "gCM", "gCM-obstructed", "unknown")


@dataclass
class VirtualCertificate:
    classification: str
    codim: int
    pdim: int
    length: int
    virtually_cm: bool
    vdim_lower: int
    vdim_upper: int
    ext_profile: list
    characteristic: int
    complex: ChainComplex = None
    report: VirtualityReport = None
    unmixed: bool = None
    module_irrelevant: bool = False
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.classification not in CLASSIFICATIONS:
            raise InputError("unknown classification %r" % (self.classification,))
        if self.classification in ("aCM", "vCM"):
            if self.length != self.codim or self.report is None or not self.report.ok:
                raise InputError("vCM certificates require a verified complex "
                                 "of length equal to the codimension")

    def to_json(self):
        data = {
            "classification": self.classification,
            "codim": self.codim,
            "pdim": self.pdim,
            "length": self.length,
            "virtually_cm": self.virtually_cm,
            "vdim_lower": self.vdim_lower,
            "vdim_upper": self.vdim_upper,
            "ext_profile": list(self.ext_profile),
            "characteristic": self.characteristic,
            "unmixed": self.unmixed,
            "module_irrelevant": self.module_irrelevant,
            "notes": list(self.notes),
        }
        if self.report is not None:
            data["verification"] = self.report.to_json()
        if self.complex is not None:
            from .serialize import chain_complex_to_json
            data["complex"] = chain_complex_to_json(self.complex)
        return data


def _monomial_unmixed(module):
    """Virtual unmixedness of a cyclic monomial module, or None if not monomial."""
    if not module.is_cyclic():
        return None
    cols = module.relation_cols()
    if not all(len(c) == 1 for c in cols):
        return None
    from .monomial import associated_primes_of_monomial, saturate_monomial
    monos = [next(iter(c))[1] for c in cols]
    sat = saturate_monomial(monos, module.setup)
    if not sat:
        return True
    if any(sum(m) == 0 for m in sat):
        return True  # unit ideal: zero sheaf, vacuously unmixed
    primes = associated_primes_of_monomial(sat, module.setup)
    heights = {len(p) for p in primes}
    return len(heights) <= 1


def _nonsplit_certified(module):
    """Sound test that the saturated sheaf is not a sum of line bundles.

    Only for a single projective space: when H^1_B vanishes (top Ext is
    zero) the saturation equals the full module of sections, so freeness
    of the saturation decides splitting.
    """
    setup = module.setup
    if setup.r != 1:
        return None
    sat = module.saturate()
    sat_pdim = pdim(sat)
    if sat_pdim == 0:
        return False  # splits
    top = setup.nvars - 1
    ext_top, _ = ext_module(sat, top)
    if ext_top.ambient.rank and not ext_top.is_zero_module():
        return None  # sections functor may add generators; inconclusive
    return True


def classify(module, budget=8):
    """Full ladder: codim/pdim, Ext obstruction profile, iterated cones.

    Returns a certificate; when the budget runs out the classification is
    "unknown" with the partial vdim bounds recorded.
    """
    setup = module.setup
    if module.is_zero_module():
        raise InputError("classification requires a nonzero module")
    notes = []
    irrelevant = module.is_irrelevant()
    codim = module.codim()
    res = free_resolution(module)
    pd = res.length()
    profile = []
    for i in range(codim + 1, pd + 1):
        _, flag = ext_module(module, i, resolution=res)
        if not flag:
            profile.append(i)
    vdim_lower = max(codim, max(profile, default=0))
    unmixed = _monomial_unmixed(module)
    if unmixed is False:
        notes.append("saturated annihilator is mixed; not virtually CM")

    if pd == codim:
        report = is_virtual_resolution(res, module)
        if not report.ok:
            raise TheoremContradictionError("minimal free resolution failed "
                                            "its own verification")
        return VirtualCertificate("aCM", codim, pd, res.length(), True,
                                  codim, codim, profile, setup.p, res, report,
                                  unmixed, irrelevant, notes)

    if profile:
        notes.append("Ext obstruction at indices %r exceeds codim %d"
                     % (profile, codim))
        return VirtualCertificate("gCM-obstructed", codim, pd, pd, False,
                                  vdim_lower, pd, profile, setup.p, None, None,
                                  unmixed, irrelevant, notes)
    if unmixed is False:
        return VirtualCertificate("gCM-obstructed", codim, pd, pd, False,
                                  max(vdim_lower, codim + 1), pd, profile,
                                  setup.p, None, None, unmixed, irrelevant, notes)

    current = res
    steps = 0
    while current.length() > codim and steps < budget:
        try:
            current = mapping_cone_shorten(current, module)
        except ObstructionError as exc:
            notes.append("cone obstruction at length %d" % current.length())
            vdim_lower = max(vdim_lower, current.length())
            break
        except PreconditionError as exc:
            notes.append("cone precondition failed at length %d: %s"
                         % (current.length(), exc))
            break
        steps += 1
    vdim_upper = current.length()

    if current.length() == codim:
        report = is_virtual_resolution(current, module)
        if not report.ok:
            raise TheoremContradictionError("certified cone failed verification")
        return VirtualCertificate("vCM", codim, pd, codim, True, codim, codim,
                                  profile, setup.p, current, report, unmixed,
                                  irrelevant, notes)

    if codim == 0:
        nonsplit = _nonsplit_certified(module)
        if nonsplit is True:
            vdim_lower = max(vdim_lower, 1)
            notes.append("saturation is not free; sheaf does not split "
                         "into line bundles")
            classification = "gCM" if not profile else "gCM-obstructed"
            return VirtualCertificate(classification, codim, pd, vdim_upper,
                                      False, vdim_lower, vdim_upper, profile,
                                      setup.p, current, None, unmixed,
                                      irrelevant, notes)
    if vdim_lower > codim:
        classification = "gCM-obstructed" if profile else "gCM"
        return VirtualCertificate(classification, codim, pd, vdim_upper, False,
                                  vdim_lower, vdim_upper, profile, setup.p,
                                  current, None, unmixed, irrelevant, notes)
    return VirtualCertificate("unknown", codim, pd, vdim_upper, None,
                              vdim_lower, vdim_upper, profile, setup.p,
                              current, None, unmixed, irrelevant, notes)


def direct_sum_resolutions(complexes):
    return direct_sum(complexes)
