"""Groebner machinery for submodules of graded free modules over GF(p).

A module element ("vec") is a dict mapping (component, exponent tuple) to
a nonzero coefficient mod p.  Ideals are the rank-1 case with component 0.
The order is grevlex on monomials, term over position for modules.

Syzygies of an arbitrary generating set O are assembled from a tracked
Buchberger run: with H = O*T the reduced basis, O = H*U the division of
the originals, and Z the s-pair syzygies of H, the columns of T*Z
together with those of (I - T*U) generate syz(O).
"""

import heapq
from itertools import combinations

from .poly import (grevlex_key, mono_deg, mono_div, mono_divides, mono_gcd,
                   mono_lcm, mono_mul, term_key)

_INV_CACHE = {}


def _inv(c, p):
    key = (c, p)
    v = _INV_CACHE.get(key)
    if v is None:
        v = pow(c, p - 2, p)
        if len(_INV_CACHE) > 1 << 16:
            _INV_CACHE.clear()
        _INV_CACHE[key] = v
    return v


# ---------------------------------------------------------------------------
# vec arithmetic

def vec_from_poly_terms(terms, comp=0):
    return {(comp, m): c for m, c in terms.items()}


def vec_scale(f, c, m, p):
    return {(comp, mono_mul(mo, m)): (co * c) % p for (comp, mo), co in f.items()}


def vec_iadd_scaled(f, g, c, m, p):
    for (comp, mo), co in g.items():
        k = (comp, mono_mul(mo, m))
        v = (f.get(k, 0) + c * co) % p
        if v:
            f[k] = v
        else:
            f.pop(k, None)


def vec_lead(f):
    return max(f, key=term_key)


def expr_iadd_scaled(expr, other, c, m, p):
    """expr_i += c * x^m * other_i for sparse columns over original generators."""
    for idx, poly in other.items():
        tgt = expr.get(idx)
        if tgt is None:
            tgt = expr[idx] = {}
        for mo, co in poly.items():
            k = mono_mul(mo, m)
            v = (tgt.get(k, 0) + c * co) % p
            if v:
                tgt[k] = v
            else:
                tgt.pop(k, None)
        if not tgt:
            del expr[idx]


# ---------------------------------------------------------------------------
# division and Buchberger

class _Elem:
    __slots__ = ("vec", "lt", "ltkey", "expr")

    def __init__(self, vec, expr=None):
        self.vec = vec
        self.lt = vec_lead(vec)
        self.ltkey = term_key(self.lt)
        self.expr = expr


def _find_reducer(term, elems):
    comp, mono = term
    for i, e in enumerate(elems):
        lc, lm = e.lt
        if lc == comp and mono_divides(lm, mono):
            return i
    return None


def normal_form(vec, elems, p, quotients=None, track=None):
    """Full normal form of vec against elems.

    quotients, if given, is a list (len(elems)) of monomial->coeff dicts
    accumulating vec = sum q_i * elems_i + nf.  track, if given, is an
    expr dict updated alongside (for syzygy bookkeeping).
    """
    work = dict(vec)
    nf = {}
    while work:
        t = max(work, key=term_key)
        i = _find_reducer(t, elems)
        if i is None:
            nf[t] = work.pop(t)
            continue
        e = elems[i]
        c = (work[t] * _inv(e.vec[e.lt], p)) % p
        m = mono_div(t[1], e.lt[1])
        vec_iadd_scaled(work, e.vec, p - c, m, p)
        if quotients is not None:
            q = quotients[i]
            q[m] = (q.get(m, 0) + c) % p
            if not q[m]:
                del q[m]
        if track is not None and e.expr is not None:
            expr_iadd_scaled(track, e.expr, p - c, m, p)
    return nf


def _spair_data(e1, e2):
    (c1, m1), (c2, m2) = e1.lt, e2.lt
    if c1 != c2:
        return None
    lcm = mono_lcm(m1, m2)
    return lcm, mono_div(lcm, m1), mono_div(lcm, m2)


def buchberger(cols, setup, track=False):
    """Reduced Groebner basis of the module generated by cols.

    Returns the list of basis elements; with track=True each element
    carries its expression over the original columns.
    """
    p = setup.p
    elems = []
    heap = []
    counter = 0

    def push_pairs(k):
        nonlocal counter
        for j in range(k):
            data = _spair_data(elems[j], elems[k])
            if data is None:
                continue
            lcm = data[0]
            heapq.heappush(heap, (mono_deg(lcm), counter, j, k, lcm))
            counter += 1

    for idx, col in enumerate(cols):
        if not col:
            continue
        expr = {idx: {(0,) * setup.nvars: 1}} if track else None
        vec = normal_form(col, elems, p, track=expr)
        if vec:
            elems.append(_Elem(vec, expr))
            push_pairs(len(elems) - 1)

    while heap:
        _, _, j, k, lcm = heapq.heappop(heap)
        e1, e2 = elems[j], elems[k]
        data = _spair_data(e1, e2)
        if data is None or data[0] != lcm:
            continue
        _, mj, mk = data
        cj = _inv(e1.vec[e1.lt], p)
        ck = _inv(e2.vec[e2.lt], p)
        s = vec_scale(e1.vec, cj, mj, p)
        vec_iadd_scaled(s, e2.vec, p - ck, mk, p)
        expr = None
        if track:
            expr = {}
            expr_iadd_scaled(expr, e1.expr, cj, mj, p)
            expr_iadd_scaled(expr, e2.expr, p - ck, mk, p)
        nf = normal_form(s, elems, p, track=expr)
        if nf:
            elems.append(_Elem(nf, expr))
            push_pairs(len(elems) - 1)

    return _interreduce(elems, setup, track)


def _interreduce(elems, setup, track):
    p = setup.p
    keep = []
    for i, e in enumerate(elems):
        lc, lm = e.lt
        redundant = False
        for j, f in enumerate(elems):
            if i == j:
                continue
            fc, fm = f.lt
            if fc == lc and mono_divides(fm, lm):
                if fm != lm or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(e)
    reduced = []
    for i, e in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        expr = dict((k, dict(v)) for k, v in e.expr.items()) if track else None
        nf = normal_form(e.vec, others, p, track=expr)
        c = _inv(nf[max(nf, key=term_key)], p)
        nf = vec_scale(nf, c, (0,) * setup.nvars, p)
        if track:
            expr = {k: {m: (co * c) % p for m, co in v.items()} for k, v in expr.items()}
        reduced.append(_Elem(nf, expr))
    reduced.sort(key=lambda e: e.ltkey)
    return reduced


_GB_CACHE = {}
_GB_CACHE_MAX = 4096


def _cols_key(cols, setup):
    return (setup.blocks, setup.p,
            tuple(tuple(sorted(col.items())) for col in cols))


def reduced_gb(cols, setup):
    """Cached reduced Groebner basis; returns a list of vecs."""
    key = _cols_key(cols, setup)
    hit = _GB_CACHE.get(key)
    if hit is None:
        if all(len(c) <= 1 for c in cols):
            hit = _monomial_reduced_gb(cols, setup)
        else:
            hit = [e.vec for e in buchberger(cols, setup)]
        if len(_GB_CACHE) > _GB_CACHE_MAX:
            _GB_CACHE.clear()
        _GB_CACHE[key] = hit
    return hit


def _monomial_reduced_gb(cols, setup):
    terms = sorted({col for c in cols if c for col in [next(iter(c))]},
                   key=term_key)
    keep = []
    for t in terms:
        if not any(k[0] == t[0] and mono_divides(k[1], t[1]) for k in keep):
            keep.append(t)
    return [{t: 1} for t in sorted(keep, key=term_key)]


class SubmoduleGB:
    """Reduced basis of a submodule with membership and normal forms."""

    def __init__(self, cols, setup):
        self.setup = setup
        self.vecs = reduced_gb(cols, setup)
        self._elems = [_Elem(v) for v in self.vecs]

    def normal_form(self, vec):
        return normal_form(vec, self._elems, self.setup.p)

    def contains(self, vec):
        return not self.normal_form(vec)

    def contains_cols(self, cols):
        return all(self.contains(c) for c in cols)

    def lead_terms(self):
        return [e.lt for e in self._elems]

    def division(self, vec):
        """Quotients q with vec = sum q_i * basis_i; raises if not a member."""
        quots = [dict() for _ in self._elems]
        nf = normal_form(vec, self._elems, self.setup.p, quotients=quots)
        if nf:
            raise ValueError("vector is not in the submodule")
        return quots


def same_submodule(cols_a, cols_b, setup):
    return reduced_gb(cols_a, setup) == reduced_gb(cols_b, setup)


# ---------------------------------------------------------------------------
# syzygies

def _monomial_syzygies(cols, setup):
    p = setup.p
    entries = []
    syz = []
    zero = (0,) * setup.nvars
    for i, col in enumerate(cols):
        if not col:
            syz.append({(i, zero): 1})
            entries.append(None)
        else:
            (comp, mono), coeff = next(iter(col.items()))
            entries.append((comp, mono, coeff))
    by_comp = {}
    for i, ent in enumerate(entries):
        if ent:
            by_comp.setdefault(ent[0], []).append(i)
    for comp, idxs in by_comp.items():
        for a, b in combinations(idxs, 2):
            _, ma, ca = entries[a]
            _, mb, cb = entries[b]
            lcm = mono_lcm(ma, mb)
            skip = False
            for k in idxs:
                if k in (a, b):
                    continue
                mk = entries[k][1]
                if (mono_divides(mk, lcm) and mono_lcm(ma, mk) != lcm
                        and mono_lcm(mk, mb) != lcm):
                    skip = True
                    break
            if skip:
                continue
            syz.append({(a, mono_div(lcm, ma)): _inv(ca, p),
                        (b, mono_div(lcm, mb)): p - _inv(cb, p)})
    return syz


def syzygy_columns(cols, setup):
    """Generators of the syzygy module of the given columns.

    The result lives in a free module with one component per input
    column; callers attach twists.
    """
    cols = [dict(c) for c in cols]
    if not cols:
        return []
    if all(len(c) <= 1 for c in cols):
        return _monomial_syzygies(cols, setup)
    p = setup.p
    basis = buchberger(cols, setup, track=True)
    elems = basis
    zero = (0,) * setup.nvars
    syz = []

    # (I - T*U) columns: originals re-expressed through the basis
    for idx, col in enumerate(cols):
        if not col:
            syz.append({(idx, zero): 1})
            continue
        quots = [dict() for _ in elems]
        nf = normal_form(dict(col), elems, p, quotients=quots)
        if nf:
            raise AssertionError("generator fails to reduce against own basis")
        col_syz = {(idx, zero): 1}
        for k, q in enumerate(quots):
            if not q:
                continue
            expr = elems[k].expr
            for oidx, poly in expr.items():
                for mq, cq in q.items():
                    for mo, co in poly.items():
                        key = (oidx, mono_mul(mq, mo))
                        v = (col_syz.get(key, 0) - cq * co) % p
                        if v:
                            col_syz[key] = v
                        else:
                            col_syz.pop(key, None)
        if col_syz:
            syz.append(col_syz)

    # T*Z columns from the s-pairs of the reduced basis
    for j, k in combinations(range(len(elems)), 2):
        e1, e2 = elems[j], elems[k]
        data = _spair_data(e1, e2)
        if data is None:
            continue
        _, mj, mk = data
        s = vec_scale(e1.vec, 1, mj, p)
        vec_iadd_scaled(s, e2.vec, p - 1, mk, p)
        track = {}
        expr_iadd_scaled(track, e1.expr, 1, mj, p)
        expr_iadd_scaled(track, e2.expr, p - 1, mk, p)
        nf = normal_form(s, elems, p, track=track)
        if nf:
            raise AssertionError("s-pair of a Groebner basis fails to reduce")
        col_syz = {(oidx, mo): co for oidx, poly in track.items()
                   for mo, co in poly.items()}
        if col_syz:
            syz.append(col_syz)

    return _dedupe_syzygies(syz, setup)


def _dedupe_syzygies(syz, setup):
    seen = set()
    out = []
    for col in sorted(syz, key=lambda c: (len(c), sorted(c))):
        key = tuple(sorted(col.items()))
        if key not in seen:
            seen.add(key)
            out.append(col)
    return out


def check_syzygies(cols, syz, setup):
    p = setup.p
    for s in syz:
        acc = {}
        for (idx, mo), co in s.items():
            vec_iadd_scaled(acc, cols[idx], co, mo, p)
        if acc:
            return False
    return True


# ---------------------------------------------------------------------------
# quotients, intersections, saturation

def _is_monomial_cols(cols):
    return all(len(c) == 1 for c in cols)


def _minimalize_monomial_cols(cols):
    terms = sorted((next(iter(c)) for c in cols), key=term_key)
    keep = []
    for t in terms:
        if not any(k[0] == t[0] and mono_divides(k[1], t[1]) for k in keep):
            keep.append(t)
    return [{t: 1} for t in keep]


def quotient_by_poly(cols, f_terms, rank, setup):
    """Columns generating (N : f) inside S^rank, N spanned by cols."""
    if _is_monomial_cols(cols) and len(f_terms) == 1:
        m = next(iter(f_terms))
        out = []
        for c in cols:
            (comp, mono), _ = next(iter(c.items()))
            g = mono_div(mono, mono_gcd(mono, m))
            out.append({(comp, g): 1})
        return _minimalize_monomial_cols(out)
    big = []
    for k in range(rank):
        big.append({(k, m): c for m, c in f_terms.items()})
    big.extend(cols)
    syz = syzygy_columns(big, setup)
    out = []
    for s in syz:
        v = {}
        for (idx, mo), co in s.items():
            if idx < rank:
                key = (idx, mo)
                u = (v.get(key, 0) + co) % setup.p
                if u:
                    v[key] = u
                else:
                    v.pop(key, None)
        if v:
            out.append(v)
    return reduced_gb(out, setup)


def intersect_submodules(cols_a, cols_b, rank, setup):
    if _is_monomial_cols(cols_a) and _is_monomial_cols(cols_b):
        out = []
        for ca in cols_a:
            (compa, ma), _ = next(iter(ca.items()))
            for cb in cols_b:
                (compb, mb), _ = next(iter(cb.items()))
                if compa == compb:
                    out.append({(compa, mono_lcm(ma, mb)): 1})
        return _minimalize_monomial_cols(out)
    big = []
    for k in range(rank):
        zero = (0,) * setup.nvars
        big.append({(k, zero): 1, (k + rank, zero): 1})
    for c in cols_a:
        big.append(dict(c))
    for c in cols_b:
        big.append({(comp + rank, mo): co for (comp, mo), co in c.items()})
    syz = syzygy_columns(big, setup)
    out = []
    for s in syz:
        v = {}
        for (idx, mo), co in s.items():
            if idx < rank:
                key = (idx, mo)
                u = (v.get(key, 0) + co) % setup.p
                if u:
                    v[key] = u
                else:
                    v.pop(key, None)
        if v:
            out.append(v)
    return reduced_gb(out, setup)


def quotient_by_ideal(cols, ideal_terms, rank, setup):
    """(N : J) computed per generator of J and intersected."""
    result = None
    for f in ideal_terms:
        q = quotient_by_poly(cols, f, rank, setup)
        result = q if result is None else intersect_submodules(result, q, rank, setup)
    if result is None:
        raise ValueError("quotient by the empty ideal")
    return reduced_gb(result, setup)


def saturate_cols(cols, rank, setup, ideal_terms=None):
    """(N : B^infinity): iterate colon by B until the reduced basis stabilizes."""
    if ideal_terms is None:
        ideal_terms = [{m: 1} for m in setup.irrelevant_gens]
    cur = reduced_gb(cols, setup)
    while True:
        nxt = quotient_by_ideal(cur, ideal_terms, rank, setup)
        if nxt == cur:
            return cur
        cur = nxt


def annihilator_of_cokernel(cols, rank, setup):
    """Ann of F/N as ideal columns: the intersection over k of (N : e_k)."""
    if rank == 0:
        return [{(0, (0,) * setup.nvars): 1}]
    result = None
    zero = (0,) * setup.nvars
    for k in range(rank):
        big = [{(k, zero): 1}] + [dict(c) for c in cols]
        syz = syzygy_columns(big, setup)
        q = []
        for s in syz:
            v = {}
            for (idx, mo), co in s.items():
                if idx == 0:
                    u = (v.get((0, mo), 0) + co) % setup.p
                    if u:
                        v[(0, mo)] = u
                    else:
                        v.pop((0, mo), None)
            if v:
                q.append(v)
        q = reduced_gb(q, setup)
        result = q if result is None else intersect_submodules(result, q, 1, setup)
    return reduced_gb(result, setup)


# ---------------------------------------------------------------------------
# dimension

def _min_hitting_set(supports, nvars):
    supports = [frozenset(s) for s in supports]
    if any(not s for s in supports):
        return None  # unit ideal
    keep = []
    for s in sorted(supports, key=len):
        if not any(t <= s for t in keep):
            keep.append(s)
    if not keep:
        return 0
    best = [len(set().union(*keep))]

    def dfs(idx, chosen):
        if len(chosen) >= best[0]:
            return
        while idx < len(keep) and keep[idx] & chosen:
            idx += 1
        if idx == len(keep):
            best[0] = len(chosen)
            return
        for v in sorted(keep[idx]):
            dfs(idx + 1, chosen | {v})

    dfs(0, frozenset())
    return best[0]


def dim_of_monomial_ideal(monos, setup):
    """Krull dimension of S modulo a monomial ideal; None for the unit ideal."""
    supports = [frozenset(v for v, e in enumerate(m) if e) for m in monos]
    h = _min_hitting_set(supports, setup.nvars)
    if h is None:
        return None
    return setup.nvars - h


def dim_of_ideal_cols(cols, setup):
    """Krull dimension of S/I via the initial ideal of a reduced basis."""
    basis = reduced_gb(cols, setup)
    lead = [vec_lead(v)[1] for v in basis]
    return dim_of_monomial_ideal(lead, setup)
