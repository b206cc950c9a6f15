"""Multigraded Hilbert function counting for product gradings.

Counts are exact and combinatorial: the Hilbert function of a quotient by
a submodule equals that of the quotient by its lead-term module, and for
monomial ideals the short exact sequence

    0 -> (S/(I:x))(-deg x) -> S/I -> S/(I+x) -> 0

reduces counting to binomial coefficients.
"""

from math import comb

from .errors import InputError
from .groebner import reduced_gb, vec_lead
from .poly import mono_div, mono_gcd, mono_divides

_MEMO = {}
_MEMO_MAX = 1 << 18


def count_monomials(setup, a, excluded=frozenset()):
    """Number of monomials of multidegree a, optionally avoiding some variables."""
    if not setup.is_product_of_projective_spaces():
        raise InputError("Hilbert counting requires a product-of-projective-spaces grading")
    if any(x < 0 for x in a):
        return 0
    total = 1
    for i in range(setup.r):
        k = setup.blocks[i] - sum(1 for v in excluded if setup.block_of[v] == i)
        ai = a[i]
        if k == 0:
            if ai:
                return 0
            continue
        total *= comb(ai + k - 1, k - 1)
    return total


def _minimalize(monos):
    out = []
    for m in sorted(monos, key=sum):
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return tuple(sorted(out))


def count_std_monomials(setup, monos, a):
    """Monomials of multidegree a outside the monomial ideal generated by monos."""
    monos = _minimalize(monos)
    return _count_std(setup, monos, tuple(a))


def _count_std(setup, monos, a):
    if any(x < 0 for x in a):
        return 0
    if not monos:
        return count_monomials(setup, a)
    if any(sum(m) == 0 for m in monos):
        return 0
    if all(sum(m) == 1 for m in monos):
        used = frozenset(next(v for v, e in enumerate(m) if e) for m in monos)
        return count_monomials(setup, a, used)
    key = (setup.blocks, monos, a)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    pivot_gen = max((m for m in monos if sum(m) >= 2), key=sum)
    x = max((v for v, e in enumerate(pivot_gen) if e),
            key=lambda v: sum(1 for m in monos if m[v]))
    xvec = tuple(1 if v == x else 0 for v in range(setup.nvars))
    plus = _minimalize([m for m in monos if not m[x]] + [xvec])
    colon = _minimalize([mono_div(m, mono_gcd(m, xvec)) for m in monos])
    val = (_count_std(setup, plus, a)
           + _count_std(setup, colon,
                        tuple(x1 - x2 for x1, x2 in zip(a, setup.var_multideg(x)))))
    if len(_MEMO) > _MEMO_MAX:
        _MEMO.clear()
    _MEMO[key] = val
    return val


def hilbert_function(setup, ambient_twists, cols, a):
    """dim_k of (F / N)_a for N spanned by cols inside F with the given twists."""
    basis = reduced_gb(cols, setup)
    by_comp = {}
    for v in basis:
        comp, mono = vec_lead(v)
        by_comp.setdefault(comp, []).append(mono)
    total = 0
    for k, twist in enumerate(ambient_twists):
        shifted = tuple(x - y for x, y in zip(a, twist))
        total += count_std_monomials(setup, by_comp.get(k, ()), shifted)
    return total


def hilbert_box(setup, ambient_twists, cols, degrees):
    return {tuple(a): hilbert_function(setup, ambient_twists, cols, a)
            for a in degrees}
