"""Combinatorial operations on monomial ideals (exponent-tuple lists).

These run without Groebner machinery and back the fast paths used by the
Stanley-Reisner pipeline: colon, intersection, B-saturation, irreducible
decomposition and associated primes.
"""

from .poly import mono_div, mono_divides, mono_gcd, mono_lcm


def minimalize(monos):
    out = []
    for m in sorted(set(monos), key=lambda x: (sum(x), x)):
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def colon_by_monomial(monos, m):
    return minimalize([mono_div(g, mono_gcd(g, m)) for g in monos])


def intersect_monomial(a, b):
    return minimalize([mono_lcm(x, y) for x in a for y in b])


def colon_by_ideal(monos, divisors):
    result = None
    for m in divisors:
        q = colon_by_monomial(monos, m)
        result = q if result is None else intersect_monomial(result, q)
    return result


def saturate_monomial(monos, setup):
    """(I : B^infinity) for the setup's irrelevant ideal, combinatorially."""
    cur = minimalize(monos)
    gens = list(setup.irrelevant_gens)
    while True:
        nxt = colon_by_ideal(cur, gens)
        if nxt == cur:
            return cur
        cur = nxt


def _is_irreducible(monos):
    return all(sum(1 for e in m if e) == 1 for m in monos)


def irreducible_decomposition(monos):
    """Irredundant irreducible components of a monomial ideal."""
    monos = minimalize(monos)
    if not monos:
        return []
    stack = [tuple(monos)]
    components = []
    while stack:
        gens = minimalize(stack.pop())
        target = next((m for m in gens if sum(1 for e in m if e) > 1), None)
        if target is None:
            components.append(tuple(sorted(gens)))
            continue
        v = next(i for i, e in enumerate(target) if e)
        u = tuple(target[i] if i == v else 0 for i in range(len(target)))
        w = tuple(0 if i == v else target[i] for i in range(len(target)))
        rest = [m for m in gens if m != target]
        stack.append(tuple(rest + [u]))
        stack.append(tuple(rest + [w]))
    # drop components containing another component
    uniq = []
    for c in sorted(set(components), key=len):
        cl = list(c)
        if not any(_contains(cl, list(o)) for o in uniq):
            uniq.append(c)
    # full irredundancy: drop c when the intersection of the others lies in c
    keep = list(uniq)
    changed = True
    while changed:
        changed = False
        for c in list(keep):
            others = [o for o in keep if o != c]
            if not others:
                continue
            inter = list(others[0])
            for o in others[1:]:
                inter = intersect_monomial(inter, list(o))
            if _contains(list(c), inter):
                keep.remove(c)
                changed = True
                break
    return keep


def _contains(big, small):
    """Ideal containment: every generator of small is divisible into big."""
    return all(any(mono_divides(g, m) for g in big) for m in small)


def associated_primes_of_monomial(monos, setup):
    """Supports of the irredundant irreducible components, as variable frozensets."""
    comps = irreducible_decomposition(monos)
    primes = set()
    for c in comps:
        primes.add(frozenset(next(i for i, e in enumerate(m) if e) for m in c))
    return sorted(primes, key=lambda s: (len(s), sorted(s)))
