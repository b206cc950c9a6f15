"""Sparse multivariate polynomials over a prime field.

Monomials are exponent tuples; a polynomial is a dict mapping exponent
tuples to nonzero coefficients in GF(p).  The term order everywhere is
graded reverse lexicographic with block-major variable order (x_1_0 >
x_1_1 > ... > x_2_0 > ...).  Free-module terms are ordered term over
position, lower component winning ties.
"""

import re


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def grevlex_key(mono):
    # bigger key = bigger monomial; ties in total degree break on the
    # rightmost differing exponent, smaller exponent winning
    return (sum(mono), tuple(-e for e in reversed(mono)))


def term_key(term):
    """Sort key for a module term (component, monomial), term over position."""
    comp, mono = term
    return (grevlex_key(mono), -comp)


class Polynomial:
    """Immutable-by-convention sparse polynomial attached to a GradingSetup."""

    __slots__ = ("setup", "terms")

    def __init__(self, setup, terms=None):
        self.setup = setup
        clean = {}
        if terms:
            p = setup.p
            for m, c in terms.items():
                c %= p
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def zero(cls, setup):
        return cls(setup, {})

    @classmethod
    def one(cls, setup):
        return cls(setup, {(0,) * setup.nvars: 1})

    @classmethod
    def constant(cls, setup, c):
        return cls(setup, {(0,) * setup.nvars: c})

    @classmethod
    def variable(cls, setup, block, j):
        e = [0] * setup.nvars
        e[setup.var_index(block, j)] = 1
        return cls(setup, {tuple(e): 1})

    @classmethod
    def monomial(cls, setup, mono, coeff=1):
        return cls(setup, {tuple(mono): coeff})

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        p = self.setup.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = (terms.get(m, 0) + c) % p
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Polynomial(self.setup, terms)

    def __neg__(self):
        p = self.setup.p
        return Polynomial(self.setup, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.setup, {m: c * other for m, c in self.terms.items()})
        p = self.setup.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.setup, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Polynomial.one(self.setup)
        for _ in range(n):
            out = out * self
        return out

    def lead_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        return max(self.terms, key=grevlex_key)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def multidegree(self):
        """Common multidegree of all terms, or None if inhomogeneous/zero."""
        degs = {self.setup.multideg(m) for m in self.terms}
        if len(degs) == 1:
            return next(iter(degs))
        return None

    def is_homogeneous(self):
        return len({self.setup.multideg(m) for m in self.terms}) <= 1

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Polynomial(%s)" % format_poly(self)


def format_mono(setup, mono):
    parts = []
    for v, e in enumerate(mono):
        if e == 1:
            parts.append(setup.var_label(v))
        elif e > 1:
            parts.append("%s^%d" % (setup.var_label(v), e))
    return "*".join(parts)


def format_poly(poly):
    """Canonical text form: terms descending in grevlex, coefficients in 1..p-1."""
    if not poly.terms:
        return "0"
    parts = []
    for m in sorted(poly.terms, key=grevlex_key, reverse=True):
        c = poly.terms[m]
        body = format_mono(poly.setup, m)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append("%d*%s" % (c, body))
    return "+".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x_\d+_\d+|x\d+|[A-Za-z]\w*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


class PolyParseError(ValueError):
    pass


def _var_table(setup):
    table = {}
    for v in range(setup.nvars):
        b = setup.block_of[v] + 1
        j = v - setup._offsets[b - 1]
        table["x_%d_%d" % (b, j)] = v
        if setup.r == 1:
            table["x%d" % j] = v
    return table


def parse_poly(setup, text):
    """Parse +, -, *, ^ expressions over x_{i}_{j} (or x0..xd when r = 1)."""
    table = _var_table(setup)
    pos = 0
    n = len(text)

    def tokens():
        nonlocal pos
        while pos < n:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise PolyParseError("bad token at %r" % text[pos:pos + 10])
                return
            pos = m.end()
            yield m

    toks = list(tokens())
    idx = 0

    def peek():
        return toks[idx] if idx < len(toks) else None

    def take():
        nonlocal idx
        t = toks[idx]
        idx += 1
        return t

    def parse_atom():
        t = peek()
        if t is None:
            raise PolyParseError("unexpected end of input")
        if t.group(7):  # (
            take()
            e = parse_sum()
            t2 = peek()
            if t2 is None or not t2.group(8):
                raise PolyParseError("missing closing parenthesis")
            take()
            return e
        if t.group(1):
            take()
            return Polynomial.constant(setup, int(t.group(1)))
        if t.group(2):
            take()
            name = t.group(2)
            if name not in table:
                raise PolyParseError("unknown variable %r" % name)
            e = [0] * setup.nvars
            e[table[name]] = 1
            return Polynomial(setup, {tuple(e): 1})
        raise PolyParseError("unexpected token %r" % t.group(0))

    def parse_power():
        base = parse_atom()
        t = peek()
        if t is not None and t.group(3):
            take()
            t2 = peek()
            if t2 is None or not t2.group(1):
                raise PolyParseError("exponent must be an integer")
            take()
            return base ** int(t2.group(1))
        return base

    def parse_product():
        out = parse_power()
        while True:
            t = peek()
            if t is not None and t.group(4):
                take()
                out = out * parse_power()
            elif t is not None and (t.group(2) or t.group(1) or t.group(7)):
                # juxtaposition, e.g. "3x0" or "x0x1"
                out = out * parse_power()
            else:
                return out

    def parse_sum():
        t = peek()
        negate = False
        if t is not None and t.group(6):
            take()
            negate = True
        out = parse_product()
        if negate:
            out = -out
        while True:
            t = peek()
            if t is None or t.group(8):
                return out
            if t.group(5):
                take()
                out = out + parse_product()
            elif t.group(6):
                take()
                out = out - parse_product()
            else:
                raise PolyParseError("expected + or - at %r" % t.group(0))

    result = parse_sum()
    if idx != len(toks):
        raise PolyParseError("trailing input at %r" % toks[idx].group(0))
    return result
