"""Multigraded ring data for products of projective spaces.

The coordinate ring of P^{n_1} x ... x P^{n_r} has one block of n_i + 1
variables per factor, every variable of block i sitting in multidegree
e_i in Z^r.  A GradingSetup carries the block structure, the coefficient
characteristic, and the irrelevant ideal generators.  A general integer
degree matrix and a custom monomial irrelevant ideal may be supplied for
other toric gradings; only the product case is exercised by the tests.
"""

from itertools import product

DEFAULT_CHAR = 32003


def _is_probable_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GradingSetup:
    """Block sizes, degree map and irrelevant ideal of a graded polynomial ring."""

    def __init__(self, blocks, char=DEFAULT_CHAR, degree_matrix=None,
                 irrelevant_gens=None):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError("every block needs at least one variable")
        if not _is_probable_prime(char):
            raise ValueError("characteristic must be prime, got %r" % (char,))
        self.blocks = blocks
        self.r = len(blocks)
        self.p = char
        self.nvars = sum(blocks)
        offsets = []
        pos = 0
        for b in blocks:
            offsets.append(pos)
            pos += b
        self._offsets = tuple(offsets)
        block_of = []
        for i, b in enumerate(blocks):
            block_of.extend([i] * b)
        self.block_of = tuple(block_of)
        if degree_matrix is None:
            degree_matrix = tuple(
                tuple(1 if self.block_of[v] == i else 0 for v in range(self.nvars))
                for i in range(self.r)
            )
        else:
            degree_matrix = tuple(tuple(int(x) for x in row) for row in degree_matrix)
            if any(len(row) != self.nvars for row in degree_matrix):
                raise ValueError("degree matrix must have one column per variable")
        self.degree_matrix = degree_matrix
        self.degree_rank = len(degree_matrix)
        if irrelevant_gens is None:
            irrelevant_gens = self._product_irrelevant_gens()
        self.irrelevant_gens = tuple(irrelevant_gens)

    def _product_irrelevant_gens(self):
        # one variable per block, all products; Prod(n_i + 1) generators
        choices = [range(self._offsets[i], self._offsets[i] + self.blocks[i])
                   for i in range(self.r)]
        gens = []
        for combo in product(*choices):
            e = [0] * self.nvars
            for v in combo:
                e[v] += 1
            gens.append(tuple(e))
        return gens

    def var_index(self, block, j):
        """Global index of x_{block,j}; block is 1-based, j is 0-based."""
        if not (1 <= block <= self.r):
            raise ValueError("block %d out of range 1..%d" % (block, self.r))
        if not (0 <= j < self.blocks[block - 1]):
            raise ValueError("index %d out of range for block %d" % (j, block))
        return self._offsets[block - 1] + j

    def var_label(self, v):
        b = self.block_of[v]
        j = v - self._offsets[b]
        if self.r == 1:
            return "x%d" % j
        return "x_%d_%d" % (b + 1, j)

    def var_names(self):
        return [self.var_label(v) for v in range(self.nvars)]

    def multideg(self, mono):
        """Multidegree in Z^d of an exponent tuple."""
        return tuple(sum(row[v] * mono[v] for v in range(self.nvars) if mono[v])
                     for row in self.degree_matrix)

    def var_multideg(self, v):
        return tuple(row[v] for row in self.degree_matrix)

    def zero_deg(self):
        return (0,) * self.degree_rank

    def is_product_of_projective_spaces(self):
        expected = GradingSetup.__new__(GradingSetup)
        return (self.degree_rank == self.r
                and self.degree_matrix == tuple(
                    tuple(1 if self.block_of[v] == i else 0 for v in range(self.nvars))
                    for i in range(self.r)))

    def __eq__(self, other):
        return (isinstance(other, GradingSetup)
                and self.blocks == other.blocks and self.p == other.p
                and self.degree_matrix == other.degree_matrix
                and self.irrelevant_gens == other.irrelevant_gens)

    def __hash__(self):
        return hash((self.blocks, self.p, self.degree_matrix))

    def __repr__(self):
        return "GradingSetup(blocks=%r, char=%d)" % (list(self.blocks), self.p)

    def to_json(self):
        data = {"blocks": list(self.blocks), "char": self.p}
        return data

    @classmethod
    def from_json(cls, data):
        return cls(data["blocks"], char=data.get("char", DEFAULT_CHAR))
