"""JSON formats for complexes, matrices, chain complexes and reports.

Writers are canonical (sorted keys, fixed ordering, normalized coefficient
strings) so serialized forms round-trip bit-exactly and reports are
byte-identical across runs.
"""

import json
import re

from .errors import InputError
from .freemod import GradedFreeModule, GradedMatrix, ModulePresentation
from .gradings import GradingSetup
from .poly import Polynomial, format_poly, parse_poly
from .simplicial import ColoredComplex

_VERTEX_STR = re.compile(r"^x_(\d+)_(\d+)$|^x(\d+)$")


def canonical_json(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# -- colored complexes -------------------------------------------------------

def _vertex_from_json(v):
    if isinstance(v, str):
        m = _VERTEX_STR.match(v)
        if not m:
            raise InputError("bad vertex string %r" % v)
        if m.group(1) is not None:
            return (int(m.group(1)), int(m.group(2)))
        return (1, int(m.group(3)))
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return (int(v[0]), int(v[1]))
    raise InputError("bad vertex %r" % (v,))


def complex_to_json(cc):
    facets = []
    for f in sorted(cc.facets):
        verts = [list(cc.vertex_label(v)) for v in _bits_of(f)]
        facets.append(sorted(verts))
    return {"blocks": list(cc.blocks), "facets": sorted(facets)}


def _bits_of(mask):
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def complex_from_json(data):
    blocks = data["blocks"]
    facets = [[_vertex_from_json(v) for v in facet] for facet in data["facets"]]
    return ColoredComplex(blocks, facets)


# -- polynomials and matrices ------------------------------------------------

def matrix_to_json(matrix):
    entries = []
    for i in range(matrix.nrows):
        row = []
        for j in range(matrix.ncols):
            row.append(format_poly(matrix.entry(i, j)))
        entries.append(row)
    return {
        "row_twists": [list(t) for t in matrix.row_twists],
        "col_twists": [list(t) for t in matrix.col_twists],
        "entries": entries,
    }


def matrix_from_json(setup, data):
    rows = [tuple(t) for t in data["row_twists"]]
    cols = [tuple(t) for t in data["col_twists"]]
    entries = {}
    for i, row in enumerate(data["entries"]):
        for j, text in enumerate(row):
            poly = parse_poly(setup, text)
            if poly.terms:
                entries[(i, j)] = poly.terms
    return GradedMatrix(setup, rows, cols, entries)


def chain_complex_to_json(complex_):
    return {
        "twists": [[list(t) for t in m.twists] for m in complex_.modules],
        "differentials": [matrix_to_json(d) for d in complex_.diffs],
    }


def chain_complex_from_json(setup, data):
    from .complexes import ChainComplex
    modules = [GradedFreeModule(setup, [tuple(t) for t in twists])
               for twists in data["twists"]]
    diffs = [matrix_from_json(setup, d) for d in data["differentials"]]
    return ChainComplex(setup, modules, diffs)


def module_to_json(module):
    return {
        "ambient_twists": [list(t) for t in module.ambient.twists],
        "relations": matrix_to_json(module.relations),
    }


def module_from_json(setup, data):
    amb = GradedFreeModule(setup, [tuple(t) for t in data["ambient_twists"]])
    rel = matrix_from_json(setup, data["relations"])
    return ModulePresentation(setup, amb, rel)


def ideal_to_json(setup, gens):
    out = []
    for g in gens:
        if not isinstance(g, Polynomial):
            g = Polynomial(setup, g)
        out.append(format_poly(g))
    return out


def ideal_from_json(setup, data):
    return [parse_poly(setup, s) for s in data]


# -- input envelopes for the CLI ----------------------------------------------

def setup_from_json(data, char=None):
    blocks = data["blocks"]
    p = char if char is not None else data.get("char", 32003)
    return GradingSetup(blocks, char=p)


def load_envelope(data, char=None):
    """Parse {"ring": ..., and one of complex/ideal/module/chain_complex}."""
    if "ring" in data:
        setup = setup_from_json(data["ring"], char=char)
    elif "blocks" in data:
        setup = setup_from_json(data, char=char)
    else:
        raise InputError("input needs a 'ring' block or top-level 'blocks'")
    payload = {}
    if "facets" in data:
        payload["complex"] = complex_from_json(data)
    if "complex" in data:
        payload["complex"] = complex_from_json(data["complex"])
    if "ideal" in data:
        payload["ideal"] = ideal_from_json(setup, data["ideal"])
    if "module" in data:
        payload["module"] = module_from_json(setup, data["module"])
    if "chain_complex" in data:
        payload["chain_complex"] = chain_complex_from_json(setup, data["chain_complex"])
    return setup, payload
