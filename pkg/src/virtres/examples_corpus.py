"""Scripted golden-example scenarios for the CLI workbench.

Each scenario builds its objects from scratch, runs the relevant engine
operations, and returns a canonical JSON-able report.  run_example
byte-compares the canonical serialization against the stored golden file.
"""

import difflib
import importlib.resources as resources

from .complexes import minimize_complex
from .errors import InputError, ObstructionError
from .freemod import GradedFreeModule, GradedMatrix, ModulePresentation
from .gradings import GradingSetup
from .homology import hochster_betti, reduced_homology, reisner_is_cm
from .pipeline import vcm_certify_sr
from .poly import Polynomial, format_poly, parse_poly
from .resolution import (classify, ext_module, free_resolution,
                         is_virtual_resolution, is_virtually_regular,
                         is_virtually_regular_sequence, mapping_cone_shorten)
from .serialize import canonical_json, complex_to_json, ideal_to_json
from .simplicial import (ColoredComplex, augment_with_br, build_br,
                         stanley_reisner_exponents)
from .groebner import reduced_gb

EXAMPLE_NAMES = ("ex2_8", "ex2_9", "ex3_2", "ex3_3_matrices", "ex3_5",
                 "ex3_7", "ex4_4", "ex5_3", "lemma2_2_profiles")


def disjoint_edges_complex():
    return ColoredComplex([4], [[(1, 0), (1, 1)], [(1, 2), (1, 3)]])


def cylinder_complex():
    return ColoredComplex([3, 3], [
        [(1, 0), (2, 1), (1, 1)], [(2, 1), (2, 0), (1, 0)],
        [(1, 0), (2, 0), (1, 2)], [(2, 2), (2, 0), (1, 2)],
        [(1, 1), (1, 2), (2, 2)], [(1, 1), (2, 1), (2, 2)]])


def disjoint_lines_module(setup):
    gens = [parse_poly(setup, s) for s in ("x0*x2", "x0*x3", "x1*x2", "x1*x3")]
    return ModulePresentation.cyclic(setup, gens)


def tangent_module(setup):
    n = setup.nvars
    amb = GradedFreeModule(setup, [setup.zero_deg()] * n)
    col = {(k, tuple(1 if i == k else 0 for i in range(n))): 1 for k in range(n)}
    rel = GradedMatrix.from_columns(setup, amb.twists, [col])
    return ModulePresentation(setup, amb, rel)


def two_planes_module(setup):
    gens = [parse_poly(setup, "x%d*x%d" % (i, j))
            for i in range(3) for j in range(3, 6)]
    return ModulePresentation.cyclic(setup, gens)


def hyperelliptic_matrices(char=32003):
    """The displayed pair of differentials for the bidegree (2,8) curve.

    Block 1 is P^1 (x0, x1), block 2 is P^2 (y0, y1, y2).  Twist lists are
    as displayed; the published degree-0 twist list has rank 5 against a
    4-row matrix, so the row twists used here are the ones the matrix
    entries force.
    """
    setup = GradingSetup([2, 3], char=char)

    def q(text):
        return parse_poly(setup, text)

    x0, x1 = "x_1_0", "x_1_1"
    y0, y1, y2 = "x_2_0", "x_2_1", "x_2_2"
    d1_rows = [
        ["0", "-%s*%s-%s*%s" % (x1, y0, x1, y1), "%s*%s^2" % (x0, y0),
         "%s^2*%s" % (y1, y2), "-%s*%s^2-%s*%s^2" % (x1, y1, x0, y2),
         "%s*%s^2+%s*%s^2" % (y0, y2, y1, y2), "%s*%s" % (x0, y2),
         "%s^3+%s^2*%s" % (y0, y0, y1), "0"],
        ["-%s" % x1, "-%s" % x0, "0", "%s^2" % y0, "0", "-%s^2" % y1,
         "0", "-%s^2" % y2, "0"],
        ["0", "0", "-%s" % x1, "0", "-%s" % x0, "%s+%s" % (y0, y1),
         "0", "0", "-%s" % y2],
        ["%s" % x0, "0", "0", "%s^2" % y2, "0", "0", "-%s" % x1,
         "-%s^2" % y1, "%s^2" % y0],
    ]
    d2_rows = [
        ["-%s^2" % y1, "0", "%s^2" % y0, "-%s^2" % y2, "0"],
        ["%s^2" % y2, "0", "0", "%s^2" % y0, "-%s^2" % y1],
        ["%s+%s" % (y0, y1), "-%s" % y2, "0", "0", "0"],
        ["0", "0", "%s" % x1, "%s" % x0, "0"],
        ["0", "0", "%s" % y2, "0", "%s+%s" % (y0, y1)],
        ["%s" % x1, "0", "0", "0", "%s" % x0],
        ["0", "%s^2" % y0, "%s^2" % y2, "-%s^2" % y1, "0"],
        ["-%s" % x0, "0", "0", "%s" % x1, "0"],
        ["0", "%s" % x1, "-%s" % x0, "0", "0"],
    ]
    f0_listed = [(0, 0), (0, 1), (0, 1), (0, 2), (0, 2)]
    f0_rows = [(0, 0), (0, 1), (0, 2), (0, 1)]
    f1 = [(1, 1), (1, 1), (1, 2), (0, 3), (1, 2), (0, 3), (1, 1),
          (0, 3), (0, 3)]
    f2 = [(1, 3)] * 5

    def build(rows, row_twists, col_twists):
        entries = {}
        for i, row in enumerate(rows):
            for j, text in enumerate(row):
                poly = q(text)
                if poly.terms:
                    entries[(i, j)] = poly.terms
        return GradedMatrix(setup, row_twists, col_twists, entries)

    d1 = build(d1_rows, f0_rows, f1)
    d2 = build(d2_rows, f1, f2)
    return setup, d1, d2, f0_listed, f0_rows


def _ranks_and_twists(complex_):
    return {
        "ranks": complex_.ranks(),
        "twists": [[list(t) for t in m.twists] for m in complex_.modules],
    }


def _build_ex2_8(char):
    setup = GradingSetup([4], char=char)
    cc = disjoint_edges_complex()
    sr = [Polynomial(setup, {e: 1}) for e in stanley_reisner_exponents(cc)]
    report = vcm_certify_sr(cc, char=char)
    mod = disjoint_lines_module(setup)
    res = free_resolution(mod)
    return {
        "name": "ex2_8",
        "characteristic": char,
        "stanley_reisner_ideal": ideal_to_json(setup, sr),
        "free_resolution": _ranks_and_twists(res),
        "pipeline": report.to_json(),
    }


def _build_ex2_9(char):
    setup = GradingSetup([3, 3], char=char)
    cyl = cylinder_complex()
    sr = [Polynomial(setup, {e: 1}) for e in stanley_reisner_exponents(cyl)]
    ok, witness = reisner_is_cm(cyl, char)
    aug = augment_with_br(cyl, 2)
    sr_aug = [Polynomial(setup, {e: 1}) for e in stanley_reisner_exponents(aug)]
    ok_aug, _ = reisner_is_cm(aug, char)
    m = ModulePresentation.cyclic(setup, sr)
    mj = ModulePresentation.cyclic(setup, sr_aug)
    sats_equal = (reduced_gb(m.saturated_relation_cols(), setup)
                  == reduced_gb(mj.saturated_relation_cols(), setup))
    report = vcm_certify_sr(cyl, char=char)
    return {
        "name": "ex2_9",
        "characteristic": char,
        "stanley_reisner_ideal": ideal_to_json(setup, sr),
        "reisner": {"ok": ok,
                    "witness_degree": witness[1] if witness else None,
                    "witness_face": ([list(v) for v in
                                      cyl.face_from_mask(witness[0]).vertices]
                                     if witness else None)},
        "augmented_ideal": ideal_to_json(setup, sr_aug),
        "reisner_augmented": ok_aug,
        "saturations_agree": sats_equal,
        "homology": reduced_homology(cyl, char).as_list(),
        "pipeline": report.to_json(),
    }


def _build_ex3_2(char):
    setup = GradingSetup([4], char=char)
    mod = disjoint_lines_module(setup)
    res = free_resolution(mod)
    ext3, irr = ext_module(mod, 3)
    cone = mapping_cone_shorten(res, mod)
    verification = is_virtual_resolution(cone, mod)
    cert = classify(mod)
    return {
        "name": "ex3_2",
        "characteristic": char,
        "free_resolution": _ranks_and_twists(res),
        "ext3": {"ambient_twists": [list(t) for t in ext3.ambient.twists],
                 "irrelevant": irr},
        "cone": _ranks_and_twists(cone),
        "verification": verification.to_json(),
        "classification": cert.classification,
        "codim": cert.codim,
    }


def _build_ex3_3(char):
    setup, d1, d2, f0_listed, f0_rows = hyperelliptic_matrices(char)
    product = d1.compose(d2)
    return {
        "name": "ex3_3_matrices",
        "characteristic": char,
        "d1_shape": [d1.nrows, d1.ncols],
        "d2_shape": [d2.nrows, d2.ncols],
        "d1_d2_zero": product.is_zero(),
        "homogeneous": True,
        "listed_degree0_twists": [list(t) for t in f0_listed],
        "matrix_row_twists": [list(t) for t in f0_rows],
        "twist_list_discrepancy": ("published degree-0 summand list has rank "
                                   "%d but the matrix has %d rows"
                                   % (len(f0_listed), len(f0_rows))),
    }


def _build_ex3_5(char):
    setup = GradingSetup([6], char=char)
    mod = two_planes_module(setup)
    cert = classify(mod)
    seq = [parse_poly(setup, s) for s in ("x2-x5", "x1-x4", "x0-x3")]
    steps = []
    cur = mod
    for f in seq:
        rep = is_virtually_regular(cur, f)
        steps.append({"element": format_poly(f), "report": rep.to_json()})
        cur = cur.mod_element(f.terms)
    return {
        "name": "ex3_5",
        "characteristic": char,
        "classification": cert.classification,
        "codim": cert.codim,
        "certificate_ranks": cert.complex.ranks(),
        "sequence": steps,
        "final_quotient_irrelevant": cur.is_irrelevant(),
    }


def _build_ex3_7(char):
    setup = GradingSetup([3], char=char)
    mod = ModulePresentation.cyclic(
        setup, [parse_poly(setup, "x0^2"), parse_poly(setup, "x0*x1")])
    cert = classify(mod)
    x2 = parse_poly(setup, "x2")
    rep = is_virtually_regular(mod, x2)
    quot = mod.mod_element(x2.terms)
    sat_gens = sorted(format_poly(Polynomial(setup,
                                             {m: c for (_, m), c in col.items()}))
                      for col in quot.saturated_relation_cols())
    bad_order = [parse_poly(setup, s) for s in ("x0", "x1", "x2")]
    good_order = [parse_poly(setup, s) for s in ("x2", "x1", "x0")]
    seq_bad, _ = is_virtually_regular_sequence(mod, bad_order)
    seq_good, _ = is_virtually_regular_sequence(mod, good_order)
    return {
        "name": "ex3_7",
        "characteristic": char,
        "classification": cert.classification,
        "codim": cert.codim,
        "vdim_lower": cert.vdim_lower,
        "virtually_cm": cert.virtually_cm,
        "x2_virtually_regular": rep.ok,
        "quotient_saturation": sat_gens,
        "sequence_x2_x1_x0": seq_good,
        "sequence_x0_x1_x2": seq_bad,
    }


def _build_ex4_4(char):
    setup = GradingSetup([5], char=char)
    gens = [parse_poly(setup, s) for s in ("x0*x2", "x0*x3", "x1*x2", "x1*x3")]
    mod = ModulePresentation.cyclic(setup, gens)
    res = free_resolution(mod)
    ext3, irr = ext_module(mod, 3)
    comparison = ModulePresentation.cyclic(
        setup, [parse_poly(setup, "x%d" % i) for i in range(4)])
    same_sat = (reduced_gb(ext3.saturated_relation_cols(), setup)
                == reduced_gb(comparison.saturated_relation_cols(), setup))
    obstructed = False
    try:
        mapping_cone_shorten(res, mod)
    except ObstructionError:
        obstructed = True
    cert = classify(mod)
    return {
        "name": "ex4_4",
        "characteristic": char,
        "ext3_irrelevant": irr,
        "ext3_matches_coordinate_subspace": same_sat,
        "cone_obstructed": obstructed,
        "classification": cert.classification,
        "codim": cert.codim,
        "vdim_lower": cert.vdim_lower,
    }


def _build_ex5_3(char):
    out = {"name": "ex5_3", "characteristic": char, "cases": []}
    for d in (2, 3):
        setup = GradingSetup([d + 1], char=char)
        mod = tangent_module(setup)
        cert = classify(mod)
        out["cases"].append({
            "projective_space_dim": d,
            "classification": cert.classification,
            "codim": cert.codim,
            "pdim": cert.pdim,
            "vdim_lower": cert.vdim_lower,
            "vdim_upper": cert.vdim_upper,
            "virtually_cm": cert.virtually_cm,
            "ext_profile": cert.ext_profile,
        })
    return out


def _build_lemma2_2(char):
    out = {"name": "lemma2_2_profiles", "characteristic": char, "profiles": []}
    for blocks in ([2, 2], [2, 3], [3, 3], [2, 2, 2], [3, 3, 3]):
        r = len(blocks)
        br = build_br(blocks, r)
        prof = reduced_homology(br, char)
        out["profiles"].append({
            "blocks": blocks,
            "r": r,
            "homology": prof.as_list(upto=r),
            "facet_count": len(br.facets),
        })
    return out


_BUILDERS = {
    "ex2_8": _build_ex2_8,
    "ex2_9": _build_ex2_9,
    "ex3_2": _build_ex3_2,
    "ex3_3_matrices": _build_ex3_3,
    "ex3_5": _build_ex3_5,
    "ex3_7": _build_ex3_7,
    "ex4_4": _build_ex4_4,
    "ex5_3": _build_ex5_3,
    "lemma2_2_profiles": _build_lemma2_2,
}


def build_example(name, char=32003):
    if name not in _BUILDERS:
        raise InputError("unknown example %r; choose from %s"
                         % (name, ", ".join(EXAMPLE_NAMES)))
    return _BUILDERS[name](char)


def golden_text(name):
    ref = resources.files("virtres").joinpath("golden/%s.json" % name)
    return ref.read_text(encoding="utf-8")


def run_example(name, char=32003):
    """Build the scenario and diff its canonical report against the golden file.

    Returns (report_dict, diff_text); diff_text is None when they agree.
    """
    report = build_example(name, char)
    got = canonical_json(report)
    want = golden_text(name)
    if got == want:
        return report, None
    diff = "".join(difflib.unified_diff(
        want.splitlines(keepends=True), got.splitlines(keepends=True),
        fromfile="golden/%s.json" % name, tofile="current"))
    return report, diff
