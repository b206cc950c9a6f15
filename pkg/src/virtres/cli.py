"""Command-line workbench.

Exit codes: 0 success or certified, 2 obstruction found (a legitimate
negative answer), 3 precondition or input violation, 4 internal
contradiction with a proved guarantee (bug sentinel).
"""

import json
import sys

import click

from .complexes import minimize_complex
from .errors import (DomainError, EquidimensionalityError, InputError,
                     LiftingError, ObstructionError, PreconditionError,
                     TheoremContradictionError)
from .examples_corpus import EXAMPLE_NAMES, build_example, run_example
from .freemod import ModulePresentation
from .gradings import GradingSetup
from .homology import hochster_betti, reisner_is_cm
from .pipeline import vcm_certify_sr
from .poly import PolyParseError, format_poly, parse_poly
from .resolution import (classify, ext_module, free_resolution,
                         is_virtual_resolution, is_virtually_regular,
                         mapping_cone_shorten, quotient_total_complex,
                         tor_sheaf)
from .serialize import (canonical_json, chain_complex_to_json, complex_to_json,
                        complex_from_json, ideal_to_json, load_envelope,
                        module_to_json)
from .simplicial import build_br


class _Ctx:
    def __init__(self, char, infile, as_json, budget):
        self.char = char
        self.infile = infile
        self.as_json = as_json
        self.budget = budget

    def load(self):
        if not self.infile:
            raise InputError("this command needs --in <file>")
        with open(self.infile, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return load_envelope(data, char=self.char)

    def module(self, payload, setup):
        if "module" in payload:
            return payload["module"]
        if "ideal" in payload:
            return ModulePresentation.cyclic(setup, payload["ideal"])
        if "complex" in payload:
            from .simplicial import stanley_reisner_exponents
            from .poly import Polynomial
            exps = stanley_reisner_exponents(payload["complex"])
            return ModulePresentation.cyclic(
                setup, [Polynomial(setup, {e: 1}) for e in exps])
        raise InputError("input needs an 'ideal', 'module' or 'complex'")

    def emit(self, data):
        click.echo(canonical_json(data), nl=False)


def _run(ctx, fn):
    try:
        fn()
    except ObstructionError as exc:
        click.echo(canonical_json({"error": "obstruction", "message": str(exc),
                                   "index": exc.index}), nl=False)
        sys.exit(2)
    except (InputError, DomainError, PreconditionError,
            EquidimensionalityError, PolyParseError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        click.echo(canonical_json({"error": "precondition",
                                   "message": str(exc)}), nl=False)
        sys.exit(3)
    except (TheoremContradictionError, LiftingError, AssertionError) as exc:
        click.echo(canonical_json({"error": "internal-contradiction",
                                   "message": str(exc)}), nl=False)
        sys.exit(4)


@click.group()
@click.option("--char", type=int, default=32003, show_default=True,
              help="Coefficient field characteristic (prime).")
@click.option("--in", "infile", type=click.Path(), default=None,
              help="Input JSON file.")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Force canonical JSON output (default for most commands).")
@click.option("--budget", type=int, default=8, show_default=True,
              help="Iteration budget for classify.")
@click.pass_context
def main(ctx, char, infile, as_json, budget):
    """Construct and certify virtual resolutions over products of
    projective spaces."""
    ctx.obj = _Ctx(char, infile, as_json, budget)


@main.command()
@click.pass_obj
def srideal(ctx):
    """Minimal generators of the Stanley-Reisner ideal of a complex."""
    def go():
        setup, payload = ctx.load()
        cc = payload["complex"]
        from .simplicial import stanley_reisner_exponents
        from .poly import Polynomial
        gens = [Polynomial(setup, {e: 1})
                for e in stanley_reisner_exponents(cc)]
        ctx.emit({"ideal": ideal_to_json(setup, gens)})
    _run(ctx, go)


@main.command()
@click.pass_obj
def reisner(ctx):
    """Reisner's criterion with witness."""
    def go():
        setup, payload = ctx.load()
        cc = payload["complex"]
        ok, witness = reisner_is_cm(cc, setup.p)
        out = {"cohen_macaulay": ok}
        if witness is not None:
            out["witness_face"] = [list(v) for v in
                                   cc.face_from_mask(witness[0]).vertices]
            out["witness_degree"] = witness[1]
        ctx.emit(out)
    _run(ctx, go)


@main.command()
@click.pass_obj
def betti(ctx):
    """Multigraded Betti table via restriction homology."""
    def go():
        setup, payload = ctx.load()
        table = hochster_betti(payload["complex"], setup.p)
        ctx.emit({"betti": table.to_json(), "totals": table.totals()})
    _run(ctx, go)


@main.command()
@click.option("--face", required=True,
              help="Comma-separated vertices, e.g. x_1_0,x_2_1.")
@click.pass_obj
def link(ctx, face):
    """Link of a face in a complex."""
    def go():
        setup, payload = ctx.load()
        cc = payload["complex"]
        verts = [v.strip() for v in face.split(",") if v.strip()]
        from .serialize import _vertex_from_json
        mask = cc.face_mask([_vertex_from_json(v) for v in verts])
        ctx.emit(complex_to_json(cc.link(mask)))
    _run(ctx, go)


@main.command()
@click.option("--blocks", required=True,
              help="Comma-separated block sizes, e.g. 3,3.")
@click.option("--dim", "rbound", type=int, default=None,
              help="Dimension bound (defaults to the number of blocks).")
@click.pass_obj
def br(ctx, blocks, rbound):
    """The complex of bounded-dimension irrelevant faces."""
    def go():
        sizes = [int(b) for b in blocks.split(",")]
        bound = rbound if rbound is not None else len(sizes)
        ctx.emit(complex_to_json(build_br(sizes, bound)))
    _run(ctx, go)


@main.command()
@click.pass_obj
def vcm(ctx):
    """Certify a Stanley-Reisner quotient as virtually Cohen-Macaulay."""
    def go():
        setup, payload = ctx.load()
        report = vcm_certify_sr(payload["complex"], char=setup.p)
        ctx.emit(report.to_json())
    _run(ctx, go)


@main.command()
@click.option("--non-minimal", is_flag=True, default=False)
@click.pass_obj
def res(ctx, non_minimal):
    """Free resolution of a module or ideal quotient."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        out = free_resolution(mod, minimal=not non_minimal)
        ctx.emit(chain_complex_to_json(out))
    _run(ctx, go)


@main.command()
@click.pass_obj
def minimize(ctx):
    """Minimize a chain complex (cancel degree-zero entries)."""
    def go():
        setup, payload = ctx.load()
        out = minimize_complex(payload["chain_complex"])
        ctx.emit(chain_complex_to_json(out))
    _run(ctx, go)


@main.command()
@click.pass_obj
def mapcone(ctx):
    """Shorten a virtual resolution through the reduced mapping cone."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        complex_ = payload.get("chain_complex")
        if complex_ is None:
            complex_ = free_resolution(mod)
        out = mapping_cone_shorten(complex_, mod)
        ctx.emit(chain_complex_to_json(out))
    _run(ctx, go)


@main.command()
@click.option("-i", "index", type=int, required=True)
@click.pass_obj
def ext(ctx, index):
    """Ext^i(M, S) presentation with irrelevance flag."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        pres, flag = ext_module(mod, index)
        ctx.emit({"ext": module_to_json(pres), "irrelevant": flag,
                  "index": index})
    _run(ctx, go)


@main.command()
@click.option("-i", "index", type=int, required=True)
@click.option("--other", required=True, type=click.Path(),
              help="JSON file with the second module (or ideal).")
@click.pass_obj
def tor(ctx, index, other):
    """Tor_i(M, N) presentation with irrelevance flag."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        with open(other, "r", encoding="utf-8") as fh:
            other_setup, other_payload = load_envelope(json.load(fh),
                                                       char=ctx.char)
        nmod = ctx.module(other_payload, other_setup)
        pres, flag = tor_sheaf(mod, nmod, index)
        ctx.emit({"tor": module_to_json(pres), "irrelevant": flag,
                  "index": index})
    _run(ctx, go)


@main.command()
@click.option("--element", required=True, help="Homogeneous element text.")
@click.pass_obj
def vreg(ctx, element):
    """Virtual regularity of an element on a module."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        f = parse_poly(setup, element)
        rep = is_virtually_regular(mod, f)
        ctx.emit(rep.to_json())
    _run(ctx, go)


@main.command()
@click.option("--element", required=True, help="Homogeneous element text.")
@click.pass_obj
def quotient(ctx, element):
    """Total complex of a resolution tensored with S --f--> S."""
    def go():
        setup, payload = ctx.load()
        f = parse_poly(setup, element)
        complex_ = payload.get("chain_complex")
        mod = None
        if complex_ is None:
            mod = ctx.module(payload, setup)
            complex_ = free_resolution(mod)
        out = quotient_total_complex(complex_, f, mod)
        data = chain_complex_to_json(out)
        if out.meta.get("warnings"):
            data["warnings"] = out.meta["warnings"]
        ctx.emit(data)
    _run(ctx, go)


@main.command("classify")
@click.pass_obj
def classify_cmd(ctx):
    """Full aCM/vCM/gCM ladder with vdim bounds."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        cert = classify(mod, budget=ctx.budget)
        ctx.emit(cert.to_json())
        if not cert.virtually_cm and cert.vdim_lower > cert.codim:
            sys.exit(2)
    _run(ctx, go)


@main.command()
@click.pass_obj
def irrelevant(ctx):
    """Whether the sheafification of a module vanishes."""
    def go():
        setup, payload = ctx.load()
        mod = ctx.module(payload, setup)
        ctx.emit({"irrelevant": mod.is_irrelevant()})
    _run(ctx, go)


@main.command("run-example")
@click.argument("name", type=click.Choice(EXAMPLE_NAMES))
@click.pass_obj
def run_example_cmd(ctx, name):
    """Run a scripted scenario and diff against its golden file."""
    def go():
        report, diff = run_example(name, char=ctx.char)
        if diff is None:
            ctx.emit(report)
        else:
            click.echo(diff, nl=False)
            sys.exit(1)
    _run(ctx, go)


if __name__ == "__main__":
    main()
