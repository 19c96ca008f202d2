"""Command-line front end: ``hermlat <subcommand> [options]``.

Exit codes: 0 success, 1 a checked inequality failed, 2 usage error,
3 domain error, 4 enumeration or precision budget exhausted.
"""

import argparse
import hashlib
import json
import sys
import time
from dataclasses import replace
from fractions import Fraction

import mpmath
import yaml

from . import __version__
from . import bounds as bd
from . import hermitian as hm
from . import homology as ho
from . import ideal_lattice as il
from .bigbound import BigBound
from .config import load_settings, set_settings, settings
from .errors import BudgetExceeded, DomainError, HermlatError, PrecisionUnreachable, Undecided
from .field_core import (
    FieldElement,
    FractionalIdeal,
    RealEmbeddingVector,
    element_to_json,
    embed,
    load_field,
    parse_element,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# -- serialisation -----------------------------------------------------------

def to_plain(obj):
    """JSON-ready form: Fractions as "p/q", elements as coordinate lists, bounds as factor triples."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, FieldElement):
        return element_to_json(obj)
    if isinstance(obj, BigBound):
        return obj.to_json()
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, 30)
    if isinstance(obj, mpmath.mpc):
        return [mpmath.nstr(obj.real, 30), mpmath.nstr(obj.imag, 30)]
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, float):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj):
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


# -- input parsing -----------------------------------------------------------

def _load(text, what):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise UsageError(f"could not parse {what}: {exc}") from exc


def _matrix_arg(args):
    if getattr(args, "matrix_file", None):
        with open(args.matrix_file) as fh:
            data = _load(fh.read(), "matrix file")
    elif args.matrix is not None:
        data = _load(args.matrix, "--matrix")
    else:
        raise UsageError("give --matrix or --matrix-file")
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError("matrix must be a list of rows")
    return data


def _field(args):
    return load_field(args.field)


def _ideal(F, text):
    if text is None:
        return FractionalIdeal.unit(F)
    gens = _load(text, "--ideal")
    if not isinstance(gens, list) or not gens:
        raise UsageError("--ideal takes a nonempty list of generators")
    return FractionalIdeal.from_generators(F, [parse_element(F, g) for g in gens])


def _element(F, text, what):
    value = _load(text, what)
    return parse_element(F, value if not isinstance(value, (int, float)) else str(value))


def _gram(args):
    if args.gram_file:
        with open(args.gram_file) as fh:
            data = _load(fh.read(), "Gram file")
    elif args.gram is not None:
        data = _load(args.gram, "--gram")
    else:
        raise UsageError("give --gram or --gram-file")
    if isinstance(data, dict):
        data = data.get("gram")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError("Hermitian Gram must be a list of rows")
    return data


def _lattice(args):
    F = _field(args)
    return hm.HermitianLattice(F, _gram(args))


# -- subcommands -------------------------------------------------------------
# Each returns (result dict, ok flag).

def cmd_field(args):
    F = _field(args)
    emb = embed(F.generator())
    res = {
        "name": F.name,
        "min_poly": F.min_poly,
        "integral_basis": [[str(c) for c in row] for row in F.integral_basis],
        "degree": F.degree,
        "signature": [F.r1, F.r2],
        "discriminant": F.discriminant,
        "has_conjugation": F.has_conjugation,
        "generator_embeddings": list(emb.values),
    }
    return res, True


def cmd_cvp(args):
    F = _field(args)
    ideal = _ideal(F, args.ideal)
    scaling = _element(F, args.scaling, "--scaling") if args.scaling else None
    lat = il.IdealLattice(F, ideal, scaling)
    if args.target is not None:
        target = _element(F, args.target, "--target")
    elif args.target_embedding is not None:
        vals = _load(args.target_embedding, "--target-embedding")
        vals = [mpmath.mpc(*v) if isinstance(v, list) else mpmath.mpf(str(v)) for v in vals]
        target = RealEmbeddingVector.from_values(F, vals)
    else:
        raise UsageError("give --target or --target-embedding")
    r = il.closest_vector(lat, target)
    res = {
        "coords": list(r.coords),
        "dist2": r.dist2,
        "ties": r.ties,
        "covering_bound": il.covering_bound(lat),
        "within_bound": r.within_bound,
    }
    if lat.basis is not None:
        res["vector"] = lat.element(r.coords)
    return res, r.within_bound


def cmd_svp(args):
    F = _field(args)
    lat = il.IdealLattice(F, _ideal(F, args.ideal), _element(F, args.scaling, "--scaling") if args.scaling else None)
    r = il.shortest_vector(lat)
    res = {"coords": list(r.coords), "len2": r.len2, "count": r.count, "within_bound": r.within_bound}
    if lat.basis is not None:
        res["vector"] = lat.element(r.coords)
    return res, r.within_bound


def cmd_residues(args):
    F = _field(args)
    ideal = _ideal(F, args.ideal)
    r = il.residue_representatives(ideal)
    res = {
        "norm": ideal.norm,
        "count": len(r.representatives),
        "representatives": r.representatives,
        "q0_values": r.q0_values,
        "certified": all(r.certified),
    }
    return res, all(r.certified) and len(r.representatives) == ideal.norm


def cmd_minvecs(args):
    L = _lattice(args)
    M = hm.minimal_vectors(L)
    return {
        "minimum": M.minimum,
        "count": M.count,
        "count_mod_sign": M.count_mod_sign,
        "vectors": [list(v) for v in M.vectors],
    }, True


def cmd_wellrounded(args):
    L = _lattice(args)
    w = hm.is_well_rounded(L)
    return {"well_rounded": w.holds, "witness": [list(v) for v in w.witness], "reason": w.reason}, True


def cmd_basis(args):
    L = _lattice(args)
    b = hm.bounded_basis(L)
    rep = hm.coefficient_bound_check(L, b)
    res = {
        "basis": [list(v) for v in b.basis],
        "max_norm": b.max_norm,
        "general_bound": b.certificate,
        "simplified_bound": b.simplified,
        "holds": b.holds,
        "coefficient_T": rep.T,
        "coefficient_violations": len(rep.violations),
        "coefficient_max_ratio": rep.max_ratio,
    }
    return res, b.holds and rep.passed


def cmd_phicount(args):
    F = _field(args)
    phi = hm.phi_enumerate(F, args.N, cap_T=Fraction(args.cap_T), max_vectors=args.max_vectors)
    res = {
        "per_coordinate_count": len(phi.per_coordinate),
        "per_coordinate": list(phi.per_coordinate),
        "count": phi.count,
        "per_coordinate_bound": phi.coordinate_bound,
        "per_coordinate_ok": phi.coordinate_ok,
    }
    return res, phi.coordinate_ok and phi.total_ok


def cmd_snf(args):
    M = _matrix_arg(args)
    s = ho.smith_normal_form(M)
    return {
        "D": s.D,
        "U": s.U,
        "V": s.V,
        "divisors": list(s.divisors.divisors),
        "free_rank": s.divisors.free_rank,
        "torsion": ho.cokernel_torsion(M),
    }, True


def cmd_gabber(args):
    g = ho.gabber_bound(_matrix_arg(args))
    return {
        "alpha_squared": g.alpha_sq,
        "exponent": g.exponent,
        "bound": g.bound,
        "torsion": g.torsion,
        "holds": g.holds,
    }, g.holds


def cmd_cardell(args):
    divs = _load(args.divisors, "--divisors")
    if isinstance(divs, int):
        divs = [divs]
    if not isinstance(divs, list) or not all(isinstance(v, int) for v in divs):
        raise UsageError("--divisors takes a list of positive integers")
    return {"divisors": divs, "ell": args.ell, "card": ho.card_ell(divs, args.ell)}, True


def _fp(args):
    if args.field:
        return bd.FieldParams.of_field(load_field(args.field))
    if None in (args.d, args.disc):
        raise UsageError("give --field or --d and --disc (plus --r1/--r2)")
    r1 = args.r1 if args.r1 is not None else (args.d - 2 * (args.r2 or 0))
    r2 = args.r2 if args.r2 is not None else (args.d - r1) // 2
    return bd.FieldParams(args.d, r1, r2, abs(args.disc))


def cmd_kbound(args):
    fp = _fp(args)
    r = bd.k_bound(fp, args.n)
    res = {
        "d": fp.d,
        "signature": [fp.r1, fp.r2],
        "abs_disc": fp.abs_disc,
        "n": args.n,
        "N": r.kp.N,
        "ell": r.kp.ell,
        "e": r.e,
        "dim_x": list(bd.dim_x(fp, r.kp.N)),
        "C1": r.C1,
        "C2": r.C2,
        "C3": r.C3,
        "B_general": r.B_general,
        "B_simplified": r.B_simplified,
        "card_phi_expanded": r.card_phi_expanded,
        "card_phi_closed": r.card_phi_closed,
        "assembled": r.assembled,
        "theorem": r.theorem,
        "checks": [c.to_json() for c in r.checks],
    }
    return res, r.passed


def cmd_verify_grids(args):
    checks = bd.verify_all_grids(quick=args.quick)
    return {"checks": [c.to_json() for c in checks]}, all(c.passed for c in checks)


# -- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="hermlat", description="Hermitian lattices and explicit torsion bounds")
    p.add_argument("--version", action="version", version=f"hermlat {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output with a run manifest")
    common.add_argument("--precision", type=int, help="embedding precision in bits (overrides HERMLAT_PRECISION)")
    common.add_argument("--budget", type=int, help="enumeration node budget (overrides HERMLAT_NODE_BUDGET)")
    common.add_argument("--config", help="YAML file with HERMLAT_PRECISION / HERMLAT_NODE_BUDGET")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def with_field(sp, default="gaussian"):
        sp.add_argument("--field", default=default, help="preset name or YAML/JSON field file")

    sp = add("field", cmd_field, "field invariants")
    with_field(sp)

    for name, func, help_ in (("cvp", cmd_cvp, "closest vector in an ideal lattice"),
                              ("svp", cmd_svp, "shortest vector in an ideal lattice")):
        sp = add(name, func, help_)
        with_field(sp)
        sp.add_argument("--ideal", help="generators, e.g. '[[1, 1]]' for (1+i)")
        sp.add_argument("--scaling", help="scaling element x (coordinate list)")
        if name == "cvp":
            sp.add_argument("--target", help="target element of F, coordinate list")
            sp.add_argument("--target-embedding", help="target embedding values; complex as [re, im]")

    sp = add("residues", cmd_residues, "representatives of O_F / a inside the covering ball")
    with_field(sp)
    sp.add_argument("--ideal", required=True)

    for name, func, help_ in (("minvecs", cmd_minvecs, "minimal vectors of a Hermitian lattice"),
                              ("wellrounded", cmd_wellrounded, "well-roundedness test"),
                              ("basis", cmd_basis, "bounded basis and coefficient check")):
        sp = add(name, func, help_)
        with_field(sp)
        sp.add_argument("--gram", help="Hermitian Gram matrix, e.g. '[[1, 1/2], [1/2, 1]]'")
        sp.add_argument("--gram-file")

    sp = add("phicount", cmd_phicount, "enumerate the set Phi for a small T")
    with_field(sp)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--cap-T", default="1")
    sp.add_argument("--max-vectors", type=int, default=hm.PHI_CAP)

    for name, func, help_ in (("snf", cmd_snf, "Smith normal form"),
                              ("gabber", cmd_gabber, "Gabber's cokernel torsion bound")):
        sp = add(name, func, help_)
        sp.add_argument("--matrix", help="integer matrix, e.g. '[[2, 1], [0, 2]]'")
        sp.add_argument("--matrix-file")

    sp = add("cardell", cmd_cardell, "order of A modulo elements of order <= ell")
    sp.add_argument("--divisors", required=True, help="cyclic orders, e.g. '[2, 8]'")
    sp.add_argument("--ell", type=int, required=True)

    sp = add("kbound", cmd_kbound, "explicit bound on log card_ell of K_n torsion")
    sp.add_argument("--field", help="take d, signature and |D| from a field")
    sp.add_argument("--d", type=int)
    sp.add_argument("--r1", type=int)
    sp.add_argument("--r2", type=int)
    sp.add_argument("--disc", type=int)
    sp.add_argument("--n", type=int, required=True)

    sp = add("verify-paper", cmd_verify_grids, "run every inequality grid")
    sp.add_argument("--quick", action="store_true", help="thin out the basis-bound grid")
    return p


# -- output --------------------------------------------------------------------

def _human(value):
    if isinstance(value, BigBound):
        lo = value.log10_interval().a
        return f"{value.describe()}  (log10 ~ {mpmath.nstr(mpmath.mpf(lo), 12)})"
    if isinstance(value, FieldElement):
        return "[" + ", ".join(str(c) for c in value.coords) + "]"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_human(v) for v in value) + "]"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_human(v)}" for k, v in value.items())
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 15)
    return str(value)


def _print_human(result, ok, out):
    for key, value in result.items():
        if key == "checks":
            for c in value:
                mark = "PASS" if c["passed"] else "FAIL"
                out.write(f"  [{mark}] {c['name']}" + (f"  ({c['detail']})" if c["detail"] else "") + "\n")
        elif isinstance(value, list) and value and isinstance(value[0], (list, tuple)) and len(value) > 1:
            out.write(f"{key}:\n")
            for row in value:
                out.write(f"  {_human(row)}\n")
        else:
            out.write(f"{key}: {_human(value)}\n")
    out.write("PASS\n" if ok else "FAIL\n")


def _inputs(args):
    skip = {"func", "json"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        s = load_settings(args.config)
    except (OSError, ValueError, yaml.YAMLError) as exc:
        sys.stderr.write(f"hermlat: bad configuration: {exc}\n")
        return EXIT_USAGE
    if args.precision is not None:
        s = replace(s, precision=args.precision)
    if args.budget is not None:
        s = replace(s, node_budget=args.budget)
    previous = settings()
    set_settings(s)
    start = time.perf_counter()
    try:
        result, ok = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"hermlat: {exc}\n")
        return EXIT_USAGE
    except (BudgetExceeded, PrecisionUnreachable, Undecided) as exc:
        sys.stderr.write(f"hermlat: budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except (DomainError, HermlatError, ZeroDivisionError) as exc:
        sys.stderr.write(f"hermlat: domain error: {exc}\n")
        return EXIT_DOMAIN
    finally:
        set_settings(previous)
    elapsed = time.perf_counter() - start
    if args.json:
        plain = to_plain(result)
        manifest = {
            "command": args.command,
            "inputs_digest": digest(to_plain(_inputs(args))),
            "version": __version__,
            "precision": s.precision,
            "node_budget": s.node_budget,
            "elapsed_seconds": round(elapsed, 6),
            "result_digest": digest(plain),
        }
        out.write(json.dumps({"result": plain, "passed": ok, "manifest": manifest}, indent=2, sort_keys=True) + "\n")
    else:
        _print_human(result, ok, out)
    return EXIT_OK if ok else EXIT_FAILED


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
