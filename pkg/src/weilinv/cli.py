"""Command-line front end.

Subcommands: dim, invariants, induced-basis, verify, s2dim, jacobi.
Input is a genus symbol (--symbol) or a Gram matrix JSON file (--gram);
output is deterministic JSON (default) or a small text table.  All numbers
are exact strings; nothing is ever rounded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cyclo
from .appl import dim_s2, dim_s2_trace, jacobi_singular_basis, theta_q_expansion
from .config import LIMITS, apply_env_overrides
from .fqm import (
    BoundExceeded,
    DiscriminantForm,
    SymbolError,
    from_gram,
    from_jordan_symbol,
)
from .fundamental import integer_normalize, invariant_generators
from .weil import (
    OddSignatureError,
    Vec,
    dim_closed_form,
    dim_invariants,
    inv,
    inv_at_cusp,
    cusp_classes,
    projection_closed_form,
    rank_of_vectors,
    rho_S,
    rho_T,
)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_ODD_SIGNATURE = 4
EXIT_IO = 5

ERROR_CODES = {
    SymbolError: ("parse-error", EXIT_PARSE),
    OddSignatureError: ("odd-signature", EXIT_ODD_SIGNATURE),
    json.JSONDecodeError: ("io-error", EXIT_IO),
    BoundExceeded: ("bound-exceeded", EXIT_BOUND),
    OSError: ("io-error", EXIT_IO),
    ValueError: ("parse-error", EXIT_PARSE),
}


def _load_form(args) -> tuple[DiscriminantForm, str]:
    if args.symbol is not None:
        return from_jordan_symbol(args.symbol), args.symbol
    with open(args.gram, encoding="utf-8") as fh:
        gram = json.load(fh)
    return from_gram(gram), f"gram:{args.gram}"


def _form_header(form: DiscriminantForm, name: str) -> dict:
    return {
        "form": name,
        "order": form.order,
        "level": form.level(),
        "signature": form.signature(),
        "square_class": form.square_class(),
    }


def _vector_doc(v) -> list[dict]:
    return [
        {"element": list(el), "coeff": _value_str(c)}
        for el, c in v.items_sorted()
    ]


def _value_str(c) -> str:
    r = cyclo.as_rational(c)
    return str(r) if r is not None else cyclo.serialize(c)


def _cmd_dim(args) -> dict:
    form, name = _load_form(args)
    doc = _form_header(form, name)
    doc["dim"] = dim_invariants(form)
    if args.symbol is not None:
        doc["closed_form_dim"] = dim_closed_form(args.symbol)
    if args.check:
        checks = []
        if doc.get("closed_form_dim") is not None:
            checks.append({"property": "closed-form-vs-trace", "pass": doc["closed_form_dim"] == doc["dim"]})
        gens = invariant_generators(form) if form.order <= LIMITS.max_form_order else None
        if gens is not None:
            checks.append({"property": "induced-rank-vs-trace", "pass": rank_of_vectors(gens) == doc["dim"]})
        doc["check"] = checks
    return doc


def _invariant_basis(form: DiscriminantForm):
    basis = []
    picked = []
    for gamma in form.isotropic_elements():
        v = inv(form, gamma)
        if v.is_zero():
            continue
        if rank_of_vectors([b for _, b in picked] + [v]) > len(picked):
            picked.append((gamma, v))
    return picked


def _cmd_invariants(args) -> dict:
    form, name = _load_form(args)
    doc = _form_header(form, name)
    picked = _invariant_basis(form)
    doc["dim"] = dim_invariants(form)
    doc["basis"] = [
        {"projected_from": list(gamma), "vector": _vector_doc(integer_normalize(v))}
        for gamma, v in picked
    ]
    if len(picked) != doc["dim"]:
        raise InternalError("projection basis has the wrong rank")
    return doc


def _cmd_induced_basis(args) -> dict:
    form, name = _load_form(args)
    doc = _form_header(form, name)
    gens = invariant_generators(form)
    doc["dim"] = dim_invariants(form)
    doc["rank"] = rank_of_vectors(gens)
    doc["generators"] = [{"vector": _vector_doc(integer_normalize(g))} for g in gens]
    if args.check and doc["rank"] != doc["dim"]:
        raise InternalError("generating set does not span the invariants")
    return doc


def _cmd_s2dim(args) -> dict:
    if args.symbol is None:
        raise SymbolError("s2dim requires a genus symbol p^(eps n)")
    form, name = _load_form(args)
    doc = _form_header(form, name)
    doc["dim_s2"] = dim_s2(args.symbol)
    if args.check:
        data = dim_s2_trace(args.symbol)
        doc["oracle"] = {
            "dim_s2": data.dim,
            "d": data.d,
            "alpha_order2": str(data.alpha_s),
            "alpha_order3": str(data.alpha_st),
            "alpha_parabolic": str(data.alpha_t),
        }
        doc["check"] = [{"property": "closed-form-vs-trace", "pass": data.dim == doc["dim_s2"]}]
    return doc


def _cmd_jacobi(args) -> dict:
    if args.gram is None:
        raise SymbolError("jacobi requires a Gram matrix file")
    with open(args.gram, encoding="utf-8") as fh:
        gram = json.load(fh)
    form = from_gram(gram)
    doc = _form_header(form, f"gram:{args.gram}")
    if len(gram) % 2:
        doc["note"] = "odd rank: the singular-weight space is trivial"
    entries = jacobi_singular_basis(gram)
    doc["rank"] = rank_of_vectors([e.vector for e in entries])
    doc["dim"] = dim_invariants(form)
    doc["weight"] = str(Fraction(len(gram), 2))
    doc["basis"] = []
    for e in entries:
        theta = theta_q_expansion(gram, [list(x) for x in e.subgroup.elements], e.coefficients, args.precision)
        doc["basis"].append(
            {
                "overlattice_generators": [list(x) for x in e.subgroup.generators],
                "coefficients": [
                    {"coset": list(el), "value": v} for el, v in sorted(e.coefficients.items())
                ],
                "theta": theta,
            }
        )
    return doc


class InternalError(RuntimeError):
    pass


def _verify_battery(form: DiscriminantForm) -> list[dict]:
    """Cross-validation suite for one form; every check is exact."""
    checks = []

    def record(name, ok, detail=None):
        entry = {"property": name, "pass": bool(ok)}
        if detail is not None and not ok:
            entry["counterexample"] = detail
        checks.append(entry)

    els = form.elements()
    bad = next(
        (
            (g, h)
            for g in els[: min(len(els), 40)]
            for h in els[: min(len(els), 40)]
            if (form.q(form.add(g, h)) - form.q(g) - form.q(h)) % 1 != form.b(g, h)
        ),
        None,
    )
    record("polarization-identity", bad is None, bad and [list(bad[0]), list(bad[1])])

    total = form.gauss_sum()
    record(
        "milgram-gauss-sum",
        total == cyclo.sqrt_int(form.order) * cyclo.e_of(Fraction(form.signature(), 8)),
    )

    if form.signature() % 2 == 0:
        ok = True
        detail = None
        for gamma in els[: min(len(els), 12)]:
            v = Vec.basis(form, gamma)
            if rho_S(rho_S(v)) != Vec(form, {form.neg(gamma): cyclo.e_of(Fraction(form.signature(), 4))}):
                ok, detail = False, list(gamma)
                break
        record("rho-S-squared-is-Z", ok, detail)

        iso = form.isotropic_elements()
        sample = iso[: min(len(iso), 6)]
        ok = all(inv(form, inv(form, g)) == inv(form, g) for g in sample)
        record("inv-idempotent", ok)
        ok = all(rho_S(inv(form, g)) == inv(form, g) and rho_T(inv(form, g)) == inv(form, g) for g in sample)
        record("inv-image-fixed", ok)
        total_cusps = Vec(form)
        g0 = sample[0]
        for cusp in cusp_classes(form.level()):
            total_cusps = total_cusps + inv_at_cusp(form, g0, cusp.key)
        record("cusp-partition", total_cusps == inv(form, g0))
        if form.symbol is not None:
            ok = True
            for g in sample:
                pcf = projection_closed_form(form, g)
                if pcf is not None and pcf != inv(form, g):
                    ok = False
                    break
            record("closed-projection", ok)
        if form.symbol is not None and dim_closed_form(str(form.symbol)) is not None:
            record("closed-dimension", dim_closed_form(str(form.symbol)) == dim_invariants(form))
        gens = invariant_generators(form)
        record("induced-rank", rank_of_vectors(gens) == dim_invariants(form))
    return checks


def _cmd_verify(args) -> dict:
    form, name = _load_form(args)
    doc = _form_header(form, name)
    doc["checks"] = _verify_battery(form)
    doc["pass"] = all(c["pass"] for c in doc["checks"])
    return doc


COMMANDS = {
    "dim": _cmd_dim,
    "invariants": _cmd_invariants,
    "induced-basis": _cmd_induced_basis,
    "verify": _cmd_verify,
    "s2dim": _cmd_s2dim,
    "jacobi": _cmd_jacobi,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weilinv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--symbol", help="genus symbol, e.g. 2_1^+1.4_5^-1.8_II^+2")
        src.add_argument("--gram", help="path to a JSON array-of-arrays Gram matrix")
        p.add_argument("--check", action="store_true", help="run cross validations")
        p.add_argument("--max-order", type=int, default=None, help="brute-force order bound")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "jacobi":
            p.add_argument("--precision", type=int, default=5, help="theta coefficients up to q^precision")
    return parser


def _render_text(doc: dict, out) -> None:
    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}{k}.", v) if isinstance(v, (dict, list)) else out.write(f"{prefix}{k} = {v}\n")
        elif isinstance(value, list):
            for i, v in enumerate(value):
                walk(f"{prefix}{i}.", v) if isinstance(v, (dict, list)) else out.write(f"{prefix}{i} = {v}\n")

    walk("", doc)


def main(argv=None) -> int:
    apply_env_overrides()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_order is not None:
        LIMITS.max_form_order = args.max_order
    try:
        doc = COMMANDS[args.command](args)
    except tuple(ERROR_CODES) as exc:
        for klass, (code, status) in ERROR_CODES.items():
            if isinstance(exc, klass):
                json.dump({"error": {"code": code, "message": str(exc)}}, sys.stdout)
                sys.stdout.write("\n")
                return status
        raise
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        _render_text(doc, sys.stdout)
    if args.command == "verify" and not doc["pass"]:
        return EXIT_FAILED_CHECK
    if args.command in ("dim", "s2dim", "induced-basis") and args.check:
        if any(not c["pass"] for c in doc.get("check", [])):
            return EXIT_FAILED_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
