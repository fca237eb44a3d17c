"""Command-line front end.

Exit status: 0 success, 1 validation error, 2 property failure.
``SMITHALG_TRUNCATION`` overrides the default Whittaker-vector window J.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .center import WhittakerCharacter, eta_projection, freeness_basis_matrix, omega_eta
from .errors import DomainError, InconsistencyError, NonTerminationError
from .exactpoly import Poly, format_rational
from .modules import (
    ModuleVector,
    VermaModule,
    WhittakerModule,
    central_annihilator,
    default_truncation,
    whittaker_vector_solve,
)
from .parsing import normalize, parse_poly
from .pbw import E, F, H, PBWElement, SmithAlgebra
from .structure import (
    certify_irreducible,
    composition_series,
    crt_decompose,
    divisor_lattice,
    transporter_ideal,
    unique_maximal_submodule,
)
from .verify import load_catalog, verify_all

EXIT_OK, EXIT_VALIDATION, EXIT_PROPERTY = 0, 1, 2
TRUNCATION_ENV = "SMITHALG_TRUNCATION"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let rational literals such as -3/2 be option values
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def _parse_optional(self, arg_string):
        # no short options besides -h, so "-2*H" or "-F" is a value
        if arg_string.startswith("-") and not arg_string.startswith("--") and arg_string not in self._option_string_actions:
            return None
        return super()._parse_optional(arg_string)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _poly_json(p: Poly, var: str) -> dict:
    return {**p.to_json(), "text": p.format(var)}


def _truncation(mod: WhittakerModule, J: int | None) -> int:
    if J is not None:
        return J
    env = os.environ.get(TRUNCATION_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{TRUNCATION_ENV} must be an integer, got {env!r}")
    return default_truncation(mod)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m for m in missing))


def _algebra(args) -> SmithAlgebra:
    _require(args, "f")
    return SmithAlgebra(parse_poly(args.f, "H"))


def _eta(args) -> WhittakerCharacter:
    _require(args, "eta")
    try:
        value = Fraction(args.eta)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"--eta must be a rational p/q, got {args.eta!r}")
    return WhittakerCharacter(value)


def _module(args) -> WhittakerModule:
    alg, eta = _algebra(args), _eta(args)
    _require(args, "g")
    return WhittakerModule(alg, eta, parse_poly(args.g, "Omega"))


# -- commands ------------------------------------------------------------------


def cmd_normal_form(args) -> dict:
    alg = _algebra(args)
    _require(args, "expr")
    x = normalize(args.expr, alg)
    return {"expr": args.expr, "normal_form": x.to_json(), "text": str(x),
            "kazhdan_degree": alg.kazhdan_degree(x)}


def cmd_casimir(args) -> dict:
    alg = _algebra(args)
    commutators = {name: str(alg.commutator(alg.casimir, g)) for name, g in (("E", E), ("F", F), ("H", H))}
    return {
        "f": _poly_json(alg.f, "H"),
        "u": _poly_json(alg.u, "H"),
        "omega": alg.casimir.to_json(),
        "omega_text": str(alg.casimir),
        "commutators": commutators,
        "is_central": alg.is_central(alg.casimir),
    }


def cmd_project(args) -> dict:
    alg, eta = _algebra(args), _eta(args)
    _require(args, "expr")
    x = normalize(args.expr, alg)
    xe = eta_projection(alg, eta, x)
    oe = omega_eta(alg, eta)
    return {"expr": args.expr, "normal_form": x.to_json(), "projection": xe.to_json(),
            "projection_text": str(xe), "omega_eta": oe.to_json(), "omega_eta_text": str(oe)}


def cmd_freeness(args) -> dict:
    alg, eta = _algebra(args), _eta(args)
    _require(args, "k")
    rep = freeness_basis_matrix(alg, eta, args.k)
    return {
        "k": rep.k,
        "dim": [len(rep.row_labels), len(rep.col_labels)],
        "rank": rep.rank,
        "square": rep.square,
        "full_rank": rep.full_rank,
        "rows": [list(r) for r in rep.row_labels],
        "cols": [list(c) for c in rep.col_labels],
        "matrix": [[format_rational(c) for c in row] for row in rep.matrix],
    }


def cmd_module_build(args) -> dict:
    mod = _module(args)
    out = {
        "g": _poly_json(mod.g, "Omega"),
        "n": mod.n,
        "reduction_rule": mod.reduction_rule.to_json(),
        "reduction_rule_text": str(mod.reduction_rule),
        "basis": "F^i H^j w, i < n, j >= 0" if not mod.is_universal else "F^i H^j w, i, j >= 0",
        "F_on_w": mod.act_generator("F", mod.w).to_json(),
    }
    if mod.factored is not None:
        out["factors"] = [
            {"factor": _poly_json(f.factor, "Omega"), "multiplicity": f.multiplicity,
             "certified_irreducible": f.certified_irreducible}
            for f in mod.factored.factors
        ]
    return out


def _load_vector(text: str) -> ModuleVector:
    try:
        return ModuleVector.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"--vec is not a module vector JSON: {exc}")


def cmd_module_act(args) -> dict:
    mod = _module(args)
    _require(args, "gen")
    v = _load_vector(args.vec) if args.vec is not None else mod.w
    if mod.n and any(i >= mod.n for (i, _) in v):
        raise DomainError(f"vector has F-degree >= n = {mod.n}")
    out = mod.act_generator(args.gen, v)
    return {"gen": args.gen, "input": v.to_json(), "result": out.to_json(), "text": str(out)}


def cmd_module_whittaker(args) -> dict:
    mod = _module(args)
    J = _truncation(mod, args.J)
    sols = whittaker_vector_solve(mod, J)
    return {"J": J, "dimension": len(sols), "basis": [v.to_json() for v in sols],
            "text": [str(v) for v in sols]}


def cmd_module_annihilator(args) -> dict:
    mod = _module(args)
    p = central_annihilator(mod, maxdeg=args.maxdeg)
    return {"annihilator": _poly_json(p, "Omega"), "found": not p.is_zero()}


def cmd_verma(args) -> dict:
    alg = _algebra(args)
    _require(args, "lam")
    try:
        lam = Fraction(args.lam)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"--lambda must be rational, got {args.lam!r}")
    mod = VermaModule(alg, lam)
    depth = args.depth if args.depth is not None else 5
    rows = []
    for k in range(depth + 1):
        b = mod.basis_vector(k)
        rows.append({
            "k": k,
            "E": mod.act_generator("E", b).to_json(),
            "F": mod.act_generator("F", b).to_json(),
            "H": mod.act_generator("H", b).to_json(),
            "Omega": mod.act_element(alg.casimir, b).to_json(),
        })
    return {"lambda": format_rational(lam), "casimir_scalar": format_rational(mod.casimir_scalar()),
            "annihilator": _poly_json(central_annihilator(mod), "Omega"), "actions": rows}


def cmd_structure(args) -> dict:
    mod = _module(args)
    if mod.is_universal:
        raise DomainError("g = 0: the submodule lattice is infinite (unsupported)")
    what = args.what
    if what == "lattice":
        lat = divisor_lattice(mod)
        return {"divisors": [
            {"divisor": _poly_json(s.divisor, "Omega"), "generator": s.generator.to_json(),
             "transporter": _poly_json(transporter_ideal(mod, s), "Omega")}
            for s in lat.submodules]}
    if what == "decompose":
        return {"idempotents": [
            {"idempotent": _poly_json(e, "Omega"), "generator": v.to_json(),
             "annihilator": _poly_json(central_annihilator(mod, v), "Omega")}
            for e, v in crt_decompose(mod)]}
    if what == "series":
        cs = composition_series(mod)
        return {"series": [_poly_json(s.divisor, "Omega") for s in cs.chain],
                "length": len(cs), "quotient_whittaker_dims": cs.quotient_whittaker_dims,
                "quotient_annihilators": [_poly_json(p, "Omega") for p in cs.quotient_annihilators()],
                "certified": cs.certified}
    if what == "maximal":
        sub = unique_maximal_submodule(mod)
        return {"maximal": _poly_json(sub.divisor, "Omega"), "generator": sub.generator.to_json()}
    J = _truncation(mod, args.J)
    cert = certify_irreducible(mod, J)
    verdict = cert.verdict if isinstance(cert.verdict, bool) else str(cert.verdict)
    return {"verdict": verdict, "evidence": cert.evidence}


def cmd_verify(args) -> dict:
    catalog = load_catalog(args.catalog)
    return verify_all(catalog, args.seed)


# -- text rendering ------------------------------------------------------------


def _leaf(value) -> str | None:
    """One-line rendering, or None when the value needs nested lines."""
    if isinstance(value, dict):
        if "coeffs" in value and "text" in value:
            return value["text"]
        if set(value) == {"terms"}:
            return str(PBWElement.from_json(value))
        return None
    if isinstance(value, list):
        if all(_leaf(v) is not None and not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(str(v) for v in value) + "]"
        return None
    return str(value)


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            one = _leaf(v)
            if one is not None:
                lines.append(f"{pad}{k}: {one}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
    elif isinstance(value, list):
        for v in value:
            one = _leaf(v)
            if one is not None:
                lines.append(f"{pad}- {one}")
            else:
                nested = _render_text(v, indent + 1)
                lines.append(f"{pad}- {nested[0].strip()}")
                lines.extend(nested[1:])
    else:
        lines.append(pad + str(value))
    return lines


# -- parser ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, *opts: str) -> None:
    p.add_argument("--format", choices=("json", "text"), default="text")
    if "f" in opts:
        p.add_argument("--f", help="defining polynomial f(H)")
    if "eta" in opts:
        p.add_argument("--eta", help="eta(E), nonzero rational")
    if "g" in opts:
        p.add_argument("--g", help="monic annihilator generator g(Omega); 0 for Y_eta")
    if "expr" in opts:
        p.add_argument("--expr", help="PBW expression in E, F, H, Omega")
    if "J" in opts:
        p.add_argument("--J", type=int, help=f"truncation depth (env {TRUNCATION_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smithalg", description="Exact computations in Smith algebras R(f) and their Whittaker modules.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("normal-form", help="PBW normal form of an expression")
    _common(p, "f", "expr")
    p.set_defaults(handler=cmd_normal_form)

    p = sub.add_parser("casimir", help="u, Omega and its centrality")
    _common(p, "f")
    p.set_defaults(handler=cmd_casimir)

    p = sub.add_parser("project", help="eta-projection of an expression")
    _common(p, "f", "eta", "expr")
    p.set_defaults(handler=cmd_project)

    p = sub.add_parser("freeness", help="change of basis H^p (Omega^eta)^q -> F^i H^j")
    _common(p, "f", "eta")
    p.add_argument("--k", type=int)
    p.set_defaults(handler=cmd_freeness)

    p = sub.add_parser("module", help="Whittaker module computations")
    msub = p.add_subparsers(dest="action", parser_class=_Parser)
    msub.required = True
    q = msub.add_parser("build")
    _common(q, "f", "eta", "g")
    q.set_defaults(handler=cmd_module_build)
    q = msub.add_parser("act")
    _common(q, "f", "eta", "g")
    q.add_argument("--gen", choices=("E", "F", "H"))
    q.add_argument("--vec", help='ModuleVector JSON, default w: {"terms":[{"F":i,"H":j,"coeff":"p/q"}]}')
    q.set_defaults(handler=cmd_module_act)
    q = msub.add_parser("whittaker-vectors")
    _common(q, "f", "eta", "g", "J")
    q.set_defaults(handler=cmd_module_whittaker)
    q = msub.add_parser("annihilator")
    _common(q, "f", "eta", "g")
    q.add_argument("--maxdeg", type=int)
    q.set_defaults(handler=cmd_module_annihilator)

    p = sub.add_parser("verma", help="Verma module actions")
    _common(p, "f")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--depth", type=int)
    p.set_defaults(handler=cmd_verma)

    p = sub.add_parser("structure", help="submodule structure of a Whittaker module")
    p.add_argument("what", choices=("lattice", "series", "decompose", "maximal", "certify"))
    _common(p, "f", "eta", "g", "J")
    p.set_defaults(handler=cmd_structure)

    p = sub.add_parser("verify", help="run every property suite over a catalog")
    p.add_argument("--catalog", default="default", help="'default' or path to a JSON catalog")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(handler=cmd_verify)
    return parser


def _verify_text(report: dict) -> str:
    lines = []
    for r in report["results"]:
        sc = report["scenarios"][r["scenario"]]
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{status} [{r['scenario']}] {r['tag']}: f={sc['f']} eta={sc['etaE']} {r['detail']}".rstrip())
    lines.append(f"{'all passed' if report['passed'] else str(report['failures']) + ' failure(s)'}")
    return "\n".join(lines)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.handler(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    except (InconsistencyError, NonTerminationError) as exc:
        print(f"property failure: {exc}", file=stderr)
        return EXIT_PROPERTY
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.format == "json":
        print(json.dumps(result, indent=2, sort_keys=True), file=stdout)
    elif args.command == "verify":
        print(_verify_text(result), file=stdout)
    else:
        print("\n".join(_render_text(result)), file=stdout)
    if args.command == "verify" and not result["passed"]:
        return EXIT_PROPERTY
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
