"""Command line: ``natext VERB [inputs] [options]``.

Exit status is 0 when the computed verdict is verified, 2 when it is a
counterexample or falsification, and 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import duality, extension
from .algebra import GuardExceeded, SignatureMismatch
from .cases import finite_studies
from .cases.median_tree import NoAlgebraPoint
from .cases.registry import CASES, MAP_CASES
from .duality import NonAlgebraicEgo, phi_label
from .extension import FiniteSite, TotalOrder, table_map
from .io import ParseError, default_ego, load_algebra, load_document, load_ego, parse_map

OK, ERROR, FALSIFIED = 0, 1, 2


class CliError(Exception):
    pass


class Output:
    """A verdict with its text, JSON and optional DOT renderings."""

    def __init__(self, verified: bool, text: str, report: dict, dot: str | None = None):
        self.verified = verified
        self.text = text
        self.report = report
        self.dot = dot

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.report, ensure_ascii=False, indent=2, default=_json_default) + "\n"
        if fmt == "dot":
            if self.dot is None:
                raise CliError("this verb has no DOT rendering")
            return self.dot
        return self.text.rstrip("\n") + "\n"


def _json_default(v):
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if hasattr(v, "tolist"):
        return v.tolist()
    return str(v)


# -- inputs ----------------------------------------------------------------------

def _algebra_and_ego(args, ref):
    A = load_algebra(ref)
    ego = load_ego(args.ego) if args.ego else default_ego(A)
    return A, ego


_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def _window(args, target) -> list | None:
    if not args.window:
        return None
    out = []
    for tok in args.window.split(","):
        tok = tok.strip().translate(_SUBSCRIPTS).removeprefix("φ")
        if not tok.isdigit():
            raise CliError(f"bad window entry {tok!r}; use dual point indices such as 0,1 or φ₀,φ₁")
        i = int(tok)
        if isinstance(target, FiniteSite) and i >= target.dual.size:
            raise CliError(f"window entry {i} is not a dual point of the target "
                           f"(it has {target.dual.size})")
        out.append(i)
    return [tuple(out)]


def _map_and_points(args):
    """The map, the points to inspect, and the windows requested."""
    if args.case:
        if args.case not in MAP_CASES:
            raise CliError(f"unknown map case {args.case!r}; known: {', '.join(sorted(MAP_CASES))}")
        mc = MAP_CASES[args.case]
        u = mc.make()
        try:
            point = mc.point(args.point) if args.point else None
        except ValueError as exc:
            raise CliError(str(exc)) from None
        return u, point, _window(args, u.target)
    if not args.inputs:
        raise CliError("give a map document or --case NAME")
    ref = args.inputs[0]
    A, B, ego, table, name = parse_map(load_document(ref), "")
    u = table_map(FiniteSite(A, ego, "A"), FiniteSite(B, ego, "B"), table, name)
    point = None
    if args.point:
        labels = list(A.labels)
        key = args.point.removeprefix("e(").removesuffix(")")
        if key not in labels:
            raise CliError(f"unknown point {args.point!r}; elements are {labels}")
        point = u.source.embed(labels.index(key))
    return u, point, _window(args, u.target)


def _depth(args):
    return args.depth


def _fmt_values(values) -> str:
    return "{" + ",".join(extension._fmt(v) for v in values) + "}"


# -- verbs -----------------------------------------------------------------------

def cmd_dual(args) -> Output:
    A, ego = _algebra_and_ego(args, _one_input(args))
    D = duality.dual_of(A, ego)
    X = D.structure
    labels = [D.zero_set_label(i) for i in range(D.size)]
    lines = [f"|A*| = {D.size}"]
    for i in range(D.size):
        lines.append(f"  {phi_label(i)} = {D.homs[i].mapping}  zero set {labels[i]}")
    for name, _ in X.signature.relations:
        pairs = sorted(t for t in X.relations[name] if len(set(t)) > 1)
        lines.append(f"  {name}: " + ", ".join("(" + ",".join(phi_label(p) for p in t) + ")"
                                                for t in pairs))
    for name, _ in X.signature.operations:
        lines.append(f"  {name}: " + ", ".join(f"{phi_label(p)}↦{phi_label(int(q))}"
                                                for p, q in enumerate(X.operations[name].reshape(-1))))
    for name, v in X.constants.items():
        lines.append(f"  {name} = {phi_label(v)}")
    report = {"size": D.size, "homs": [list(h.mapping) for h in D.homs], "zero_sets": labels,
              "relations": {n: sorted(X.relations[n]) for n, _ in X.signature.relations},
              "operations": {n: X.operations[n].tolist() for n, _ in X.signature.operations},
              "constants": dict(X.constants), "algebraic": D.certificate}
    return Output(True, "\n".join(lines), report,
                  duality.structure_to_dot(X, "dual", labels, converse="•" in X.operations))


def cmd_bidual(args) -> Output:
    A, ego = _algebra_and_ego(args, _one_input(args))
    r = duality.check_duality(A, ego)
    if r.holds:
        text = f"|A^δ| = {r.extension_size}, e_A bijective onto the bidual"
    elif r.missing is not None:
        text = f"|A^δ| = {r.extension_size}, duality fails: morphism {r.missing} is not an evaluation"
    else:
        text = f"duality fails: elements {r.collision} have the same evaluation"
    return Output(r.holds, text, {"holds": r.holds, "extension_size": r.extension_size,
                                  "inverse": r.inverse, "missing": r.missing,
                                  "collision": r.collision})


def cmd_natext(args) -> Output:
    A, ego = _algebra_and_ego(args, _one_input(args))
    N = duality.natural_extension(A, ego)
    bijective = -1 not in N.embedding and len(set(N.embedding)) == A.size == N.size
    text = f"|A^δ| = {N.size}, e_A {'bijective' if bijective else 'not bijective'}"
    extra = [f"  {N.algebra.labels[i]} = {p}" for i, p in enumerate(N.points)]
    return Output(bijective, "\n".join([text] + extra),
                  {"size": N.size, "points": [list(p) for p in N.points],
                   "labels": list(N.algebra.labels), "embedding": list(N.embedding),
                   "bijective": bijective})


def cmd_basis(args) -> Output:
    A, ego = _algebra_and_ego(args, _one_input(args))
    B = duality.delta_basis(A, ego, args.guard or 16)
    r = duality.check_delta_base(A, ego, args.guard or 16)
    N = B.extension
    lines = [f"{len(B.entries)} basic opens; Δ {'is' if r.holds else 'is not'} a base "
             f"({r.empty} empty, {r.union} of the form O_(f∪g), {r.other} other intersections)"]
    for f, o in B.entries:
        dom = ",".join(f"{phi_label(d)}↦{v}" for d, v in zip(f.domain, f.mapping))
        lines.append(f"  O[{dom}] = {{{','.join(N.algebra.labels[i] for i in sorted(o))}}}")
    report = {"entries": [{"domain": list(f.domain), "values": list(f.mapping), "open": sorted(o)}
                          for f, o in B.entries],
              "base": r.holds, "empty": r.empty, "union": r.union, "other": r.other,
              "discrete": r.discrete}
    return Output(r.holds, "\n".join(lines), report)


def cmd_extend(args) -> Output:
    u, point, windows = _map_and_points(args)
    if point is None:
        points = [MAP_CASES[args.case].point(MAP_CASES[args.case].default_point)] if args.case \
            else u.source.sample_points()
    else:
        points = [point]
    F = windows[0] if windows else tuple(u.target.dual_points())
    results = [extension.tilde_u(u, x, F, _depth(args)) for x in points]
    lines = [f"ũ({r.point})↾{{{','.join(r.window)}}} = {_fmt_values(r.values)}"
             f"{'' if r.stabilized else ' (not stabilized)'}" for r in results]
    return Output(all(r.stabilized for r in results), "\n".join(lines),
                  {"windows": [r.to_dict() for r in results]})


def cmd_smooth(args) -> Output:
    u, point, windows = _map_and_points(args)
    v = extension.check_smooth(u, [point] if point else None, windows, _depth(args))
    return Output(v.holds, v.describe(), {"holds": v.holds, "depth": v.depth,
                                          "checked": v.checked, "witness": v.witness})


def cmd_strong(args) -> Output:
    u, point, windows = _map_and_points(args)
    v = extension.check_strong(u, [point] if point else None, windows, _depth(args))
    return Output(v.holds, v.describe(), {"holds": v.holds, "depth": v.depth,
                                          "checked": v.checked, "witness": v.witness})


def cmd_updown(args) -> Output:
    u, point, windows = _map_and_points(args)
    if point is None:
        point = (MAP_CASES[args.case].point(MAP_CASES[args.case].default_point) if args.case
                 else u.source.sample_points()[0])
    F = windows[0] if windows else tuple(u.target.dual_points())
    M = u.target.ego.algebra
    if args.order:
        try:
            perm = [int(t) for t in args.order.split(",")]
        except ValueError:
            raise CliError(f"bad order {args.order!r}; give a permutation such as 1,0") from None
        try:
            order = TotalOrder.on(M, perm)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    else:
        order = TotalOrder.on(M)
    r = extension.upper_lower(u, point, F, _depth(args), order)
    text = (f"u^∇({point.label}) = {tuple(r.lower)}, u^Δ({point.label}) = {tuple(r.upper)}, "
            f"window {_fmt_values(r.window)}"
            f"{'' if r.stabilized else ' (not stabilized)'}")
    ok = r.stabilized and r.sandwich and (r.matches_window or not order.algebraic)
    return Output(ok, text, {"point": point.label, "lower": list(r.lower), "upper": list(r.upper),
                             "window": [list(v) for v in r.window],
                             "matches_window": r.matches_window, "sandwich": r.sandwich,
                             "order": list(order.perm), "algebraic_order": order.algebraic,
                             "stabilized": r.stabilized})


def cmd_product_check(args) -> Output:
    if len(args.inputs) != 2:
        raise CliError("product-check takes two algebra documents")
    A, ego = _algebra_and_ego(args, args.inputs[0])
    B = load_algebra(args.inputs[1])
    r = duality.check_product_theorem(A, B, ego)
    con, _ = duality.check_congruence_product(A, B, args.guard or 64)
    text = (f"(A×B)^δ ≅ A^δ×B^δ: {r.extension_holds}; (A×B)* ≅ A* ⨿ B*: {r.dual_holds}; "
            f"Con(A)×Con(B) ≅ Con(A×B): {con}")
    ok = r.extension_holds and r.dual_holds and con
    return Output(ok, text, {"extension_iso": r.extension_iso, "dual_iso": r.dual_iso,
                             "congruences": con})


def cmd_boolean_power(args) -> Output:
    k = args.n if args.n is not None else 2
    r = finite_studies.ternary_boolean_check(k)
    text = (f"2^{k}: |A^δ| = {r['extension_size']} (full product: {r['full_product']}), "
            f"x^c {'exists' if r['complement_exists'] else 'missing'}, "
            f"(x,z,x^c) = z on {r['identity_checked']} pairs with "
            f"{len(r['identity_failures'])} failures, "
            f"{sum(r['boolean_reducts'].values())}/{len(r['boolean_reducts'])} Boolean reducts")
    return Output(r["holds"], text, r)


def cmd_case(args) -> Output:
    name = _one_input(args, "case name")
    if name not in CASES:
        raise CliError(f"unknown case {name!r}; run list-cases")
    r = CASES[name].run(args)
    return Output(r.verified, r.text, r.report, r.dot)


def cmd_list_cases(args) -> Output:
    lines = [f"{c.name:18} {c.summary}" for c in CASES.values()]
    lines.append("maps for extend/smooth/strong/updown --case: " + ", ".join(MAP_CASES))
    return Output(True, "\n".join(lines), {"cases": {c.name: c.summary for c in CASES.values()},
                                           "map_cases": list(MAP_CASES)})


def _one_input(args, what="algebra document") -> str:
    if len(args.inputs) != 1:
        raise CliError(f"expected one {what}")
    return args.inputs[0]


VERBS = {
    "dual": (cmd_dual, duality.dual_of),
    "bidual": (cmd_bidual, duality.check_duality),
    "natext": (cmd_natext, duality.natural_extension),
    "basis": (cmd_basis, duality.delta_basis),
    "extend": (cmd_extend, extension.tilde_u),
    "smooth": (cmd_smooth, extension.check_smooth),
    "strong": (cmd_strong, extension.check_strong),
    "updown": (cmd_updown, extension.upper_lower),
    "product-check": (cmd_product_check, duality.check_product_theorem),
    "boolean-power": (cmd_boolean_power, finite_studies.ternary_boolean_check),
    "case": (cmd_case, CASES),
    "list-cases": (cmd_list_cases, CASES.keys),
}


class _Parser(argparse.ArgumentParser):
    # usage errors share exit status 1 with every other error; 2 means falsified
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="natext",
                description="Natural dualities, natural extensions and extensions of maps.")
    p.add_argument("verb", choices=list(VERBS))
    p.add_argument("inputs", nargs="*", help="documents (paths or builtin:NAME) or a case name")
    p.add_argument("--ego", help="alter ego document or builtin:median / builtin:bounded-dl")
    p.add_argument("--case", help="named map for extend, smooth, strong and updown")
    p.add_argument("--point", help="point of the natural extension (e.g. evens, ∞, a3, e(01))")
    p.add_argument("--depth", type=int, help="truncation depth for symbolic cases")
    p.add_argument("--window", help="dual points of the target, e.g. 0,1 or φ₀,φ₁")
    p.add_argument("--order", help="total order on M as a permutation, least first")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--guard", type=int, help="size guard for exponential enumerations")
    p.add_argument("--m", type=int, help="first index for median-infinity")
    p.add_argument("--n", type=int, help="second index, tree level or power exponent")
    p.add_argument("--kinds", help="element kinds for median-infinity, e.g. ab")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_intermixed_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else ERROR
    if args.depth is not None and args.depth < 0:
        print("error: --depth must be non-negative", file=sys.stderr)
        return ERROR
    if args.kinds is not None and (len(args.kinds) != 2 or set(args.kinds) - {"a", "b"}):
        print("error: --kinds takes two letters from a, b", file=sys.stderr)
        return ERROR
    handler, _ = VERBS[args.verb]
    try:
        out = handler(args)
        sys.stdout.write(out.render(args.format))
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return ERROR
    except GuardExceeded as exc:
        print(f"error: guard: {exc}", file=sys.stderr)
        return ERROR
    except (NonAlgebraicEgo, SignatureMismatch) as exc:
        print(f"error: alter ego: {exc}", file=sys.stderr)
        return ERROR
    except NoAlgebraPoint as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return FALSIFIED
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    return OK if out.verified else FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
