"""Named case studies and named example maps, as used by the command line."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..duality import check_duality, dual_of, structure_to_dot
from ..extension import point_window
from ..library import bounded_dls, median2, median_ego
from . import finite_studies, llattice, median_tree


@dataclass
class CaseResult:
    name: str
    verified: bool
    text: str
    report: dict
    dot: str | None = None


@dataclass(frozen=True)
class Case:
    name: str
    summary: str
    run: Callable = field(repr=False)


def _median_dual(opts) -> CaseResult:
    A, ego = median2(), median_ego()
    D = dual_of(A, ego)
    report = check_duality(A, ego)
    leq = sorted((D.zero_set_label(p), D.zero_set_label(q))
                 for p, q in D.structure.relations["≤"] if p != q)
    bullet = {D.zero_set_label(p): D.zero_set_label(int(q))
              for p, q in enumerate(D.structure.operations["•"])}
    ok = D.size == 4 and report.holds and report.extension_size == 2
    text = (f"|A*| = {D.size}, |A^δ| = {report.extension_size}, "
            f"e_A {'bijective' if report.holds else 'not bijective'}")
    labels = [D.zero_set_label(i) for i in range(D.size)]
    return CaseResult("median-dual", ok, text,
                      {"dual_size": D.size, "order": leq, "bullet": bullet,
                       "constants": {c: labels[v] for c, v in D.structure.constants.items()},
                       "extension_size": report.extension_size, "duality": report.holds},
                      structure_to_dot(D.structure, "dual of 2", labels, converse=True))


def _median_tree_dual(opts) -> CaseResult:
    n = 2 if opts.n is None else opts.n
    D = median_tree.MedianTreeDual()
    S, pts = D.slice(n)
    finite = dual_of(median_tree.build_median_tree(n), median_ego())
    from ..iso import find_isomorphism

    iso = find_isomorphism(S, finite.structure)
    ok = iso is not None and D.check_filtration(n)
    text = (f"level {n}: {S.size} dual points, "
            f"{'isomorphic' if iso is not None else 'not isomorphic'} to the dual of the level-{n} tree")
    return CaseResult("median-tree-dual", ok, text,
                      {"level": n, "points": [D.label(p) for p in pts], "isomorphic": iso is not None},
                      structure_to_dot(S, f"tree dual level {n}", [D.label(p) for p in pts],
                                       converse=True))


def _median_infinity(opts) -> CaseResult:
    m = 2 if opts.m is None else opts.m
    n = 5 if opts.n is None else opts.n
    kinds = tuple(opts.kinds) if getattr(opts, "kinds", None) else ("a", "b")
    label = median_tree.median_triple_with_infinity(m, n, kinds)
    expected = f"a{max(m, n)}"
    pretty = f"{label[0]}_{label[1:]}"
    return CaseResult("median-infinity", label == expected, pretty,
                      {"m": m, "n": n, "kinds": list(kinds), "value": pretty,
                       "expected": f"a_{max(m, n)}"})


def _median_u_prime(opts) -> CaseResult:
    depth = opts.depth if opts.depth is not None else 8
    r = median_tree.median_u_prime_smoothness(depth)
    ok = (r["window_at_infinity"] == ["0"] and r["smooth"]
          and all(w == ["0", "1"] for w in r["without_witness"]) and r["anchor_b3"] == ["1"])
    text = (f"u′ window at ∞ = {{{','.join(r['window_at_infinity'])}}} via {r['witness']}; "
            f"without witness = {{{','.join(r['without_witness'][-1])}}} at depth {depth}")
    return CaseResult("median-u-prime", ok, text, r)


def _median_membership(opts) -> CaseResult:
    level = 6 if opts.n is None else opts.n
    r = median_tree.membership_tables(level)
    r["union_gaps"] = [list(g) for g in r["union_gaps"]]
    text = f"{r['checked']} memberships checked up to level {level}, {len(r['mismatches'])} mismatches"
    return CaseResult("median-membership", r["holds"], text, r)


def _ternary_boolean(opts) -> CaseResult:
    k = 2 if opts.n is None else opts.n
    r = finite_studies.ternary_boolean_check(k)
    text = (f"2^{k}: |A^δ| = {r['extension_size']}, complement "
            f"{'exists' if r['complement_exists'] else 'missing'}, "
            f"{len(r['identity_failures'])} failures of (x,z,x^c) = z, "
            f"{sum(r['boolean_reducts'].values())}/{len(r['boolean_reducts'])} Boolean reducts")
    return CaseResult("ternary-boolean", r["holds"], text, r)


def _dl_delta(opts) -> CaseResult:
    reports = [finite_studies.dl_delta_equals_delta_prime(L) for L in bounded_dls(6)]
    ok = all(r["holds"] for r in reports)
    text = f"{sum(r['holds'] for r in reports)}/{len(reports)} bounded DLs up to size 6 match"
    return CaseResult("dl-delta", ok, text, {"lattices": reports})


def _cover_formula(opts) -> CaseResult:
    sweeps = finite_studies.cover_formula_suite()
    ok = all(s["holds"] for s in sweeps)
    text = "; ".join(f"size {s['size']}: {len(s['disagreements'])}/{s['instances']} disagreements"
                     for s in sweeps)
    return CaseResult("cover-formula", ok, text, {"sweeps": sweeps})


def _l_case(name):
    def run(opts) -> CaseResult:
        from ..extension import check_smooth, check_strong, hom_violation, upper_lower

        u, expected = llattice.l_case_functions()[name]
        depth = opts.depth if opts.depth is not None else u.source.default_depth
        x = llattice.subset_point(llattice.EPSet.evens())
        full = tuple(u.target.dual_points())
        report = {"map": u.name, "expected": {k: _plain(v) for k, v in expected.items()}}
        ok = True
        smooth = check_smooth(u, depth=depth)
        report["smooth"] = smooth.describe()
        ok &= smooth.holds == expected["smooth"]
        if "values" in expected:
            w = point_window(u, x, full, depth)
            ul = upper_lower(u, x, full, depth)
            report.update(window=_plain(w.values), lower=list(ul.lower), upper=list(ul.upper))
            ok &= (w.values == expected["values"] and ul.lower == expected["lower"]
                   and ul.upper == expected["upper"])
        if "strong" in expected:
            strong = check_strong(u, depth=depth)
            report["strong"] = strong.describe()
            report["strong_witness"] = _plain(strong.witness)
            ok &= strong.holds == expected["strong"]
        if "hom" in expected:
            v = hom_violation(u, 3)
            report["hom_violation"] = _plain(v)
            ok &= (v is None) == expected["hom"]
        lines = [report["smooth"]]
        if "window" in report:
            lines.append(f"window at evens {report['window']}, u^∇ = {tuple(report['lower'])}, "
                         f"u^Δ = {tuple(report['upper'])}")
        if "strong" in report:
            lines.append(report["strong"])
        if "hom_violation" in report:
            lines.append(f"not a homomorphism: {report['hom_violation']}" if report["hom_violation"]
                         else "homomorphism")
        return CaseResult(name, bool(ok), "\n".join(lines), report)
    return run


def _plain(v):
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


CASES = {c.name: c for c in [
    Case("median-dual", "dual and bidual of the median algebra 2", _median_dual),
    Case("median-tree-dual", "level-n slice of the dual of the median tree (--n)", _median_tree_dual),
    Case("median-infinity", "(∞, x_m, y_n) in the median tree (--m, --n, --kinds)", _median_infinity),
    Case("median-u-prime", "smoothness of u′ at ∞ with and without the registered witness",
         _median_u_prime),
    Case("median-membership", "e(a_n), e(b_n), ∞ against their descriptions (--n level)",
         _median_membership),
    Case("ternary-boolean", "Boolean power 2^k is a ternary Boolean algebra (--n k)", _ternary_boolean),
    Case("dl-delta", "δ = δ′ on bounded distributive lattices up to size 6", _dl_delta),
    Case("cover-formula", "median cover equality against the open formula on 2 and 2²",
         _cover_formula),
    Case("l-parity", "parity on the lattice L", _l_case("l-parity")),
    Case("l-pair-parity", "pair-parity L -> 2²", _l_case("l-pair-parity")),
    Case("l-u-evens", "u_A on L with A the even numbers", _l_case("l-u-evens")),
    Case("l-neg-phi0", "negation composed with φ₀ on L", _l_case("l-neg-phi0")),
]}


@dataclass(frozen=True)
class MapCase:
    """A named map with a point parser and the point and window used by default."""

    name: str
    make: Callable
    point: Callable          # text -> ProElement
    default_point: str


def _median_point(text: str):
    site = median_tree.MedianTreeSite()
    if text == "∞":
        return median_tree.INFINITY
    if len(text) >= 2 and text[0] in "ab" and text[1:].isdigit():
        return site.embed((text[0], int(text[1:])))
    raise ValueError(f"unknown median tree point {text!r}; use ∞, aN or bN")


def _l_point(text: str):
    if text == "ω":
        return llattice.LSite().embed(llattice.OMEGA)
    if text.startswith("{") and text.endswith("}"):
        inner = text[1:-1].strip()
        return llattice.subset_point(llattice.EPSet.finite(
            int(v) for v in inner.split(",") if v.strip()))
    return llattice.subset_point(llattice.EPSet.parse(text))


MAP_CASES = {
    "median-u-prime": MapCase("median-u-prime", median_tree.u_prime_map, _median_point, "∞"),
    **{name: MapCase(name, (lambda name=name: llattice.l_case_functions()[name][0]), _l_point,
                     "evens")
       for name in ("l-parity", "l-pair-parity", "l-u-evens", "l-neg-phi0")},
}
