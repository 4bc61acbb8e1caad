"""Command line front end: ``gammamon <command> SOURCE [options]``.

SOURCE is an instance file, ``-`` for standard input, or
``builtin:NAME[:p1,p2,...]`` (for example ``builtin:paper-T7`` or
``builtin:shifted-power:1,4``).

Exit codes: 0 success or a true verdict, 1 a false verdict, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .action import GammaStructure, cyclic_action
from .corpus import (
    ACTION_SOURCES,
    CorpusSpec,
    build_corpus,
    builtin,
    key_digest,
    manifest_line,
    paper_t7,
)
from .errors import GammaMonoidError
from .fileformat import format_instance, load_instance
from .ideals import (
    IdealSet,
    all_order_ideals,
    as_ideal,
    atoms,
    describe_violation,
    full_ideal,
    ideal_sum,
    is_simple,
)
from .monoid import is_cancellative, is_conical, is_refinement, minimal_elements
from .quotients import block_names, quotient, require_refinement
from .series import (
    Series,
    all_composition_series,
    chain_condition_report,
    classify_series,
    factor_descriptors,
    is_composition_series,
    schreier_refinement,
    series_equivalent,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID = 0, 1, 2


class Report:
    """Text lines plus the JSON payload of one command."""

    def __init__(self, code=EXIT_OK):
        self.code = code
        self.lines = []
        self.data = {}

    def add(self, line=""):
        self.lines.append(line)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines) + "\n"


# -- formatting ----------------------------------------------------------------

def fmt_set(gs: GammaStructure, elements) -> str:
    return "{" + ",".join(gs.names[a] for a in sorted(elements)) + "}"


def fmt_tuple(gs: GammaStructure, elements) -> str:
    return "(" + ",".join(gs.names[a] for a in elements) + ")"


def fmt_series(gs: GammaStructure, series) -> str:
    return " < ".join(fmt_set(gs, I.elements) for I in series.chain)


def name_list(gs: GammaStructure, elements) -> list:
    return [gs.names[a] for a in sorted(elements)]


def verdict_text(v, gs, witness_fmt=fmt_tuple) -> str:
    if v:
        return "true"
    return f"false {witness_fmt(gs, v.witness)}"


# -- input ---------------------------------------------------------------------

def _builtin_source(spec: str) -> GammaStructure:
    parts = spec.split(":", 2)
    name = parts[1] if len(parts) > 1 else ""
    params = ()
    if len(parts) == 3 and parts[2]:
        params = tuple(int(p) if p.lstrip("-").isdigit() else p for p in parts[2].split(","))
    return builtin(name, *params)


def load_source(source: str, allow_nonabelian: bool = False, generator=None) -> GammaStructure:
    if source.startswith("builtin:"):
        gs = _builtin_source(source)
    else:
        text = sys.stdin.read() if source == "-" else open(source).read()
        gs = load_instance(text, allow_nonabelian=allow_nonabelian)
    if generator is not None:
        try:
            gen = [gs.monoid.index(tok) for tok in _split_tokens(generator)]
        except ValueError:
            raise SourceError(f"generator {generator!r} names unknown elements") from None
        gs = cyclic_action(gs.monoid, gen)
    return gs


def _split_tokens(text: str) -> list:
    return [t for t in text.replace(",", " ").split() if t]


def parse_ideal(gs: GammaStructure, text: str) -> IdealSet:
    text = text.strip()
    if text in ("T", "all"):
        return full_ideal(gs)
    elems = set()
    for tok in _split_tokens(text):
        try:
            a = gs.monoid.index(tok)
        except ValueError:
            raise SourceError(f"unknown element {tok!r}") from None
        if not 0 <= a < gs.size:
            raise SourceError(f"element index {a} out of range")
        elems.add(a)
    return as_ideal(gs, elems)


def parse_series(gs: GammaStructure, text: str) -> list:
    """Ideals separated by ``;``, elements by ``,``; ``T`` names the whole set."""
    return [parse_ideal(gs, part) for part in text.split(";") if part.strip()]


class SourceError(GammaMonoidError, ValueError):
    pass


# -- commands --------------------------------------------------------------------

def cmd_validate(gs: GammaStructure) -> Report:
    r = Report()
    g = "trivial" if gs.group.is_trivial else f"of order {gs.group.size}"
    r.add(f"valid Γ-monoid, n={gs.size}, Γ {g}")
    r.data = {"valid": True, "n": gs.size, "group_order": gs.group.size, "names": list(gs.names)}
    return r


def cmd_props(gs: GammaStructure) -> Report:
    M = gs.monoid
    r = Report()
    conical = is_conical(M)
    canc = is_cancellative(M)
    ref = is_refinement(M)
    lit = minimal_elements(M, "literal")
    nz = minimal_elements(M, "nonzero")
    r.add(f"conical: {verdict_text(conical, gs)}")
    r.add(f"cancellative: {verdict_text(canc, gs)}")
    r.add(f"refinement: {verdict_text(ref, gs)}")
    r.add(f"minimal (literal): {fmt_set(gs, lit)}")
    r.add(f"minimal (nonzero): {fmt_set(gs, nz)}")

    def jv(v):
        return {"holds": bool(v), "witness": None if v else name_list_ordered(gs, v.witness)}

    r.data = {
        "conical": jv(conical),
        "cancellative": jv(canc),
        "refinement": jv(ref),
        "minimal_literal": name_list(gs, lit),
        "minimal_nonzero": name_list(gs, nz),
    }
    return r


def name_list_ordered(gs, elements) -> list:
    return [gs.names[a] for a in elements]


def cmd_ideals(gs: GammaStructure) -> Report:
    lat = all_order_ideals(gs)
    r = Report()
    r.add(f"ideals: {len(lat)}")
    for i, I in enumerate(lat.ideals):
        r.add(f"  I{i} {fmt_set(gs, I.elements)}")
    r.add("covers: " + " ".join(f"I{i}<I{j}" for i, j in lat.covers))
    ats = atoms(lat)
    r.add("atoms: " + " ".join(f"I{lat.index[A]}" for A in ats))
    r.add(f"height: {lat.height()}")
    simple = is_simple(gs, lat)
    r.add(f"simple: {str(simple).lower()}")
    r.data = {
        "ideals": [name_list(gs, I.elements) for I in lat.ideals],
        "covers": [list(c) for c in lat.covers],
        "atoms": [lat.index[A] for A in ats],
        "height": lat.height(),
        "simple": simple,
    }
    return r


def cmd_quotient(gs: GammaStructure, ideal_text: str) -> Report:
    I = parse_ideal(gs, ideal_text)
    qp = quotient(gs, I)
    q = qp.quotient
    r = Report()
    r.add(f"ideal: {fmt_set(gs, I.elements)}")
    r.add(f"classes: {len(qp.classes.blocks)}")
    for name, blk in zip(q.names, qp.classes.blocks):
        r.add(f"  {name} = {fmt_set(gs, blk)}")
    r.add("projection: " + " ".join(f"{gs.names[a]}->{q.names[c]}" for a, c in enumerate(qp.projection)))
    r.add("quotient:")
    for line in format_instance(q).splitlines():
        r.add("  " + line)
    r.data = {
        "ideal": name_list(gs, I.elements),
        "classes": block_names(qp),
        "projection": {gs.names[a]: q.names[c] for a, c in enumerate(qp.projection)},
        "quotient": format_instance(q),
    }
    return r


def _factor_lines(gs, series):
    out = []
    data = []
    for d in factor_descriptors(gs, series):
        key = key_digest(d.key) if d.key is not None else "-"
        out.append(
            f"    {fmt_set(gs, d.upper.elements)} / {fmt_set(gs, d.lower.elements)}: size {d.size}, key {key}, {d.tag}"
        )
        data.append({
            "upper": name_list(gs, d.upper.elements),
            "lower": name_list(gs, d.lower.elements),
            "size": d.size,
            "key": key,
            "tag": d.tag,
        })
    return out, data


def _tag_json(tag):
    return tag if isinstance(tag, str) else {"mixed": tag[1]}


def cmd_series(gs: GammaStructure) -> Report:
    r = Report()
    series = all_composition_series(gs)
    r.add(f"composition series: {len(series)}")
    sdata = []
    for k, s in enumerate(series, start=1):
        r.add(f"  S{k} (length {s.length}): {fmt_series(gs, s)}")
        lines, fdata = _factor_lines(gs, s)
        for line in lines:
            r.add(line)
        tag = classify_series(gs, s)
        r.add(f"    type: {tag if isinstance(tag, str) else 'mixed ' + json.dumps(tag[1], sort_keys=True)}")
        sdata.append({
            "chain": [name_list(gs, I.elements) for I in s.chain],
            "length": s.length,
            "factors": fdata,
            "type": _tag_json(tag),
        })
    equivalent = all(series_equivalent(gs, series[0], s)[0] for s in series[1:])
    r.add(f"equivalent: {str(equivalent).lower()}")
    rep = chain_condition_report(gs)
    r.add(
        f"chain conditions: height {rep.height}, noetherian {str(rep.noetherian).lower()}, "
        f"artinian {str(rep.artinian).lower()}, composition lengths "
        + ",".join(str(x) for x in rep.composition_lengths)
    )
    r.data = {
        "series": sdata,
        "equivalent": equivalent,
        "chain_conditions": {
            "height": rep.height,
            "noetherian": rep.noetherian,
            "artinian": rep.artinian,
            "composition_lengths": list(rep.composition_lengths),
            "bound_holds": rep.bound_holds,
        },
    }
    return r


def cmd_jh(gs: GammaStructure, series1=None, series2=None) -> Report:
    """Schreier refinement of two series with its pairing certificate.

    Without explicit series the first and last composition series are used.
    """
    require_refinement(gs)
    defaults = all_composition_series(gs) if series1 is None or series2 is None else None
    s1 = Series(tuple(parse_series(gs, series1))) if series1 is not None else defaults[0]
    s2 = Series(tuple(parse_series(gs, series2))) if series2 is not None else defaults[-1]
    sr = schreier_refinement(gs, s1, s2)
    r = Report()
    r.add(f"series 1: {fmt_series(gs, s1)}")
    r.add(f"series 2: {fmt_series(gs, s2)}")
    r.add(f"refined 1: {fmt_series(gs, sr.refined1)}")
    r.add(f"refined 2: {fmt_series(gs, sr.refined2)}")
    r.add(f"pairing: {len(sr.pairing)} factors")
    pdata = []
    for i, j, iso in sr.pairing:
        g = sr.refined1.chain
        h = sr.refined2.chain
        r.add(
            f"  {fmt_set(gs, g[i + 1].elements)}/{fmt_set(gs, g[i].elements)} ~ "
            f"{fmt_set(gs, h[j + 1].elements)}/{fmt_set(gs, h[j].elements)} via {list(iso)}"
        )
        pdata.append({"first": i, "second": j, "isomorphism": list(iso)})
    both = is_composition_series(gs, s1) and is_composition_series(gs, s2)
    if both:
        equivalent = series_equivalent(gs, s1, s2)[0]
    else:
        equivalent = len(sr.pairing) == sr.refined1.length == sr.refined2.length
    r.add(f"equivalent: {str(equivalent).lower()}")
    r.code = EXIT_OK if equivalent else EXIT_FALSE
    r.data = {
        "series1": [name_list(gs, I.elements) for I in s1.chain],
        "series2": [name_list(gs, I.elements) for I in s2.chain],
        "refined1": [name_list(gs, I.elements) for I in sr.refined1.chain],
        "refined2": [name_list(gs, I.elements) for I in sr.refined2.chain],
        "pairing": pdata,
        "composition_series": both,
        "equivalent": equivalent,
    }
    return r


DEMOS = ("paper-counterexample", "paper-shift")


def cmd_demo(name: str) -> Report:
    if name == "paper-counterexample":
        return _demo_counterexample()
    if name == "paper-shift":
        return _demo_shift()
    raise SourceError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")


def _demo_counterexample() -> Report:
    gs = paper_t7()
    A = as_ideal(gs, {gs.monoid.index(t) for t in ("0", "1", "x")})
    B = as_ideal(gs, {gs.monoid.index(t) for t in ("0", "y", "z")})
    S, verdict = ideal_sum(gs, A, B)
    ref = is_refinement(gs.monoid)
    r = Report()
    r.add("seven-element monoid, trivial group")
    for line in format_instance(gs).splitlines():
        r.add("  " + line)
    r.add(f"A = {fmt_set(gs, A.elements)}")
    r.add(f"B = {fmt_set(gs, B.elements)}")
    r.add(f"A + B = {fmt_set(gs, S)}")
    r.add(f"A + B is an order-ideal: {str(bool(verdict)).lower()}")
    w = verdict.witness
    x, y = w[3], w[4]
    r.add(f"violation: ({gs.names[x]},{gs.names[y]}) with {describe_violation(gs, w)}")
    r.add(f"refinement: {verdict_text(ref, gs)}")
    r.data = {
        "A": name_list(gs, A.elements),
        "B": name_list(gs, B.elements),
        "sum": name_list(gs, S),
        "sum_is_ideal": bool(verdict),
        "violation": [gs.names[x], gs.names[y]],
        "refinement_witness": name_list_ordered(gs, ref.witness),
    }
    return r


def _demo_shift() -> Report:
    gs = builtin("shifted-power", 1, 4)
    r = Report()
    r.add("{0,1}^4 with the cyclic coordinate shift (group of order 4)")
    props = cmd_props(gs)
    ideals = cmd_ideals(gs)
    series = cmd_series(gs)
    r.lines += props.lines + ideals.lines + series.lines
    r.data = {"props": props.data, "ideals": ideals.data, "series": series.data}
    return r


def cmd_corpus(max_size: int, source: str, refinement_only: bool, out_dir=None, sweep: bool = False) -> Report:
    filters = frozenset({"refinement"}) if refinement_only else frozenset()
    instances = build_corpus(CorpusSpec(max_size=max_size, filters=filters, action_source=source))
    r = Report()
    lines = [manifest_line(inst) for inst in instances]
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "manifest.tsv"), "w") as fh:
            fh.write("# label\tn\tm\tkey\trefinement,conical,cancellative\n")
            fh.write("".join(line + "\n" for line in lines))
        for inst in instances:
            with open(os.path.join(out_dir, inst.label + ".gm"), "w") as fh:
                fh.write(format_instance(inst.gs))
        r.add(f"wrote {len(instances)} instances to {out_dir}")
    else:
        r.lines += lines
    r.data = {"instances": [line.split("\t") for line in lines]}
    if sweep:
        from . import verify

        suites = [
            verify.jordan_holder_suite,
            verify.isomorphism_suite,
            verify.closure_suite,
            verify.quotient_suite,
            verify.chain_suite,
            verify.split_suite,
            verify.canonical_vs_search_suite,
        ]
        results = [suite(instances) for suite in suites]
        for res in results:
            r.add(res.summary().rsplit(",", 1)[0])
            for f in res.failures:
                r.add(f"  {f[0]} {f[1]}")
        r.data["sweep"] = {
            res.name: {"checks": res.checked, "failures": [list(map(str, f)) for f in res.failures]}
            for res in results
        }
        if any(not res.ok for res in results):
            r.code = EXIT_FALSE
    return r


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gammamon", description="Finite commutative monoids with group action.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_source(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("source", help="instance file, '-' or builtin:NAME[:params]")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--allow-nonabelian", action="store_true", help="accept a non-abelian group with a warning")
        sp.add_argument("--generator", help="replace the action by the cyclic group of this permutation")
        return sp

    with_source("validate", "check the axioms")
    with_source("props", "conical, cancellative, refinement, minimal elements")
    with_source("ideals", "lattice of order-ideals")
    q = with_source("quotient", "quotient by an order-ideal")
    q.add_argument("--ideal", required=True, help="comma-separated elements, or T")
    q.add_argument("-o", "--output", help="also write the quotient as an instance file")
    with_source("series", "composition series and their factors")
    j = with_source("jh", "Schreier refinement of two series")
    j.add_argument("--series1", help="ideals separated by ';', elements by ','")
    j.add_argument("--series2", help="ideals separated by ';', elements by ','")

    d = sub.add_parser("demo", help="replay a named example")
    d.add_argument("name", help=" or ".join(DEMOS))
    d.add_argument("--json", action="store_true")

    c = sub.add_parser("corpus", help="enumerate small instances")
    c.add_argument("--max-size", type=int, default=4)
    c.add_argument("--source", choices=ACTION_SOURCES, default="all-cyclic-subgroups")
    c.add_argument("--refinement-only", action="store_true")
    c.add_argument("--out", help="directory for manifest.tsv and instance files")
    c.add_argument("--sweep", action="store_true", help="run the property sweeps over the corpus")
    c.add_argument("--json", action="store_true")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "demo":
            report = cmd_demo(args.name)
        elif args.command == "corpus":
            report = cmd_corpus(args.max_size, args.source, args.refinement_only, args.out, args.sweep)
        else:
            gs = load_source(args.source, args.allow_nonabelian, args.generator)
            if args.command == "validate":
                report = cmd_validate(gs)
            elif args.command == "props":
                report = cmd_props(gs)
            elif args.command == "ideals":
                report = cmd_ideals(gs)
            elif args.command == "quotient":
                report = cmd_quotient(gs, args.ideal)
                if args.output:
                    with open(args.output, "w") as fh:
                        fh.write(report.data["quotient"])
            elif args.command == "series":
                report = cmd_series(gs)
            else:
                report = cmd_jh(gs, args.series1, args.series2)
    except (GammaMonoidError, OSError) as exc:
        kind = type(exc).__name__
        witness = getattr(exc, "witness", None)
        if getattr(args, "json", False):
            stdout.write(json.dumps({"error": kind, "message": str(exc), "witness": _plain(witness)}, sort_keys=True) + "\n")
        else:
            stderr.write(f"error: {kind}: {exc}\n")
        return EXIT_INVALID
    stdout.write(report.render(args.json))
    return report.code


def _plain(w):
    if w is None:
        return None
    if isinstance(w, (tuple, list)):
        return [_plain(x) for x in w]
    if isinstance(w, (int, str, float, bool)):
        return w
    return str(w)


def main() -> None:
    sys.exit(run())
