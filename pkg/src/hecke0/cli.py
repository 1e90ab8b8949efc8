"""Command-line entry point: ``hecke0 <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
All output is deterministic; rationals are printed as ``p/q``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import checks
from .affine import AffineWeylGroup, InfiniteOmegaError, affine_group
from .cocenter import cocenter
from .conjugacy import conjugacy
from .hecke import hecke_pair
from .rootdatum import RootDatumError, catalog_names, load_datum
from .representations import (
    TEST_VALUES,
    Character,
    InducedModule,
    ParahoricDatum,
    VirtualModule,
    catalog,
    character_vector,
    decompose,
    is_rigid,
    is_supersingular,
)


class UsageError(Exception):
    pass


# -- formatting ------------------------------------------------------------------------


def rat(x) -> str:
    return str(Fraction(x))


def vec(v) -> str:
    return "[" + ",".join(rat(x) for x in v) + "]"


def tsv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["\t".join(header)] + ["\t".join(str(c) for c in r) for r in rows]
    return "\n".join(lines) + "\n"


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- shared argument handling ---------------------------------------------------------------


def load_group(args) -> AffineWeylGroup:
    return affine_group(load_datum(args.datum))


def parse_element(W: AffineWeylGroup, text: str):
    try:
        return W.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_J(W: AffineWeylGroup, text: str | None) -> frozenset[int]:
    """``s1,s2``, ``{s1}``, ``F0`` or empty."""
    if text is None or text.strip() in ("", "{}", "none"):
        return frozenset()
    if text.strip() in ("F0", "all"):
        return W.full.J
    out = set()
    for tok in text.strip("{} ").split(","):
        tok = tok.strip()
        if not tok.startswith("s") or not tok[1:].isdigit() or not 1 <= int(tok[1:]) <= W.rd.semisimple_rank:
            raise UsageError(f"{tok!r} is not a finite simple reflection")
        out.add(int(tok[1:]) - 1)
    return frozenset(out)


def parse_chi(pd: ParahoricDatum, text: str | None) -> Character:
    if text is None or not text.strip("() "):
        vals = tuple(Fraction(1) for _ in pd.char_group.orders)
    else:
        try:
            vals = tuple(Fraction(t.strip()) for t in text.strip("() ").split(","))
        except ValueError as exc:
            raise UsageError(f"bad character values {text!r}") from exc
    try:
        return Character(pd, vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def module_from_args(W: AffineWeylGroup, args) -> InducedModule:
    J = parse_J(W, args.J)
    levi = W.levi(J)
    try:
        gamma = levi.parse_set(args.Gamma or "")
        pd = ParahoricDatum(W, J, gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return InducedModule(pd, parse_chi(pd, args.chi))


# -- classes -----------------------------------------------------------------------------------


def pair_fields(W: AffineWeylGroup, conj, cls) -> tuple[str, str, str]:
    p = conj.standard_pair(cls)
    js = "{" + ",".join(f"s{j + 1}" for j in sorted(p.J)) + "}"
    return W.name(p.x), W.levi(p.J).name_set(p.gamma), js


def class_dot(W: AffineWeylGroup, conj, classes) -> str:
    lines = ["graph cyclic_shift {", '  node [shape=box, fontname="monospace"];']
    for k, cls in enumerate(classes):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f'    label="{cls.label}";')
        members = set(cls.members)
        for m in cls.members:
            lines.append(f'    "{W.name(m)}";')
        edges = set()
        for m in cls.members:
            nbrs, _ = conj._neighbours(m)
            for y, st in nbrs:
                if y in members and y != m:
                    a, b = sorted((W.name(m), W.name(y)))
                    edges.add((a, b, st.by))
        for a, b, by in sorted(edges):
            lines.append(f'    "{a}" -- "{b}" [label="{by}"];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_classes(args) -> int:
    W = load_group(args)
    conj = conjugacy(W)
    classes = conj.enumerate_min_classes(args.max_len)
    if args.element:
        m, _ = conj.reduce_to_minimal(parse_element(W, args.element))
        classes = [conj.class_of(m)]
    if args.format == "dot":
        emit(args, class_dot(W, conj, classes))
        return 0
    rows = []
    for c in classes:
        x, gamma, J = pair_fields(W, conj, c)
        rows.append(
            {
                "label": c.label,
                "length": c.length,
                "newton": [rat(v) for v in c.newton],
                "straight": c.straight,
                "rigid": c.rigid,
                "size": len(c.members),
                "pair": {"x": x, "Gamma": gamma, "J": J},
            }
        )
    if args.format == "json":
        emit(args, dump_json({"datum": W.rd.name, "maxLen": args.max_len, "classes": rows}))
    else:
        header = ["label", "length", "newton", "straight", "rigid", "size", "x", "Gamma", "J"]
        emit(
            args,
            tsv(
                header,
                [
                    [r["label"], r["length"], "[" + ",".join(r["newton"]) + "]", str(r["straight"]).lower(),
                     str(r["rigid"]).lower(), r["size"], r["pair"]["x"], r["pair"]["Gamma"], r["pair"]["J"]]
                    for r in rows
                ],
            ),
        )
    return 0


# -- hecke --------------------------------------------------------------------------------------


def hecke_out(args, h) -> None:
    terms = h.to_json()
    for t in terms:
        t["coefficient"] = str(t["coefficient"])
    if args.format == "json":
        emit(args, dump_json(terms))
    else:
        emit(args, tsv(["element", "word", "coefficient"], [[t["element"], t["word"], t["coefficient"]] for t in terms]))


def cmd_hecke(args) -> int:
    W = load_group(args)
    hp = hecke_pair(W)
    alg = hp.algebra(args.mode)
    elts = [parse_element(W, e) for e in args.elements]
    op = args.op
    if op == "mul":
        out = alg.one()
        for e in elts:
            out = alg.times_T(out, e)
    elif op == "pow":
        if len(elts) != 1 or args.n is None or args.n < 0:
            raise UsageError("pow takes one element and --n >= 0")
        out = alg.power(elts[0], args.n)
    elif op == "iota":
        out = alg.zero()
        for e in elts:
            out = out + hp.iota(alg.T(e))
    elif op == "ebasis":
        if len(elts) != 1:
            raise UsageError("ebasis takes one element")
        gen, zero = hp.e_basis(elts[0])
        out = gen if args.mode == "generic" else zero
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(op)
    hecke_out(args, out)
    return 0


# -- cocenter --------------------------------------------------------------------------------------


def cmd_cocenter(args) -> int:
    W = load_group(args)
    coc = cocenter(W)
    if args.op == "project":
        if not args.elements:
            raise UsageError("project needs at least one element")
        z = hecke_pair(W).zero
        h = z.one()
        for e in args.elements:
            h = z.times_T(h, parse_element(W, e))
        proj = coc.project(h)
        keys = sorted(proj, key=W.key)
        if args.format == "json":
            emit(args, dump_json([{"class": W.name(k), "coefficient": proj[k]} for k in keys]))
        else:
            emit(args, tsv(["class", "coefficient"], [[W.name(k), proj[k]] for k in keys]))
        return 0
    if args.op == "table":
        conj = conjugacy(W)
        rows = []
        for e in W.elements_up_to(args.max_len):
            cls, sign = conj.sigma_of(e)
            rows.append([W.name(e), W.length(e), W.name(cls.representative), sign])
        if args.format == "json":
            keys = ("element", "length", "class", "coefficient")
            emit(args, dump_json([dict(zip(keys, r)) for r in rows]))
        else:
            emit(args, tsv(["element", "length", "class", "coefficient"], rows))
        return 0
    rep = coc.commutator_check(args.max_len)
    if args.format == "json":
        emit(args, dump_json({"checked": rep.checked, "violations": [list(map(str, v)) for v in rep.violations]}))
    else:
        emit(args, f"checked\t{rep.checked}\nviolations\t{len(rep.violations)}\n")
    return 0 if rep.ok else 1


# -- modules -----------------------------------------------------------------------------------------


def matrix_json(m) -> list:
    return [[rat(x) for x in row] for row in m]


def cmd_module_build(args) -> int:
    W = load_group(args)
    m = module_from_args(W, args)
    out = {
        "module": m.name,
        "dim": m.dim,
        "nodes": {W.node_names[i]: matrix_json(g) for i, g in enumerate(m.node_matrices)},
        "omega": {W.full.omega_name(t): matrix_json(m.omega_matrix(t)) for t in W.omega_elements() if t != W.identity},
    }
    if args.format == "json":
        emit(args, dump_json(out))
    else:
        rows = [["dim", m.dim]]
        for name, g in out["nodes"].items():
            rows.append([f"T_{name}", json.dumps(g)])
        for name, g in out["omega"].items():
            rows.append([f"T_{name}", json.dumps(g)])
        emit(args, tsv(["key", "value"], rows))
    return 0


def modules_for_table(W, args) -> list:
    if args.J is not None or args.Gamma is not None:
        return [module_from_args(W, args)]
    values = TEST_VALUES if args.chi_set == "test" else (1,)
    return [e.module for e in catalog(W, values)]


def cmd_chartable(args) -> int:
    W = load_group(args)
    classes = conjugacy(W).enumerate_min_classes(args.max_len)
    mods = modules_for_table(W, args)
    labels = [c.label for c in classes]
    table = [(m.name, [m.trace(c.representative) for c in classes]) for m in mods]
    if args.format == "json":
        emit(args, dump_json({"classes": labels, "rows": [{"module": n, "traces": [rat(x) for x in r]} for n, r in table]}))
    else:
        emit(args, tsv(["module"] + labels, [[n] + [rat(x) for x in r] for n, r in table]))
    return 0


def cmd_decompose(args) -> int:
    W = load_group(args)
    conj = conjugacy(W)
    try:
        with open(args.input) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("input must be a JSON object mapping class labels to values")
    target = {}
    for label, value in raw.items():
        m, _ = conj.reduce_to_minimal(parse_element(W, label))
        try:
            target[conj.class_of(m).representative] = Fraction(str(value))
        except ValueError as exc:
            raise UsageError(f"bad value for {label}: {value!r}") from exc
    classes = conj.enumerate_min_classes(args.max_len)
    values = TEST_VALUES if args.chi_set == "test" else (1,)
    d = decompose(target, classes, catalog(W, values))
    out = {"ok": d.ok, "coefficients": dict(sorted(d.coefficients.items())), "reason": d.reason, "offending": d.offending}
    if args.format == "json":
        emit(args, dump_json(out))
    else:
        rows = [[k, v] for k, v in out["coefficients"].items()]
        text = tsv(["module", "coefficient"], rows)
        if not d.ok:
            text += f"# failed: {d.reason} at {d.offending}\n"
        emit(args, text)
    return 0 if d.ok else 1


def cmd_sstest(args) -> int:
    W = load_group(args)
    m = module_from_args(W, args)
    v = VirtualModule([(1, m)])
    rep = is_supersingular(v, W, args.max_len)
    out = {
        "module": m.name,
        "rigid": is_rigid(v, W, args.max_len),
        "eBasis": rep.e_basis,
        "nssTrace": rep.nss_trace,
        "decomposition": rep.decomposition,
        "threshold": rep.threshold,
        "agree": rep.agree,
    }
    if args.format == "json":
        emit(args, dump_json(out))
    else:
        emit(args, tsv(["key", "value"], [[k, json.dumps(x)] for k, x in out.items()]))
    return 0 if rep.agree else 1


# -- verify -----------------------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    data = [args.datum] if args.datum else None
    selected = checks.ACCEPTANCE
    if args.only:
        names = {s.strip() for s in args.only.split(",")}
        selected = [fn for fn in checks.ACCEPTANCE if fn.__name__.removeprefix("check_") in names]
        if not selected:
            raise UsageError(f"no checks named {args.only!r}")
    results = []
    for fn in selected:
        kwargs = {}
        if data is not None:
            kwargs["data"] = tuple(data)
        if args.max_len is not None:
            kwargs["L"] = args.max_len
        results.append(fn(**kwargs))
    if args.format == "json":
        emit(args, dump_json([{"check": r.name, "ok": r.ok, "detail": r.detail} for r in results]))
    else:
        emit(args, "".join(("PASS" if r.ok else "FAIL") + f"\t{r.name}\t{r.detail}\n" for r in results))
    return 0 if all(r.ok for r in results) else 1


def cmd_data(args) -> int:
    if args.datum:
        emit(args, dump_json(load_datum(args.datum).to_json()))
    else:
        emit(args, "".join(n + "\n" for n in catalog_names()))
    return 0


# -- parser --------------------------------------------------------------------------------------------------


def common_parent() -> argparse.ArgumentParser:
    # a fresh parent per subcommand: set_defaults on one subparser would otherwise
    # change the shared action defaults of every other one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", default="A2-ad", help="catalog name or root-datum JSON file")
    common.add_argument("--max-len", type=int, default=4, dest="max_len")
    common.add_argument("--format", choices=("tsv", "json", "dot"), default="tsv")
    common.add_argument("--mode", choices=("generic", "zero"), default="zero")
    common.add_argument("--out", help="write output to this file")
    return common


def module_parent() -> argparse.ArgumentParser:
    mod = argparse.ArgumentParser(add_help=False)
    mod.add_argument("--J", help="subset of F0, e.g. s1,s2 or F0")
    mod.add_argument("--Gamma", help="nodes of the affine diagram of J, e.g. {s1,s0}")
    mod.add_argument("--chi", help="character values on the Smith generators, e.g. 1,-1")
    return mod


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke0", description="Affine 0-Hecke algebras: classes, cocenter, modules.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classes", parents=[common_parent()], help="minimal-length cyclic-shift classes")
    c.add_argument("--element", help="only the class reached from this element")
    c.set_defaults(func=cmd_classes)

    v = sub.add_parser("verify", parents=[common_parent()], help="run the acceptance checks")
    v.set_defaults(datum=None, max_len=None, func=cmd_verify)
    v.add_argument("--only", help="comma-separated check names, e.g. lengths,sigma")

    h = sub.add_parser("hecke", parents=[common_parent()], help="Hecke algebra arithmetic")
    h.add_argument("op", choices=("mul", "pow", "iota", "ebasis"))
    h.add_argument("elements", nargs="+")
    h.add_argument("--n", type=int)
    h.set_defaults(func=cmd_hecke)

    co = sub.add_parser("cocenter", parents=[common_parent()], help="cocenter projection and commutator check")
    co.add_argument("op", choices=("project", "table", "check"))
    co.add_argument("elements", nargs="*")
    co.set_defaults(func=cmd_cocenter)

    m = sub.add_parser("module", help="modules pi(J, Gamma, chi)")
    msub = m.add_subparsers(dest="op", required=True)
    b = msub.add_parser("build", parents=[common_parent(), module_parent()])
    b.set_defaults(func=cmd_module_build)
    for name in ("chartable",):
        t = msub.add_parser(name, parents=[common_parent(), module_parent()])
        t.add_argument("--chi-set", choices=("trivial", "test"), default="trivial", dest="chi_set")
        t.set_defaults(func=cmd_chartable)
    d = msub.add_parser("decompose", parents=[common_parent()])
    d.add_argument("--input", required=True)
    d.add_argument("--chi-set", choices=("trivial", "test"), default="trivial", dest="chi_set")
    d.set_defaults(func=cmd_decompose)
    s = msub.add_parser("sstest", parents=[common_parent(), module_parent()])
    s.set_defaults(func=cmd_sstest)

    tt = sub.add_parser("tracetable", parents=[common_parent(), module_parent()], help="trace table (same as module chartable)")
    tt.add_argument("--chi-set", choices=("trivial", "test"), default="trivial", dest="chi_set")
    tt.set_defaults(func=cmd_chartable)

    dt = sub.add_parser("data", parents=[common_parent()], help="list catalog data or print one as JSON")
    dt.set_defaults(datum=None, func=cmd_data)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "max_len", None) is not None and args.max_len < 0:
        print("error: --max-len must be >= 0", file=sys.stderr)
        return 2
    if getattr(args, "format", None) == "dot" and args.command != "classes":
        print("error: dot output is only available for classes", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, RootDatumError, InfiniteOmegaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
