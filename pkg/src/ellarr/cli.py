"""Batch front door: parse an input, run one command, emit one table.

Inputs are JSON files with either an explicit defining matrix (``n``,
``divisors``, optional ``offsets`` with entries like "2/5" per circle
coordinate), a ``graph`` object, or a ``braid`` count.  All rationals in
the output are serialized as strings "p/q"; tables are sparse with "p,q"
keys.  Identical inputs produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import arrangement as arr_mod
from . import braid as braid_mod
from . import cohomology, formality, reptheory
from .arrangement import Arrangement, ArrangementError
from .model import BigradedDGA, add, scale, sub


class InputError(ValueError):
    pass


def parse_input(path: str):
    """Arrangement or SimpleGraph from a JSON job file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s: line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg)) from exc
    if not isinstance(data, dict):
        raise InputError("%s: top level must be an object" % path)
    kinds = [k for k in ("divisors", "graph", "braid") if k in data]
    if len(kinds) != 1:
        raise InputError("%s: need exactly one of 'divisors', 'graph', 'braid'"
                         % path)
    if "braid" in data:
        return braid_mod.braid_arrangement(int(data["braid"]))
    if "graph" in data:
        g = data["graph"]
        try:
            return formality.SimpleGraph(int(g["vertices"]),
                                         tuple((int(a), int(b))
                                               for a, b in g["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("%s: bad graph: %s" % (path, exc)) from exc
    try:
        n = int(data["n"])
        divisors = [tuple(int(x) for x in col) for col in data["divisors"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("%s: bad matrix input: %s" % (path, exc)) from exc
    for k, col in enumerate(divisors):
        if len(col) != n:
            raise InputError("%s: divisor %d has %d entries, expected n=%d"
                             % (path, k, len(col), n))
    offsets = ()
    if "offsets" in data:
        try:
            offsets = tuple((Fraction(a), Fraction(b))
                            for a, b in data["offsets"])
        except (TypeError, ValueError) as exc:
            raise InputError("%s: bad offsets: %s" % (path, exc)) from exc
    try:
        return Arrangement(n, tuple(divisors), offsets)
    except ArrangementError as exc:
        raise InputError("%s: %s" % (path, exc)) from exc


def print_arrangement(arr: Arrangement) -> dict:
    out = {"n": arr.n, "divisors": [list(c) for c in arr.columns]}
    if any(a or b for a, b in arr.offsets):
        out["offsets"] = [[str(a), str(b)] for a, b in arr.offsets]
    return out


def _table_json(table: cohomology.BettiTable) -> dict:
    return {"%d,%d" % k: v for k, v in sorted(table.entries.items())}


def _weights_json(table: cohomology.BettiTable) -> dict:
    return {"%d,%d" % k: {str(a): v for a, v in sorted(w.items())}
            for k, w in sorted(table.weights.items())}


def _prepare(source):
    if isinstance(source, formality.SimpleGraph):
        return formality.graphic_arrangement(source), source
    return source, None


def cmd_poset(source, args) -> dict:
    arr, _ = _prepare(source)
    poset = arr_mod.build_poset(arr)
    return {
        "input": print_arrangement(arr),
        "poset": {
            "layers_per_rank": {str(r): c
                                for r, c in poset.counts_by_rank().items()},
            "covers": [list(c) for c in poset.covers()],
            "essential": arr_mod.is_essential(arr),
            "unimodular": arr_mod.is_unimodular(arr),
        },
    }


def cmd_betti(source, args) -> dict:
    arr, _ = _prepare(source)
    t2, t3 = _betti_tables_jobs(arr, args.jobs)
    return {
        "input": print_arrangement(arr),
        "betti_page2": _table_json(t2),
        "betti_page3": _table_json(t3),
        "weights_page3": _weights_json(t3),
        "poincare": t3.total_betti(),
        "euler": t2.euler(),
    }


def _betti_tables_jobs(arr: Arrangement, jobs: int):
    return cohomology.betti_tables(arr, jobs=jobs)


def cmd_euler(source, args) -> dict:
    arr, _ = _prepare(source)
    core_arr, _, _ = cohomology.essentialize(arr)
    dga = BigradedDGA(core_arr)
    chi_core = cohomology.page2_table(dga).euler()
    chi = 0 if core_arr.n != arr.n else chi_core
    return {"input": print_arrangement(arr), "euler": chi,
            "euler_essential_core": chi_core}


def cmd_braid_table(source, args) -> dict:
    arr, _ = _prepare(source)
    n = arr.n
    if arr.columns != braid_mod.braid_arrangement(n).columns:
        raise InputError("braid-table needs a braid input (use --braid N)")
    t2, t3 = _betti_tables_jobs(arr, args.jobs)
    core = braid_mod.braid_model(n)
    t3core = cohomology.page3_table(core)
    expected = braid_mod.expected_dims(n)
    observed_lc = {}
    for q in range(1, n - 1):
        observed_lc[str(q)] = t3core.dim(1, q)
    return {
        "input": print_arrangement(arr),
        "betti_page2": _table_json(t2),
        "betti_page3": _table_json(t3),
        "betti_page3_reduced": _table_json(t3core),
        "weights_page3_reduced": _weights_json(t3core),
        "poincare": t3.total_betti(),
        "euler": t2.euler(),
        "stirling_row": [braid_mod.stirling_first(n, n - q) for q in range(n)],
        "tutte": {"%d,%d" % k: v
                  for k, v in sorted(braid_mod.tutte_polynomial(n).items())},
        "poincare_hyperplane": braid_mod.poincare_hyperplane(n),
        "expected": {k: {str(i): v for i, v in sorted(d.items())}
                     for k, d in expected.items()},
        "observed_e3_1q_reduced": observed_lc,
        "cocycle_lower_bound_2_binom_q_fact": {
            str(q): 2 * _comb(n, q + 2) * _factorial(q)
            for q in range(1, n - 1)},
    }


def _comb(n, k):
    from math import comb
    return comb(n, k)


def _factorial(k):
    from math import factorial
    return factorial(k)


def cmd_rep_decompose(source, args) -> dict:
    arr, _ = _prepare(source)
    n = arr.n
    if arr.columns != braid_mod.braid_arrangement(n).columns:
        raise InputError("rep-decompose needs a braid input (use --braid N)")
    if n > args.rep_bound:
        raise InputError("n=%d exceeds --rep-bound %d" % (n, args.rep_bound))
    t2, _ = _betti_tables_jobs(arr, args.jobs)
    reps = {}
    for (p, q) in sorted(t2.entries):
        rows = reptheory.bidegree_decomposition(n, p, q, args.rep_bound)
        if rows:
            reps["%d,%d" % (p, q)] = rows
    return {"input": print_arrangement(arr), "representations": reps}


def cmd_formality(source, args) -> dict:
    if isinstance(source, formality.SimpleGraph):
        graph = source
    else:
        graph = _graph_from_arrangement(source)
    formal, cert = formality.is_one_formal(graph)
    out = {"graph": {"vertices": graph.n, "edges": [list(e) for e in graph.edges]},
           "formality": {"one_formal": formal}}
    if formal:
        out["formality"]["vanishing"] = cert["vanishing"]
    else:
        out["formality"]["witness"] = {
            "triangle": list(cert["triangle"]),
            "xcoeffs": cert["xcoeffs"],
            "ycoeffs": cert["ycoeffs"],
            "in_page3_resonance": cert["witness_in_page3_resonance"],
            "in_page2_resonance": cert["witness_in_page2_resonance"],
            "gap_certified": cert["gap_certified"],
        }
    return out


def _graph_from_arrangement(arr: Arrangement) -> formality.SimpleGraph:
    edges = []
    for col in arr.columns:
        pos = [i + 1 for i, x in enumerate(col) if x == 1]
        neg = [i + 1 for i, x in enumerate(col) if x == -1]
        rest = [x for x in col if x not in (-1, 0, 1)]
        if len(pos) != 1 or len(neg) != 1 or rest:
            raise InputError("formality needs a graphic arrangement "
                             "(columns e_i - e_j) or a --graph input")
        edges.append((pos[0], neg[0]))
    return formality.SimpleGraph(arr.n, tuple(edges))


def cmd_verify_all(source, args) -> dict:
    """Invariant suite for the given input; any failure exits nonzero."""
    arr, graph = _prepare(source)
    checks = []

    def check(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": str(detail)})

    core_arr, _, nbars = cohomology.essentialize(arr)
    dga = BigradedDGA(core_arr)

    report = dga.verify_model_dimension()
    check("dimension-audit", report["matches_4_pow_corank"], report)

    dd_ok = True
    for (p, q) in dga.bidegrees():
        for mono in dga.basis(p, q):
            if dga.d(dga.d({mono: Fraction(1)})):
                dd_ok = False
    check("d-squared-zero", dd_ok)

    circ_ok = True
    for circuit in arr_mod.circuits(core_arr):
        rank = len(circuit) - 1
        for lid in _circuit_components(dga, circuit):
            total = {}
            for t, i in enumerate(circuit):
                rest = tuple(x for x in circuit if x != i)
                term = dga.omega(lid, rest)
                total = add(total, scale(term, (-1) ** t))
            if total:
                circ_ok = False
    check("circuit-relations", circ_ok)

    rng = random.Random(2718281828)
    monos = [m for (p, q) in dga.bidegrees() for m in dga.basis(p, q)]
    leib_ok = True
    comm_ok = True
    pairs = min(len(monos) ** 2, 400)
    for _ in range(pairs):
        m1 = rng.choice(monos)
        m2 = rng.choice(monos)
        e1 = {m1: Fraction(1)}
        e2 = {m2: Fraction(1)}
        prod = dga.multiply(e1, e2)
        lhs = dga.d(prod)
        sign = -1 if (len(m1[2]) + len(m1[1])) % 2 else 1
        rhs = add(dga.multiply(dga.d(e1), e2),
                  scale(dga.multiply(e1, dga.d(e2)), sign))
        if sub(lhs, rhs):
            leib_ok = False
        swap = -1 if ((len(m1[2]) + len(m1[1]))
                      * (len(m2[2]) + len(m2[1]))) % 2 else 1
        if sub(prod, scale(dga.multiply(e2, e1), swap)):
            comm_ok = False
    check("leibniz-sampled", leib_ok)
    check("graded-commutativity-sampled", comm_ok)

    t2c = cohomology.page2_table(dga)
    t3c = cohomology.page3_table(dga)
    t2 = cohomology.tensor_with_curve(t2c, nbars) if nbars else t2c
    t3 = cohomology.tensor_with_curve(t3c, nbars) if nbars else t3c
    van = cohomology.verify_vanishing(arr, t3, t2c, t3c)
    check("vanishing-and-triangles", van["ok"], van["violations"])
    check("euler-consistency", t2.euler() == t3.euler(),
          "%s vs %s" % (t2.euler(), t3.euler()))

    if arr.size and arr.columns == braid_mod.braid_arrangement(arr.n).columns:
        n = arr.n
        fc = cohomology.verify_first_column(dga)
        check("first-column-injective", fc["ok"], fc["failures"])
        stirling_ok = all(dga.dim(0, q) == braid_mod.stirling_first(n, n - q)
                          for q in range(n))
        check("stirling-first-column", stirling_ok)
        forest_ok = braid_mod.labelled_forest_counts(n) == dict(t2.entries)
        check("labelled-forest-counts", forest_ok)
        lc_ok = True
        for q in range(1, n - 1):
            got = braid_mod.cocycle_span_rank(n, q)
            want = 2 * _comb(n, q + 2) * _factorial(q)
            if got != want:
                lc_ok = False
        check("circuit-cocycle-ranks", lc_ok)

    if graph is not None:
        formal, cert = formality.is_one_formal(graph)
        agree = formal == (graph.has_triangle() is None)
        check("formality-criterion", agree)
        if not formal:
            check("resonance-gap-witness", cert["gap_certified"])

    ok = all(c["ok"] for c in checks)
    return {"input": print_arrangement(arr), "verify": checks, "ok": ok}


def _circuit_components(dga: BigradedDGA, circuit) -> list[int]:
    sub_iset = tuple(sorted(circuit))[1:]
    members = set(circuit)
    return [lid for lid in dga.poset.layers_associated(sub_iset)
            if members <= dga.poset.layers[lid].flat]


COMMANDS = {
    "poset": cmd_poset,
    "betti": cmd_betti,
    "euler": cmd_euler,
    "braid-table": cmd_braid_table,
    "rep-decompose": cmd_rep_decompose,
    "formality": cmd_formality,
    "verify-all": cmd_verify_all,
}


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k in value:
            _flatten("%s.%s" % (prefix, k) if prefix else str(k), value[k], rows)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            rows.append((prefix, ";".join(str(v) for v in value)))
        else:
            for i, v in enumerate(value):
                _flatten("%s[%d]" % (prefix, i), v, rows)
    else:
        rows.append((prefix, value))


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows: list = []
        _flatten("", result, rows)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in rows:
            writer.writerow([key, value])
        return buf.getvalue()
    lines = []
    rows = []
    _flatten("", result, rows)
    width = max((len(k) for k, _ in rows), default=0)
    for key, value in rows:
        lines.append("%-*s  %s" % (width, key, value))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellarr",
        description="Exact computations for arrangements of divisors on "
                    "products of an elliptic curve.")
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE",
                     help="JSON job file (matrix, graph, or braid)")
    src.add_argument("--braid", type=int, metavar="N",
                     help="diagonal arrangement on N coordinates")
    src.add_argument("--graph", metavar="FILE",
                     help="JSON file with a graph object")
    parser.add_argument("--cmd", default="betti", choices=sorted(COMMANDS),
                        help="computation to run (default: betti)")
    parser.add_argument("--format", default="json",
                        choices=["json", "csv", "text"])
    parser.add_argument("--jobs", type=int, default=1, metavar="K",
                        help="parallel rank workers (default 1)")
    parser.add_argument("--rep-bound", type=int, default=8, metavar="N",
                        help="enumeration bound for representation work")
    parser.add_argument("--verify", action="store_true",
                        help="also run the verify-all suite afterwards")
    parser.add_argument("--output", metavar="FILE", default=None,
                        help="write to a file instead of stdout")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.jobs < 1 or args.rep_bound < 1:
            raise InputError("--jobs and --rep-bound must be positive")
        if args.braid is not None:
            if args.braid < 2:
                raise InputError("--braid needs N >= 2")
            source = braid_mod.braid_arrangement(args.braid)
        elif args.graph is not None:
            source = parse_input(args.graph)
            if not isinstance(source, formality.SimpleGraph):
                raise InputError("%s does not contain a graph" % args.graph)
        else:
            source = parse_input(args.input)
        result = COMMANDS[args.cmd](source, args)
        code = 0
        if args.cmd == "verify-all" and not result["ok"]:
            code = 2
        if args.verify and args.cmd != "verify-all":
            vres = cmd_verify_all(source, args)
            result["verify"] = vres["verify"]
            if not vres["ok"]:
                code = 2
    except (InputError, ArrangementError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    text = render(result, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
