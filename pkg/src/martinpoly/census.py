"""Batch computation over lists of graphs: a plain-text graph file format,
a persistent line-oriented result cache keyed by canonical form, grouping by
invariant, and the command-line interface."""

from __future__ import annotations

import argparse
import os
import sys
import time
from collections import namedtuple
from fractions import Fraction

from . import families, martin, oracle, polynomial, residues, structure
from .multigraph import (Multigraph, canonical_form, delete_vertex, duplicate,
                         from_edges, is_connected)

GraphRecord = namedtuple("GraphRecord", ["name", "edges"])

InvariantRecord = namedtuple(
    "InvariantRecord", ["name", "key", "n", "degree", "values", "errors",
                        "timestamp"])


def parse_graph_file(path):
    """One graph per nonempty, non-comment line: "name: u1 v1 u2 v2 ...".
    Repeated pairs encode multiplicity, "u u" a self-loop."""
    records = []
    names = set()
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise ValueError("%s:%d: missing 'name:' prefix" % (path, lineno))
            name, rest = line.split(":", 1)
            name = name.strip()
            if not name:
                raise ValueError("%s:%d: empty graph name" % (path, lineno))
            if name in names:
                raise ValueError("%s:%d: duplicate name %r" % (path, lineno, name))
            fields = rest.split()
            if len(fields) % 2:
                raise ValueError("%s:%d: odd number of endpoints" % (path, lineno))
            try:
                ends = [int(f) for f in fields]
            except ValueError:
                raise ValueError("%s:%d: non-integer endpoint" % (path, lineno))
            if any(e < 0 for e in ends):
                raise ValueError("%s:%d: negative vertex label" % (path, lineno))
            edges = list(zip(ends[0::2], ends[1::2]))
            names.add(name)
            records.append(GraphRecord(name, edges))
    return records


def record_to_graph(record):
    n = 1 + max((max(u, v) for (u, v) in record.edges), default=0)
    return from_edges(n, record.edges)


class InvariantCache:
    """Append-only file of "hex-key TAB task TAB value" lines; duplicate
    (key, task) pairs are resolved last-wins and compacted away on load."""

    def __init__(self, path=None):
        self.path = path
        self.data = {}
        if path and os.path.exists(path):
            stale = 0
            with open(path) as fh:
                for line in fh:
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    key_hex, task, value = line.split("\t", 2)
                    if (key_hex, task) in self.data:
                        stale += 1
                    self.data[(key_hex, task)] = value
            if stale:
                self._compact()

    def _compact(self):
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            for (key_hex, task), value in sorted(self.data.items()):
                fh.write("%s\t%s\t%s\n" % (key_hex, task, value))
        os.replace(tmp, self.path)

    def get(self, key_hex, task):
        return self.data.get((key_hex, task))

    def put(self, key_hex, task, value):
        if self.data.get((key_hex, task)) == value:
            return
        self.data[(key_hex, task)] = value
        if self.path:
            with open(self.path, "a") as fh:
                fh.write("%s\t%s\t%s\n" % (key_hex, task, value))


def _format_value(value):
    if isinstance(value, (int, Fraction)):
        return str(value)
    return value


def _compute_task(g, task):
    if task == "M" or (task.startswith("M") and task[1:].isdigit()):
        r = 1 if task == "M" else int(task[1:])
        return _format_value(martin.martin_invariant(duplicate(g, r)))
    if task == "poly":
        coeffs = martin.martin_polynomial(g)
        return ",".join(_format_value(c) for c in coeffs)
    if task == "perm":
        rep = residues.permanent_square_residue(g)
        return "%d mod %d" % (rep.residue, rep.modulus)
    if task.startswith("c2@"):
        p = int(task[3:])
        rep = residues.c2_from_martin(g, p)
        return "%d mod %d" % (rep.residue, rep.modulus)
    raise ValueError("unknown task %r" % task)


def compute_batch(records, tasks, cache=None):
    """Run every task on every record; failures are recorded per task and do
    not abort the batch.  Results come from the cache when present."""
    if cache is None:
        cache = InvariantCache()
    out = []
    for record in records:
        values = {}
        errors = {}
        try:
            g = record_to_graph(record)
            key_hex = canonical_form(g).hex()
            n, degs = g.n, sorted(set(g.degrees()))
            degree = str(degs[0]) if len(degs) == 1 else "mixed"
        except (ValueError, AssertionError) as exc:
            out.append(InvariantRecord(record.name, None, None, None, {},
                                       {"graph": str(exc)}, time.time()))
            continue
        for task in tasks:
            hit = cache.get(key_hex, task)
            if hit is not None:
                values[task] = hit
                continue
            try:
                value = _compute_task(g, task)
            except (ValueError, ZeroDivisionError, oracle.BudgetExceeded) as exc:
                errors[task] = str(exc)
                continue
            values[task] = value
            cache.put(key_hex, task, value)
        out.append(InvariantRecord(record.name, key_hex, n, degree, values,
                                   errors, time.time()))
    return out


def group_by_invariant(records, tasks=None):
    """Partition computed records into classes with equal value tuples.
    Records missing any grouping task form their own class apiece."""
    classes = {}
    for rec in records:
        keys = tasks if tasks is not None else sorted(rec.values)
        try:
            signature = tuple((t, rec.values[t]) for t in keys)
        except KeyError:
            signature = (("incomplete", rec.name),)
        classes.setdefault(signature, []).append(rec.name)
    return sorted((sig, sorted(names)) for sig, names in classes.items())


def _write_tsv(records, tasks, out):
    out.write("\t".join(["name", "n", "degree"] + list(tasks)) + "\n")
    for rec in records:
        row = [rec.name, str(rec.n), str(rec.degree)]
        for task in tasks:
            if task in rec.values:
                row.append(rec.values[task])
            else:
                row.append("error: " + rec.errors.get(task, rec.errors.get("graph", "?")))
        out.write("\t".join(row) + "\n")


# -- verification suites ----------------------------------------------------


def _check(ok, label, failures):
    print("%s - %s" % ("ok" if ok else "FAIL", label))
    if not ok:
        failures.append(label)


def _suite_identities(max_vertices):
    failures = []
    g = families.complete_graph(5)
    m = martin.martin_polynomial(g)
    J = martin.circuit_partition_polynomial(g)
    _check(polynomial.evaluate(J, 1) ==
           polynomial.evaluate(m, 3), "circuit polynomial is shifted Martin", failures)
    pair = martin.martin_sequence(families.complete_graph(5), 2)
    _check(pair == [6, 2016], "Martin sequence of the 5-clique", failures)
    dsq = structure.decompose(duplicate(families.cycle(6), 2))
    _check(len(dsq) == 4, "doubled 6-cycle splits into four triangles", failures)
    ok = True
    for n in range(3, min(max_vertices, 6) + 1):
        for g in families.regular_multigraphs(n, 4):
            if not is_connected(g):
                continue
            a = martin.martin_invariant(g)
            b = martin.martin_invariant(g, pivot_policy="first")
            ok = ok and a == b
    _check(ok, "pivot choice does not change the invariant", failures)
    return failures


def _suite_oracles(max_vertices):
    failures = []
    ok = True
    for n in range(2, min(max_vertices, 5) + 1):
        for g in families.regular_multigraphs(n, 4):
            value = oracle.martin_brute_force(g)
            ok = ok and value.polynomial == tuple(martin.martin_polynomial(g))
    _check(ok, "recursion matches the brute-force polynomial", failures)
    k4 = families.complete_graph(4)
    _check(oracle.count_tree_partitions(k4, 2, ordered=False) == 6,
           "tree partitions of the 4-clique", failures)
    return failures


def _suite_residues(max_vertices):
    failures = []
    octa = families.octahedron()
    k5 = families.complete_graph(5)
    ok = True
    for g, vinf in ((octa, 5), (k5, 4)):
        for p in (2, 3):
            a = residues.c2(delete_vertex(g, vinf), p).residue
            b = residues.c2_from_martin(g, p, allow_small=True).residue
            c = residues.c2_from_trees_forests(g, 0, 1, p).residue
            ok = ok and a == b == c
    _check(ok, "three c2 routes agree", failures)
    ok = True
    for n in range(5, min(max_vertices, 6) + 1):
        for g in families.regular_multigraphs(n, 4):
            rep = residues.permanent_square_residue(g)
            M = martin.martin_invariant(g)
            ok = ok and (-1) ** (n - 1) * rep.residue % 3 == M % 3
    _check(ok, "squared permanent matches the Martin residue", failures)
    return failures


def _suite_closed_forms(max_vertices):
    failures = []
    ok = True
    for n in range(5, max(max_vertices, 8) + 1):
        got = martin.martin_invariant(families.circulant(n, (1, 2)))
        ok = ok and got == martin.closed_form_circulant(n)
    _check(ok, "two-jump circulants", failures)
    ok = True
    for ell in (2, 3):
        got = martin.martin_invariant(families.doubled_prism(ell + 1))
        ok = ok and got == martin.closed_form_prism(ell)
    _check(ok, "doubled prisms", failures)
    ok = True
    for r in (1, 2):
        got = martin.martin_invariant(duplicate(families.complete_graph(5), r))
        ok = ok and got == martin.closed_form_K5_power(r)
    _check(ok, "5-clique powers", failures)
    return failures


_SUITES = {
    "identities": _suite_identities,
    "oracles": _suite_oracles,
    "residues": _suite_residues,
    "closed-forms": _suite_closed_forms,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="martinpoly",
        description="Martin invariants, permanents and c2 residues of "
                    "even-regular multigraphs")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_compute = sub.add_parser("compute", help="compute invariants for a graph file")
    p_compute.add_argument("--input", required=True)
    p_compute.add_argument("--tasks", default="M",
                           help="comma list: M, M<r>, poly, perm, c2@<p>")
    p_compute.add_argument("--rmax", type=int, default=None,
                           help="extend tasks with the Martin sequence up to r")
    p_compute.add_argument("--primes", default="",
                           help="comma list of primes for c2 tasks")
    p_compute.add_argument("--cache", default=None)
    p_compute.add_argument("--out", default=None)

    p_verify = sub.add_parser("verify", help="run a built-in property suite")
    p_verify.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p_verify.add_argument("--max-vertices", type=int, default=6)

    p_report = sub.add_parser("report", help="group graphs by invariant values")
    p_report.add_argument("--input", required=True)
    p_report.add_argument("--tasks", default="M")
    p_report.add_argument("--rmax", type=int, default=None)
    p_report.add_argument("--primes", default="")
    p_report.add_argument("--cache", default=None)
    p_report.add_argument("--out", default=None)

    args = parser.parse_args(argv)

    if args.verb == "verify":
        failures = _SUITES[args.suite](args.max_vertices)
        return 1 if failures else 0

    tasks = [t for t in args.tasks.split(",") if t]
    if args.rmax:
        for r in range(2, args.rmax + 1):
            tasks.append("M%d" % r)
    if args.primes:
        tasks.extend("c2@%d" % int(p) for p in args.primes.split(","))
    records = parse_graph_file(args.input)
    cache = InvariantCache(args.cache)
    computed = compute_batch(records, tasks, cache)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.verb == "compute":
            _write_tsv(computed, tasks, out)
        else:
            out.write("class\tmembers\tinvariants\n")
            for i, (sig, names) in enumerate(group_by_invariant(computed, tasks)):
                desc = ";".join("%s=%s" % kv for kv in sig) \
                    if sig and isinstance(sig[0], tuple) else "incomplete"
                out.write("%d\t%s\t%s\n" % (i, ",".join(names), desc))
    finally:
        if args.out:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
