"""Shared graph builders, generated-class fixtures, and the acceptance log."""

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..", "src")))

from martinpoly.families import (circulant, complete_graph, cycle,
                                 four_vertex_regular, octahedron,
                                 regular_multigraphs)
from martinpoly.multigraph import Multigraph, duplicate, from_edges


# -- named graphs used across several test modules ----------------------

def dunce_cap():
    """Triangle with one doubled edge; the smallest graph whose point counts
    are p^3 rather than a multiple of p^4."""
    return from_edges(3, [(0, 1), (0, 1), (0, 2), (1, 2)])


def k3_113():
    """4-regular on 3 vertices: a triple edge, two singles, one self-loop."""
    return from_edges(3, [(0, 1)] * 3 + [(0, 2), (1, 2), (2, 2)])


def k4_112():
    """4-regular on 4 vertices with opposite-pair multiplicities 1, 1, 2."""
    return four_vertex_regular(1, 1, 2)


def complement_c3_c4():
    """Complement of a disjoint triangle and square: 4-regular, 7 vertices,
    the cyclically-6-connected one that is not the circulant."""
    missing = {(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)}
    return from_edges(7, [(a, b) for a in range(7) for b in range(a + 1, 7)
                          if (a, b) not in missing])


def five_r_cut():
    """7-vertex 4-regular graph with the 3-vertex cut {0,1,2}: both sides
    complete to K5, so the invariant is 6 * 6 = 36."""
    edges = [(3, 4), (5, 6)]
    for x in (3, 4, 5, 6):
        for c in (0, 1, 2):
            edges.append((c, x))
    return from_edges(7, edges)


def glued_k5_octahedron():
    """8-vertex 4-regular graph built by gluing K5 and K_{2,2,2} along a
    shared triangle of cut vertices 0,1,2 (the triangle's own edges removed
    from both sides); its invariant is 6 * 14 = 84."""
    edges = [(3, 4)] + [(c, x) for c in (0, 1, 2) for x in (3, 4)]
    parts = {0: 0, 5: 0, 1: 1, 6: 1, 2: 2, 7: 2}
    vs = [0, 1, 2, 5, 6, 7]
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            if parts[a] != parts[b] and not (a < 3 and b < 3):
                edges.append((a, b))
    return from_edges(8, edges)


def eight_regular_six_vertex(n12, n13, n23):
    """6-vertex 8-regular graph: w=1 and u=5 each double-edged to {2,3,4,0};
    inner multiplicities n_ij between 2,3,4 and complementary multiplicities
    between those vertices and v=0.  (0,2,2) is the doubled octahedron;
    (1,1,2) is the other isomorphism class with all inner counts <= 2."""
    mult = {}

    def add(a, b, m):
        if m:
            e = (min(a, b), max(a, b))
            mult[e] = mult.get(e, 0) + m

    for x in (2, 3, 4, 0):
        add(1, x, 2)
        add(5, x, 2)
    add(2, 3, n12)
    add(2, 4, n13)
    add(3, 4, n23)
    add(2, 0, n23)
    add(3, 0, n13)
    add(4, 0, n12)
    return Multigraph(6, mult)


def twist_pair_ten_vertex():
    """A 4-regular 10-vertex graph with a 4-vertex cut whose twist is not
    isomorphic to the original; returns (graph, cut, side_edges, sigma)."""
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 8), (2, 3),
             (2, 7), (2, 9), (3, 5), (3, 9), (4, 5), (4, 6), (4, 7), (5, 9),
             (6, 7), (6, 8), (7, 8), (8, 9)]
    g = from_edges(10, edges)
    side = {(0, 1): 1, (0, 4): 1, (1, 5): 1, (1, 6): 1, (1, 8): 1,
            (4, 5): 1, (4, 6): 1, (4, 7): 1, (6, 7): 1, (6, 8): 1}
    return g, (0, 5, 7, 8), side, (2, 3, 0, 1)


# -- generated graph classes, shared across the whole session -----------

_generated = {}


def generated(n, degree=4, loops=True):
    key = (n, degree, loops)
    if key not in _generated:
        _generated[key] = regular_multigraphs(n, degree, loops=loops)
    return _generated[key]


@pytest.fixture(scope="session")
def small_multigraphs():
    """4-regular classes (loops and disconnected included) on 3..6 vertices."""
    return {n: generated(n) for n in range(3, 7)}


@pytest.fixture(scope="session")
def seven_vertex_multigraphs():
    """All 654 4-regular classes on 7 vertices; takes about two minutes."""
    return generated(7)


# -- acceptance check log ------------------------------------------------

class AcceptanceLog:
    def __init__(self):
        self.lines = []

    def record(self, number, label, ok, seconds):
        self.lines.append((number, label, bool(ok), seconds))


_acceptance = AcceptanceLog()


@pytest.fixture(scope="session")
def acceptance():
    return _acceptance


def pytest_terminal_summary(terminalreporter):
    if not _acceptance.lines:
        return
    terminalreporter.write_sep("-", "acceptance checks")
    for number, label, ok, seconds in sorted(_acceptance.lines):
        terminalreporter.write_line("ACCEPTANCE %2d %s  %s (%.1fs)" % (
            number, "PASS" if ok else "FAIL", label, seconds))
