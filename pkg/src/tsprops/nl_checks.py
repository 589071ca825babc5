"""Reachability-based property checkers.

Each property here is characterized by the existence (or absence) of paths in
the transformation graph or in its componentwise action on point tuples, so
every check reduces to breadth-first search and yields a replayable witness.
"""

from __future__ import annotations

from .core import GeneratorSet, fixed_points
from .errors import PreconditionError
from .graph import (STATE_BUDGET, has_cycle, multi_tuple_reachability,
                    transformation_graph, tuple_reachability,
                    undirected_components)
from .report import PropertyReport, ReportBuilder


def has_right_zero(gens: GeneratorSet) -> PropertyReport:
    """A right zero exists iff every two points in one (undirected) component
    of the transformation graph are collapsed by some element."""
    rb = ReportBuilder("right-zero", gens, "structural")
    graph = transformation_graph(gens)
    for comp in undirected_components(graph):
        for ai in range(len(comp)):
            for bi in range(ai + 1, len(comp)):
                p, q = comp[ai], comp[bi]
                word = tuple_reachability(
                    gens, (p, q), lambda t: t[0] == t[1], min_length=1)
                if word is None:
                    return rb.false({"kind": "non-collapsible-pair",
                                     "pair": [p, q]})
    return rb.true()


def has_left_zero(gens: GeneratorSet) -> PropertyReport:
    """A left zero exists iff every point can be moved into the fixed-point
    set by some element."""
    rb = ReportBuilder("left-zero", gens, "structural")
    fix = fixed_points(gens)
    if not fix:
        return rb.false({"kind": "point-misses-fixed", "point": 1,
                         "fixed_points": []})
    fix_targets = {(f,) for f in fix}
    for q in range(1, gens.degree + 1):
        word = tuple_reachability(gens, (q,), fix_targets, min_length=1)
        if word is None:
            return rb.false({"kind": "point-misses-fixed", "point": q,
                             "fixed_points": sorted(fix)})
    return rb.true()


def has_zero(gens: GeneratorSet) -> PropertyReport:
    """A zero exists iff both a left zero and a right zero exist."""
    rb = ReportBuilder("zero", gens, "structural")
    left = has_left_zero(gens)
    if not left.verdict:
        return rb.false(left.witness)
    right = has_right_zero(gens)
    if not right.verdict:
        return rb.false(right.witness)
    return rb.true()


def is_nilpotent(gens: GeneratorSet) -> PropertyReport:
    """Nilpotent iff a zero exists and the transformation graph restricted to
    the non-fixed points is acyclic (self-loops forbidden).

    The zero's image equals the fixed-point set, so the restriction never
    needs the zero element itself.
    """
    rb = ReportBuilder("nilpotent", gens, "structural")
    zero = has_zero(gens)
    if not zero.verdict:
        return rb.false(zero.witness)
    fix = fixed_points(gens)
    restrict = [q for q in range(1, gens.degree + 1) if q not in fix]
    graph = transformation_graph(gens, restrict)
    cyclic, cycle = has_cycle(graph, ignore_self_loops=False)
    if cyclic:
        return rb.false({"kind": "graph-cycle", "vertices": "non-fixed",
                         "cycle": list(cycle)})
    return rb.true()


def nilpotency_degree_upper_bound(gens: GeneratorSet) -> int:
    """1 + the longest path (in edges) of the restricted acyclic graph.

    Once a point enters the fixed-point set it stays there, and inside the
    non-fixed set a trajectory follows a path of the restricted DAG, so every
    product of that many generators is a left zero — and with a zero present,
    the zero itself.  Hence the value bounds the exact nilpotency degree from
    above, and it is at most n.
    """
    report = is_nilpotent(gens)
    if not report.verdict:
        raise PreconditionError(
            "nilpotency degree bound is defined only for nilpotent semigroups")
    fix = fixed_points(gens)
    restrict = [q for q in range(1, gens.degree + 1) if q not in fix]
    graph = transformation_graph(gens, restrict)
    succ = graph.successors()
    depth: dict[int, int] = {}
    for root in restrict:
        if root in depth:
            continue
        stack = [(root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                depth[v] = 1 + max((depth[w] for w in succ[v]), default=-1)
                continue
            if v in depth:
                continue
            stack.append((v, True))
            for w in succ[v]:
                if w not in depth:
                    stack.append((w, False))
    longest = max(depth.values(), default=0)
    return 1 + longest


def is_r_trivial(gens: GeneratorSet) -> PropertyReport:
    """R-trivial iff every cycle of the transformation graph is a self-loop."""
    rb = ReportBuilder("r-trivial", gens, "structural")
    graph = transformation_graph(gens)
    found, cycle = has_cycle(graph, ignore_self_loops=True)
    if found:
        return rb.false({"kind": "graph-cycle", "vertices": "all",
                         "cycle": list(cycle)})
    return rb.true()


def is_completely_regular(gens: GeneratorSet,
                          budget: int = STATE_BUDGET) -> PropertyReport:
    """Completely regular iff no element collapses two points of its own image.

    The violating pattern is a word w and points p, q, u, v with p·w = u,
    q·w = v, u ≠ v and u·w = v·w; for each ordered pair (u, v) one
    multi-source search over point quadruples decides it.
    """
    rb = ReportBuilder("completely-regular", gens, "structural")
    n = gens.degree
    points = range(1, n + 1)
    for u in points:
        for v in points:
            if u == v:
                continue
            sources = [(p, q, u, v) for p in points for q in points]

            def is_target(t, _u=u, _v=v):
                return t[0] == _u and t[1] == _v and t[2] == t[3]

            hit = multi_tuple_reachability(gens, sources, is_target,
                                           min_length=1, budget=budget)
            if hit is not None:
                (p, q, _, _), word = hit
                return rb.false({"kind": "image-collapse", "p": p, "q": q,
                                 "u": u, "v": v, "word": list(word)})
    return rb.true()


def is_regular_commutative(gens: GeneratorSet,
                           budget: int = STATE_BUDGET) -> PropertyReport:
    """For commutative semigroups, regular coincides with completely regular."""
    from .fo_checks import is_commutative

    if not is_commutative(gens).verdict:
        raise PreconditionError(
            "this regularity check applies only to commutative semigroups")
    inner = is_completely_regular(gens, budget)
    rb = ReportBuilder("regular", gens, "structural")
    return rb.done(inner.verdict, inner.witness)


def is_clifford(gens: GeneratorSet,
                budget: int = STATE_BUDGET) -> PropertyReport:
    """Clifford iff completely regular with commuting idempotents."""
    from .identity_engine import idempotents_commute

    rb = ReportBuilder("clifford", gens, "structural")
    cr = is_completely_regular(gens, budget)
    if not cr.verdict:
        return rb.false(cr.witness)
    ic = idempotents_commute(gens)
    if not ic.verdict:
        return rb.false(ic.witness)
    return rb.true()
