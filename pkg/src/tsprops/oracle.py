"""Brute-force ground truth: enumerate all elements, then decide properties
directly from their definitions.

The enumeration is a breadth-first closure under right multiplication by
generators, so element ``i``'s canonical word (shortest, then lexicographically
least by generator index) is recovered by following discovery parents.
Universally quantified conditions are evaluated over the whole element table;
where a condition over all elements provably reduces to the generator case by
associativity alone (left/right zeros, identities, commuting, centrality),
the loop runs over generators.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from math import lcm

import numpy as np

from .core import GeneratorSet, Transformation
from .errors import EnumerationCapExceeded, StateBudgetExceeded, UnknownPropertyError
from .report import PropertyReport, ReportBuilder, Verdict

DEFAULT_CAP = 200_000


def _compose_rows(first: np.ndarray, then: np.ndarray) -> np.ndarray:
    # Row-wise product: apply `first`, then `then` (both 0-indexed image rows).
    return np.take_along_axis(then, first, axis=1)


def _power_rows(maps: np.ndarray, e: int) -> np.ndarray:
    """Row-wise e-th power (e >= 1) by repeated squaring."""
    acc = None
    base = maps
    while e:
        if e & 1:
            acc = base if acc is None else _compose_rows(acc, base)
        e >>= 1
        if e:
            base = _compose_rows(base, base)
    return acc


class ElementTable:
    """Every element of the generated semigroup, in canonical word order."""

    def __init__(self, gens: GeneratorSet, maps: np.ndarray, parents: np.ndarray,
                 gen_of: np.ndarray, succ: np.ndarray, index: dict[bytes, int]):
        self.gens = gens
        self.degree = gens.degree
        self.maps = maps        # (m, n) int16, 0-indexed images
        self.succ = succ        # (m, k) int32; succ[i, c] = index of element i followed by generator c+1
        self._parents = parents
        self._gen_of = gen_of
        self._index = index

    def __len__(self) -> int:
        return int(self.maps.shape[0])

    def word(self, i: int) -> tuple[int, ...]:
        """Canonical word (1-indexed generator indices) for element ``i``."""
        out = []
        while i >= 0:
            out.append(int(self._gen_of[i]) + 1)
            i = int(self._parents[i])
        return tuple(reversed(out))

    def element(self, i: int) -> Transformation:
        return Transformation(self.degree, tuple(int(x) + 1 for x in self.maps[i]))

    def index_of(self, t: Transformation) -> int | None:
        key = (np.asarray(t.map, dtype=np.int16) - 1).tobytes()
        return self._index.get(key)

    def describe(self, i: int) -> dict:
        """Witness fragment naming element ``i``."""
        return {"map": [int(x) + 1 for x in self.maps[i]], "word": list(self.word(i))}

    @cached_property
    def generator_arrays(self) -> np.ndarray:
        return np.stack([np.asarray(g.map, dtype=np.int16) - 1
                         for g in self.gens.generators])

    @cached_property
    def generator_indices(self) -> list[int]:
        # Table index of each generator (duplicates share an element).
        return [self._index[row.tobytes()] for row in self.generator_arrays]

    @cached_property
    def squares(self) -> np.ndarray:
        return _compose_rows(self.maps, self.maps)

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        return (self.squares == self.maps).all(axis=1)

    @cached_property
    def idempotent_indices(self) -> np.ndarray:
        return np.flatnonzero(self.idempotent_mask)

    @cached_property
    def _uniform_exponent(self) -> int:
        # Any common multiple of all periods that is >= every index; powers at
        # this exponent are simultaneously idempotent.
        return lcm(*range(1, self.degree + 1))

    @cached_property
    def power_uniform(self) -> np.ndarray:
        """Row-wise idempotent power s^omega for every element."""
        return _power_rows(self.maps, self._uniform_exponent)

    @cached_property
    def power_uniform_next(self) -> np.ndarray:
        """Row-wise s^(omega+1)."""
        return _compose_rows(self.power_uniform, self.maps)


def enumerate_semigroup(gens: GeneratorSet, cap: int = DEFAULT_CAP) -> ElementTable:
    """BFS closure of the generators under right multiplication.

    Raises EnumerationCapExceeded as soon as the element count would pass
    ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    k = len(gens)
    A = np.stack([np.asarray(g.map, dtype=np.int16) - 1 for g in gens.generators])
    index: dict[bytes, int] = {}
    rows: list[np.ndarray] = []
    parents: list[int] = []
    gen_of: list[int] = []
    for c in range(k):
        key = A[c].tobytes()
        if key not in index:
            index[key] = len(rows)
            rows.append(A[c])
            parents.append(-1)
            gen_of.append(c)
    succ_blocks: list[np.ndarray] = []
    start = 0
    while start < len(rows):
        stop = len(rows)
        frontier = np.stack(rows[start:stop])
        news = [A[c][frontier] for c in range(k)]
        block = np.empty((stop - start, k), dtype=np.int32)
        for r in range(stop - start):
            for c in range(k):
                row = news[c][r]
                key = row.tobytes()
                j = index.get(key)
                if j is None:
                    if len(rows) >= cap:
                        raise EnumerationCapExceeded(cap)
                    j = len(rows)
                    index[key] = j
                    rows.append(row.copy())
                    parents.append(start + r)
                    gen_of.append(c)
                block[r, c] = j
        succ_blocks.append(block)
        start = stop
    return ElementTable(
        gens,
        np.stack(rows),
        np.asarray(parents, dtype=np.int32),
        np.asarray(gen_of, dtype=np.int16),
        np.concatenate(succ_blocks),
        index,
    )


def _reach_from(table: ElementTable, mask: np.ndarray) -> np.ndarray:
    """Elements reachable from the masked set by >= 1 right multiplications."""
    visited = np.zeros(len(table), dtype=bool)
    frontier = np.unique(table.succ[np.flatnonzero(mask)])
    visited[frontier] = True
    while frontier.size:
        cand = np.unique(table.succ[frontier])
        new = cand[~visited[cand]]
        visited[new] = True
        frontier = new
    return visited


def zero_index(table: ElementTable) -> int | None:
    """Index of the (necessarily unique) two-sided zero, if any."""
    both = _left_zero_mask(table) & _right_zero_mask(table)
    hits = np.flatnonzero(both)
    return int(hits[0]) if hits.size else None


def _left_zero_mask(table: ElementTable) -> np.ndarray:
    # l.s = l for all s reduces to generators: l.(ab) = (l.a).b.
    maps, A = table.maps, table.generator_arrays
    mask = np.ones(len(table), dtype=bool)
    for c in range(A.shape[0]):
        mask &= (A[c][maps] == maps).all(axis=1)
    return mask


def _right_zero_mask(table: ElementTable) -> np.ndarray:
    # s.r = r for all s reduces to generators likewise.
    maps, A = table.maps, table.generator_arrays
    mask = np.ones(len(table), dtype=bool)
    for c in range(A.shape[0]):
        mask &= (maps[:, A[c]] == maps).all(axis=1)
    return mask


def _left_identity_mask(table: ElementTable) -> np.ndarray:
    # l.s = s for all s reduces to generators: l.(ab) = (l.a).b = ab.
    maps, A = table.maps, table.generator_arrays
    mask = np.ones(len(table), dtype=bool)
    for c in range(A.shape[0]):
        mask &= (A[c][maps] == A[c][np.newaxis, :]).all(axis=1)
    return mask


def _right_identity_mask(table: ElementTable) -> np.ndarray:
    maps, A = table.maps, table.generator_arrays
    mask = np.ones(len(table), dtype=bool)
    for c in range(A.shape[0]):
        mask &= (maps[:, A[c]] == A[c][np.newaxis, :]).all(axis=1)
    return mask


def left_identity_indices(table: ElementTable) -> list[int]:
    return [int(i) for i in np.flatnonzero(_left_identity_mask(table))]


def right_identity_indices(table: ElementTable) -> list[int]:
    return [int(i) for i in np.flatnonzero(_right_identity_mask(table))]


def nilpotency_degree(table: ElementTable) -> int | None:
    """Least d with S^d = {zero}, or None when S is not nilpotent.

    Iterates the set products S, S.S, (S.S).S, ... via reachability in the
    right-multiplication graph until they stabilise or hit {zero}.
    """
    z = zero_index(table)
    if z is None:
        return None
    m = len(table)
    cur = np.ones(m, dtype=bool)
    for d in range(1, m + 2):
        live = int(cur.sum())
        if live == 1 and cur[z]:
            return d
        nxt = _reach_from(table, cur)
        if (nxt == cur).all():
            return None
        cur = nxt
    raise RuntimeError("set-product iteration failed to stabilise; this is a bug")


def _strongly_connected_components(succ: np.ndarray) -> list[list[int]]:
    """Tarjan over the right-multiplication graph, iteratively."""
    m, k = succ.shape
    indices = np.full(m, -1, dtype=np.int64)
    low = np.zeros(m, dtype=np.int64)
    on_stack = np.zeros(m, dtype=bool)
    comp_stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(m):
        if indices[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ci = work[-1]
            if ci == 0:
                indices[v] = low[v] = counter
                counter += 1
                comp_stack.append(v)
                on_stack[v] = True
            advanced = False
            while ci < k:
                w = int(succ[v, ci])
                ci += 1
                if indices[w] == -1:
                    work[-1] = (v, ci)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], indices[w])
            if advanced:
                continue
            work.pop()
            if low[v] == indices[v]:
                comp = []
                while True:
                    w = comp_stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comps


def _word_between(table: ElementTable, src: int, dst: int) -> tuple[int, ...]:
    """Shortest-lex word w with src.w = dst in the right-multiplication graph."""
    from collections import deque

    back: dict[int, tuple[int, int]] = {}
    seen = {src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for c in range(table.succ.shape[1]):
            w = int(table.succ[v, c])
            if w not in seen:
                seen.add(w)
                back[w] = (v, c)
                if w == dst:
                    out = []
                    cur = dst
                    while cur != src:
                        prev, cc = back[cur]
                        out.append(cc + 1)
                        cur = prev
                    return tuple(reversed(out))
                queue.append(w)
    raise RuntimeError("no connecting word; this is a bug")


def _pair_products(rows: np.ndarray) -> np.ndarray:
    """All pairwise products: out[i, j] is row i followed by row j."""
    e = rows.shape[0]
    return rows[np.arange(e)[np.newaxis, :, np.newaxis], rows[:, np.newaxis, :]]


def _check_commutative(table):
    maps, A = table.maps, table.generator_arrays
    for c in range(A.shape[0]):
        left = A[c][maps]        # s . a_c
        right = maps[:, A[c]]    # a_c . s
        bad = np.flatnonzero((left != right).any(axis=1))
        if bad.size:
            i = int(bad[0])
            q = int(np.flatnonzero(left[i] != right[i])[0])
            return Verdict.FALSE, {
                "kind": "non-commuting-elements",
                "left": table.describe(i),
                "right": table.describe(table.generator_indices[c]),
                "point": q + 1,
            }
    return Verdict.TRUE, None


def _check_band(table):
    bad = np.flatnonzero(~table.idempotent_mask)
    if bad.size:
        return Verdict.FALSE, {"kind": "non-idempotent-element",
                               "element": table.describe(int(bad[0]))}
    return Verdict.TRUE, None


def _check_semilattice(table):
    verdict, witness = _check_band(table)
    if verdict is not Verdict.TRUE:
        return verdict, witness
    return _check_commutative(table)


def _check_left_zero(table):
    hits = np.flatnonzero(_left_zero_mask(table))
    if hits.size:
        return Verdict.TRUE, {"kind": "element-certificate", "role": "left-zero",
                              "element": table.describe(int(hits[0]))}
    return Verdict.FALSE, None


def _check_right_zero(table):
    hits = np.flatnonzero(_right_zero_mask(table))
    if hits.size:
        return Verdict.TRUE, {"kind": "element-certificate", "role": "right-zero",
                              "element": table.describe(int(hits[0]))}
    return Verdict.FALSE, None


def _check_zero(table):
    z = zero_index(table)
    if z is not None:
        return Verdict.TRUE, {"kind": "element-certificate", "role": "zero",
                              "element": table.describe(z)}
    return Verdict.FALSE, None


def _check_nilpotent(table):
    z = zero_index(table)
    if z is None:
        return Verdict.FALSE, None
    degree = nilpotency_degree(table)
    if degree is not None:
        return Verdict.TRUE, {"kind": "nilpotency-degree", "degree": degree,
                              "zero": table.describe(z)}
    # The set products stabilised above {zero}: exhibit a persistent element.
    cur = np.ones(len(table), dtype=bool)
    for _ in range(len(table) + 1):
        nxt = _reach_from(table, cur)
        if (nxt == cur).all():
            break
        cur = nxt
    cur[z] = False
    i = int(np.flatnonzero(cur)[0])
    return Verdict.FALSE, {"kind": "persistent-element", "element": table.describe(i)}


def _check_group(table):
    idems = table.idempotent_indices
    if idems.size > 1:
        return Verdict.FALSE, {
            "kind": "two-idempotents",
            "left": table.describe(int(idems[0])),
            "right": table.describe(int(idems[1])),
        }
    e = int(idems[0])
    maps = table.maps
    erow = maps[e]
    left_ok = (maps[:, erow] == maps).all(axis=1)   # e . s = s
    right_ok = (erow[maps] == maps).all(axis=1)     # s . e = s
    bad = np.flatnonzero(~(left_ok & right_ok))
    if bad.size:
        return Verdict.FALSE, {"kind": "identity-failure",
                               "idempotent": table.describe(e),
                               "element": table.describe(int(bad[0]))}
    bad = np.flatnonzero((table.power_uniform != erow).any(axis=1))
    if bad.size:
        return Verdict.FALSE, {"kind": "no-inverse-power",
                               "idempotent": table.describe(e),
                               "element": table.describe(int(bad[0]))}
    return Verdict.TRUE, None


def _check_idempotents_commute(table):
    rows = table.maps[table.idempotent_indices]
    prods = _pair_products(rows)
    bad = (prods != prods.swapaxes(0, 1)).any(axis=2)
    hits = np.argwhere(bad)
    if hits.size:
        i, j = (int(x) for x in hits[0])
        return Verdict.FALSE, {
            "kind": "non-commuting-idempotents",
            "left": table.describe(int(table.idempotent_indices[i])),
            "right": table.describe(int(table.idempotent_indices[j])),
        }
    return Verdict.TRUE, None


def _check_orthodox(table):
    rows = table.maps[table.idempotent_indices]
    prods = _pair_products(rows)
    e = rows.shape[0]
    flat = prods.reshape(e * e, -1)
    sq = _compose_rows(flat, flat)
    bad = (sq != flat).any(axis=1).reshape(e, e)
    hits = np.argwhere(bad)
    if hits.size:
        i, j = (int(x) for x in hits[0])
        return Verdict.FALSE, {
            "kind": "non-idempotent-product",
            "left": table.describe(int(table.idempotent_indices[i])),
            "right": table.describe(int(table.idempotent_indices[j])),
        }
    return Verdict.TRUE, None


def _check_idempotents_central(table):
    # Centrality reduces to commuting with every generator by associativity.
    A = table.generator_arrays
    rows = table.maps[table.idempotent_indices]
    for c in range(A.shape[0]):
        left = A[c][rows]       # e . a_c
        right = rows[:, A[c]]   # a_c . e
        bad = np.flatnonzero((left != right).any(axis=1))
        if bad.size:
            i = int(bad[0])
            return Verdict.FALSE, {
                "kind": "non-central-idempotent",
                "idempotent": table.describe(int(table.idempotent_indices[i])),
                "other": table.describe(table.generator_indices[c]),
            }
    return Verdict.TRUE, None


def _check_completely_regular(table):
    bad = np.flatnonzero((table.power_uniform_next != table.maps).any(axis=1))
    if bad.size:
        return Verdict.FALSE, {"kind": "element-outside-subgroup",
                               "element": table.describe(int(bad[0]))}
    return Verdict.TRUE, None


def _check_clifford(table):
    verdict, witness = _check_completely_regular(table)
    if verdict is not Verdict.TRUE:
        return verdict, witness
    return _check_idempotents_commute(table)


def _check_regular(table):
    maps = table.maps
    for i in range(len(table)):
        si = maps[i]
        sts = si[maps[:, si]]
        if (sts == si).all(axis=1).any():
            continue
        return Verdict.FALSE, {"kind": "non-regular-element",
                               "element": table.describe(i)}
    return Verdict.TRUE, None


def _check_inverse(table):
    maps = table.maps
    for i in range(len(table)):
        si = maps[i]
        sts_ok = (si[maps[:, si]] == si).all(axis=1)
        tst = np.take_along_axis(maps, si[maps], axis=1)
        tst_ok = (tst == maps).all(axis=1)
        count = int((sts_ok & tst_ok).sum())
        if count != 1:
            return Verdict.FALSE, {"kind": "inverse-count",
                                   "element": table.describe(i),
                                   "count": count}
    return Verdict.TRUE, None


def _check_r_trivial(table):
    for comp in _strongly_connected_components(table.succ):
        if len(comp) < 2:
            continue
        s, t = sorted(comp)[:2]
        return Verdict.FALSE, {
            "kind": "mutually-reachable-pair",
            "left": table.describe(s),
            "right": table.describe(t),
            "word_left_to_right": list(_word_between(table, s, t)),
            "word_right_to_left": list(_word_between(table, t, s)),
        }
    return Verdict.TRUE, None


def _check_aperiodic(table):
    bad = np.flatnonzero((table.power_uniform_next != table.power_uniform).any(axis=1))
    if bad.size:
        return Verdict.FALSE, {"kind": "periodic-element",
                               "element": table.describe(int(bad[0]))}
    return Verdict.TRUE, None


def _identity_list_witness(table, indices, side):
    return {
        "kind": "identity-list",
        "side": side,
        "identities": [table.describe(i) for i in indices],
    }


def _check_left_identities(table):
    idx = left_identity_indices(table)
    verdict = Verdict.TRUE if idx else Verdict.FALSE
    return verdict, _identity_list_witness(table, idx, "left")


def _check_right_identities(table):
    idx = right_identity_indices(table)
    verdict = Verdict.TRUE if idx else Verdict.FALSE
    return verdict, _identity_list_witness(table, idx, "right")


_CHECKS = {
    "left_zero_exists": _check_left_zero,
    "right_zero_exists": _check_right_zero,
    "zero_exists": _check_zero,
    "nilpotent": _check_nilpotent,
    "commutative": _check_commutative,
    "band": _check_band,
    "semilattice": _check_semilattice,
    "group": _check_group,
    "orthodox": _check_orthodox,
    "idempotents_commute": _check_idempotents_commute,
    "idempotents_central": _check_idempotents_central,
    "completely_regular": _check_completely_regular,
    "clifford": _check_clifford,
    "regular": _check_regular,
    "inverse_semigroup": _check_inverse,
    "r_trivial": _check_r_trivial,
    "aperiodic": _check_aperiodic,
    "left_identities": _check_left_identities,
    "right_identities": _check_right_identities,
}

PROPERTIES = tuple(sorted(_CHECKS))


def definitional_check(table: ElementTable, prop: str) -> PropertyReport:
    """Decide ``prop`` over the full element table, straight from the definition."""
    fn = _CHECKS.get(prop)
    if fn is None:
        raise UnknownPropertyError(prop)
    rb = ReportBuilder(prop, table.gens, "oracle")
    verdict, witness = fn(table)
    return rb.done(verdict, witness)


def models_by_enumeration(table: ElementTable, qid,
                          max_assignments: int = 4_000_000):
    """Evaluate a quasi-identity by trying every assignment of elements.

    Variables constrained to be idempotent draw from the idempotent elements
    only.  Returns (True, None) or (False, witness).
    """
    m = len(table)
    pools = []
    for v in range(1, qid.variables + 1):
        if v in qid.idempotent_vars:
            pools.append([int(i) for i in table.idempotent_indices])
        else:
            pools.append(list(range(m)))
    total = 1
    for p in pools:
        total *= len(p)
    if total > max_assignments:
        raise StateBudgetExceeded(total, max_assignments)
    if total == 0:
        return True, None

    # Pair-product table: prod[i, j] = index of element i followed by element j.
    maps = table.maps
    prod = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        block = maps[:, maps[i]]
        prod[i] = [table._index[row.tobytes()] for row in block]

    shape = [len(p) for p in pools]
    axes = [np.asarray(p, dtype=np.int32).reshape(
        [-1 if a == v else 1 for a in range(qid.variables)])
        for v, p in enumerate(pools)]

    def evaluate(word):
        cur = axes[word[0] - 1]
        for letter in word[1:]:
            cur = prod[cur, axes[letter - 1]]
        return cur

    hu = evaluate(qid.lhs)
    hv = evaluate(qid.rhs)
    diff = (hu != hv)
    if not diff.any():
        return True, None
    flat = int(np.argmax(diff.reshape(-1)))
    coords = np.unravel_index(flat, diff.shape) if diff.shape else ()
    assignment = []
    for v in range(qid.variables):
        pool = pools[v]
        pick = pool[int(coords[v])] if len(shape) else pool[0]
        assignment.append({"var": v + 1, "element": table.describe(pick)})
    return False, {"kind": "assignment-counterexample",
                   "identity": qid.render(), "assignment": assignment}


def weak_inverse_exponent_check(table: ElementTable) -> tuple[bool, int | None]:
    """Check t.s.t = t with t = s^(2*omega-1) for every element, in bulk.

    Returns (all_ok, first failing index).
    """
    m = len(table)
    maps = table.maps
    omega = np.zeros(m, dtype=np.int64)
    cur = maps.copy()
    exp = 1
    while (omega == 0).any():
        idem = (_compose_rows(cur, cur) == cur).all(axis=1)
        newly = idem & (omega == 0)
        omega[newly] = exp
        cur = _compose_rows(cur, maps)
        exp += 1
        if exp > 4 * table._uniform_exponent + 4:
            raise RuntimeError("idempotent power not found; this is a bug")
    targets = 2 * omega - 1
    t_rows = np.empty_like(maps)
    cur = maps.copy()
    exp = 1
    remaining = int(m)
    while remaining:
        sel = targets == exp
        if sel.any():
            t_rows[sel] = cur[sel]
            remaining -= int(sel.sum())
        cur = _compose_rows(cur, maps)
        exp += 1
    tst = _compose_rows(_compose_rows(t_rows, maps), t_rows)
    bad = np.flatnonzero((tst != t_rows).any(axis=1))
    if bad.size:
        return False, int(bad[0])
    return True, None
