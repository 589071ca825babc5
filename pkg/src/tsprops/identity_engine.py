"""Deciding fixed quasi-identities: premises x_i = x_i^2 for chosen variables,
conclusion u = v for words u, v over the variables.

A counterexample assignment is witnessed by its *boundary trajectories*: the
point sequences p_1..p_{l+1} and q_1..q_{r+1} traced by the two sides from a
common start p_1 = q_1 to distinct ends.  The search enumerates boundary
valuations and asks, per variable independently, whether one word can realize
all of that variable's required transitions simultaneously (plus, for
idempotency-constrained variables, re-fixing each landing point).

Two devices keep the enumeration honest but small:

* Slots provably forced equal are merged up front by a union-find closure:
  starting from p_1 = q_1, whenever two occurrences of one variable have
  merged source slots their target slots merge too (one word maps equal
  sources to equal targets).  If the two end slots merge, the conclusion is
  forced and the answer is TRUE with no search at all.
* Per-variable transition requirements are deduplicated to distinct
  (source class, target class) pairs and decided by breadth-first search over
  the componentwise action on tuples, cached per source tuple across the
  whole valuation sweep.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import GeneratorSet
from .errors import ParseError, StateBudgetExceeded, UnknownPropertyError
from .graph import STATE_BUDGET, tuple_reachability
from .report import PropertyReport, ReportBuilder

_DENSE_LIMIT = 2_000_000  # tuple spaces up to this size get a numpy successor table
_VARIABLE = re.compile(r"x([1-9])")


@dataclass(frozen=True)
class QuasiIdentity:
    """Premises x_i = x_i^2 for i in idempotent_vars, conclusion lhs = rhs."""

    variables: int
    idempotent_vars: frozenset[int]
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def __post_init__(self):
        if self.variables < 1:
            raise ValueError("at least one variable required")
        if not self.lhs or not self.rhs:
            raise ValueError("both words must be nonempty")
        for letter in (*self.lhs, *self.rhs):
            if not 1 <= letter <= self.variables:
                raise ValueError(f"letter {letter} outside 1..{self.variables}")
        if not self.idempotent_vars <= set(range(1, self.variables + 1)):
            raise ValueError("idempotent variable outside declared range")

    def render(self) -> str:
        body = (" ".join(f"x{i}" for i in self.lhs) + " = "
                + " ".join(f"x{i}" for i in self.rhs))
        if self.idempotent_vars:
            head = "idem(" + ",".join(f"x{i}" for i in sorted(self.idempotent_vars)) + ") => "
            return head + body
        return body


def parse_quasi_identity(text: str) -> QuasiIdentity:
    """Parse `idem(x1,x2) => x1 x2 = x2 x1` style input.

    Variables are x1..x9, words are whitespace-separated variables, the
    premise clause is optional.
    """
    s = text.strip()
    idem: set[int] = set()
    if "=>" in s:
        head, _, s = s.partition("=>")
        m = re.fullmatch(r"idem\(([^()]*)\)", head.strip())
        if m is None:
            raise ParseError(1, "premise must have the form idem(x1,x2)")
        for tok in m.group(1).split(","):
            tok = tok.strip()
            mv = _VARIABLE.fullmatch(tok)
            if mv is None:
                raise ParseError(1, f"bad variable {tok!r} in idem(...)")
            idem.add(int(mv.group(1)))
        s = s.strip()
    if s.count("=") != 1:
        raise ParseError(1, "expected exactly one '=' between two words")
    left, right = s.split("=")

    def parse_word(part: str, side: str) -> tuple[int, ...]:
        tokens = part.split()
        if not tokens:
            raise ParseError(1, f"{side} word is empty")
        out = []
        for tok in tokens:
            mv = _VARIABLE.fullmatch(tok)
            if mv is None:
                raise ParseError(
                    1, f"unrecognized token {tok!r} (variables are x1..x9, "
                       "separated by spaces)")
            out.append(int(mv.group(1)))
        return tuple(out)

    lhs = parse_word(left, "left")
    rhs = parse_word(right, "right")
    m = max(*lhs, *rhs, *idem) if idem else max(*lhs, *rhs, 1)
    try:
        return QuasiIdentity(m, frozenset(idem), lhs, rhs)
    except ValueError as exc:
        raise ParseError(1, str(exc)) from exc


PRESETS: dict[str, QuasiIdentity] = {
    # every element is idempotent
    "band": QuasiIdentity(1, frozenset(), (1, 1), (1,)),
    # idempotents commute with each other
    "commuting_idempotents": QuasiIdentity(2, frozenset({1, 2}), (1, 2), (2, 1)),
    # idempotents commute with everything
    "central_idempotents": QuasiIdentity(2, frozenset({1}), (1, 2), (2, 1)),
    # products of idempotents are idempotent
    "orthodox": QuasiIdentity(2, frozenset({1, 2}), (1, 2, 1, 2), (1, 2)),
    # x^2 y = x^2: every square absorbs on the right
    "squares_are_left_zeros": QuasiIdentity(2, frozenset(), (1, 1, 2), (1, 1)),
    # idempotents act as left / right identities (two halves of the
    # group-characterizing pair of implications)
    "idempotents_left_neutral": QuasiIdentity(2, frozenset({1}), (1, 2), (2,)),
    "idempotents_right_neutral": QuasiIdentity(2, frozenset({1}), (2, 1), (2,)),
}


def preset(name: str) -> QuasiIdentity:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPropertyError(name) from None


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class _VariableSearch:
    """Cached reachability for one variable's deduplicated transition pairs.

    State tuples hold one coordinate per distinct (source class, target class)
    pair; a target tuple is reachable from a source tuple iff one word (of
    length >= 1) realizes every required transition at once.
    """

    def __init__(self, gens: GeneratorSet, pairs: list[tuple[int, int]],
                 budget: int):
        self.gens = gens
        self.pairs = pairs
        self.src_classes = [s for s, _ in pairs]
        self.tgt_classes = [t for _, t in pairs]
        self.n = gens.degree
        self.d = len(pairs)
        self.space = self.n ** self.d
        if self.space > budget:
            raise StateBudgetExceeded(self.space, budget)
        self._cache: dict[int, object] = {}
        self._succ = None
        if self.space <= _DENSE_LIMIT:
            self._succ = self._build_succ()

    def _build_succ(self) -> np.ndarray:
        n, d, space = self.n, self.d, self.space
        digits = np.empty((space, d), dtype=np.int64)
        e = np.arange(space, dtype=np.int64)
        for pos in range(d - 1, -1, -1):
            digits[:, pos] = e % n
            e //= n
        radix = n ** np.arange(d - 1, -1, -1, dtype=np.int64)
        succ = np.empty((space, len(self.gens)), dtype=np.int64)
        for c, g in enumerate(self.gens):
            lut = np.asarray(g.map, dtype=np.int64) - 1
            succ[:, c] = lut[digits] @ radix
        return succ

    def _encode(self, values) -> int:
        e = 0
        for v in values:
            e = e * self.n + (v - 1)
        return e

    def _reach_dense(self, src: int) -> np.ndarray:
        vis = np.zeros(self.space, dtype=bool)
        frontier = np.unique(self._succ[src])
        vis[frontier] = True
        while frontier.size:
            nxt = np.unique(self._succ[frontier])
            nxt = nxt[~vis[nxt]]
            vis[nxt] = True
            frontier = nxt
        return vis

    def _reach_sparse(self, src: int) -> set[int]:
        n, d = self.n, self.d
        maps = [g.map for g in self.gens.generators]

        def decode(e):
            out = [0] * d
            for pos in range(d - 1, -1, -1):
                out[pos] = e % n + 1
                e //= n
            return out

        vis: set[int] = set()
        frontier = [src]
        while frontier:
            new = []
            for e in frontier:
                t = decode(e)
                for mp in maps:
                    e2 = self._encode(mp[q - 1] for q in t)
                    if e2 not in vis:
                        vis.add(e2)
                        new.append(e2)
            frontier = new
        return vis

    def feasible(self, valuation) -> bool:
        src = self._encode(valuation[c] for c in self.src_classes)
        tgt = self._encode(valuation[c] for c in self.tgt_classes)
        hit = self._cache.get(src)
        if hit is None:
            hit = (self._reach_dense(src) if self._succ is not None
                   else self._reach_sparse(src))
            self._cache[src] = hit
        if self._succ is not None:
            return bool(hit[tgt])
        return tgt in hit

    def witness_word(self, valuation) -> tuple[int, ...]:
        src = tuple(valuation[c] for c in self.src_classes)
        tgt = tuple(valuation[c] for c in self.tgt_classes)
        word = tuple_reachability(self.gens, src, {tgt}, min_length=1)
        if word is None:
            raise RuntimeError("feasible transition lost its word; this is a bug")
        return word


def models(gens: GeneratorSet, qid: QuasiIdentity,
           budget: int = STATE_BUDGET,
           property_name: str | None = None) -> PropertyReport:
    """TRUE iff every assignment (idempotent elements for constrained
    variables) makes the two words equal."""
    rb = ReportBuilder(property_name or "quasi-identity", gens, "structural")
    n = gens.degree
    l, r = len(qid.lhs), len(qid.rhs)
    # Slots 0..l trace the left word, slots l+1..l+r+1 the right word.
    slots = l + r + 2
    last_left, last_right = l, l + r + 1
    uf = _UnionFind(slots)
    uf.union(0, l + 1)

    occurrences: dict[int, list[tuple[int, int]]] = {
        i: [] for i in range(1, qid.variables + 1)}
    for j, letter in enumerate(qid.lhs):
        occurrences[letter].append((j, j + 1))
    for j, letter in enumerate(qid.rhs):
        occurrences[letter].append((l + 1 + j, l + 2 + j))
    for i in qid.idempotent_vars:
        occurrences[i].extend([(t, t) for _, t in occurrences[i]])

    changed = True
    while changed:
        changed = False
        for pairs in occurrences.values():
            first_target: dict[int, int] = {}
            for s, t in pairs:
                root = uf.find(s)
                if root in first_target:
                    if uf.union(first_target[root], t):
                        changed = True
                else:
                    first_target[root] = t
    if uf.find(last_left) == uf.find(last_right):
        # Equal sources force equal targets all the way to both ends: the
        # conclusion holds under every assignment.
        return rb.true()

    roots = sorted({uf.find(s) for s in range(slots)})
    class_index = {root: idx for idx, root in enumerate(roots)}
    slot_class = [class_index[uf.find(s)] for s in range(slots)]
    classes = len(roots)
    if n ** classes > budget:
        raise StateBudgetExceeded(n ** classes, budget)
    end_left, end_right = slot_class[last_left], slot_class[last_right]

    # Variables with no occurrences stay unconstrained; any word serves them.
    searches: dict[int, _VariableSearch] = {}
    for i in range(1, qid.variables + 1):
        pairs = sorted({(slot_class[s], slot_class[t])
                        for s, t in occurrences[i]})
        if pairs:
            searches[i] = _VariableSearch(gens, pairs, budget)

    search_list = list(searches.values())
    for valuation in product(range(1, n + 1), repeat=classes):
        if valuation[end_left] == valuation[end_right]:
            continue
        if all(search.feasible(valuation) for search in search_list):
            assignment = []
            for i in range(1, qid.variables + 1):
                if i in searches:
                    word = searches[i].witness_word(valuation)
                else:
                    word = (1,)
                assignment.append({
                    "var": i,
                    "word": list(word),
                    "idempotent_substitution": i in qid.idempotent_vars,
                })
            witness = {
                "kind": "quasi-identity-counterexample",
                "identity": qid.render(),
                "boundary_left": [valuation[slot_class[s]]
                                  for s in range(0, l + 1)],
                "boundary_right": [valuation[slot_class[s]]
                                   for s in range(l + 1, slots)],
                "assignment": assignment,
                "note": ("constrained variables stand for the idempotent "
                         "power of the reported word's element"),
            }
            return rb.false(witness)
    return rb.true()


def is_band(gens: GeneratorSet, budget: int = STATE_BUDGET) -> PropertyReport:
    return models(gens, PRESETS["band"], budget, property_name="band")


def idempotents_commute(gens: GeneratorSet,
                        budget: int = STATE_BUDGET) -> PropertyReport:
    return models(gens, PRESETS["commuting_idempotents"], budget,
                  property_name="idempotents-commute")


def idempotents_central(gens: GeneratorSet,
                        budget: int = STATE_BUDGET) -> PropertyReport:
    return models(gens, PRESETS["central_idempotents"], budget,
                  property_name="idempotents-central")


def is_orthodox(gens: GeneratorSet,
                budget: int = STATE_BUDGET) -> PropertyReport:
    return models(gens, PRESETS["orthodox"], budget,
                  property_name="orthodox")
