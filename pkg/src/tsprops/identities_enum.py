"""Enumerating all left and right identities.

An element is a left identity exactly when its action on the kernel classes
is the identity, and that happens exactly for idempotent powers of generators
whose quotient action is a permutation; dually for right identities via the
action on the semigroup's image.  So each side is a scan over generators: take
the generators acting as permutations there, raise each to the least common
multiple of its cycle lengths, deduplicate.
"""

from __future__ import annotations

from math import lcm

from .core import (GeneratorSet, Transformation, image_action, power,
                   quotient_action)


def _cycle_lengths(perm: Transformation) -> list[int]:
    lengths = []
    seen = [False] * perm.degree
    for start in range(1, perm.degree + 1):
        if seen[start - 1]:
            continue
        length = 0
        q = start
        while not seen[q - 1]:
            seen[q - 1] = True
            q = perm.apply(q)
            length += 1
        lengths.append(length)
    return lengths


def _identities_via(gens: GeneratorSet,
                    induced: GeneratorSet) -> list[tuple[Transformation, tuple[int, ...]]]:
    found: dict[tuple[int, ...], tuple[Transformation, tuple[int, ...]]] = {}
    for i in range(len(gens)):
        action = induced[i]
        if not action.is_permutation():
            continue
        m = lcm(*_cycle_lengths(action))
        candidate = power(gens[i], m)
        found.setdefault(candidate.map, (candidate, (i + 1,) * m))
    return sorted(found.values(), key=lambda pair: pair[0].map)


def left_identities(gens: GeneratorSet) -> list[tuple[Transformation, tuple[int, ...]]]:
    """All left identities, each with a replayable word (sorted by map)."""
    return _identities_via(gens, quotient_action(gens))


def right_identities(gens: GeneratorSet) -> list[tuple[Transformation, tuple[int, ...]]]:
    """All right identities, each with a replayable word (sorted by map)."""
    return _identities_via(gens, image_action(gens))
