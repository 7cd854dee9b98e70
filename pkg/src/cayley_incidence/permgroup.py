"""Permutation groups given by generators: Schreier-Sims stabilizer chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """``a ∘ b``: apply b first, then a."""
    return tuple(a[x] for x in b)


def invert(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def is_identity(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def orbits(n: int, gens: Iterable[Perm]) -> list[list[int]]:
    """Orbits of ``<gens>`` on ``range(n)``, each sorted, ordered by least point."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(g):
            a, b = find(i), find(x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    out: dict[int, list[int]] = {}
    for i in range(n):
        out.setdefault(find(i), []).append(i)
    return sorted(out.values())


def orbit(point: int, gens: Sequence[Perm]) -> list[int]:
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return sorted(seen)


@dataclass
class _Level:
    base_point: int
    gens: list[Perm] = field(default_factory=list)
    # transversal: orbit point -> element mapping base_point there
    transversal: dict[int, Perm] = field(default_factory=dict)


class PermutationGroup:
    """Deterministic Schreier-Sims on permutations of ``range(degree)``."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (),
                 base: Sequence[int] = ()):
        self.degree = degree
        self.generators: list[Perm] = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation of the right degree")
            if not is_identity(g):
                self.generators.append(g)
        e = identity(degree)
        self._levels: list[_Level] = [_Level(b, [], {b: e}) for b in base]
        self._build()

    # -- construction -----------------------------------------------------
    def _orbit_update(self, lvl: _Level) -> None:
        e = identity(self.degree)
        lvl.transversal = {lvl.base_point: e}
        todo = [lvl.base_point]
        while todo:
            x = todo.pop()
            ux = lvl.transversal[x]
            for g in lvl.gens:
                y = g[x]
                if y not in lvl.transversal:
                    lvl.transversal[y] = compose(g, ux)
                    todo.append(y)

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self._levels)):
            lvl = self._levels[i]
            b = g[lvl.base_point]
            u = lvl.transversal.get(b)
            if u is None:
                return g, i
            g = compose(invert(u), g)
        return g, len(self._levels)

    def _new_level(self, g: Perm) -> None:
        b = next(i for i, x in enumerate(g) if x != i)
        self._levels.append(_Level(b))

    def _add_gen(self, g: Perm, level: int) -> None:
        """Add g (fixing the first ``level`` base points) and restore the chain."""
        j = level
        while True:
            if j == len(self._levels):
                self._new_level(g)
            self._levels[j].gens.append(g)
            if g[self._levels[j].base_point] != self._levels[j].base_point:
                break
            j += 1
        for i in range(j, level - 1, -1):
            self._complete(i)

    def _complete(self, i: int) -> None:
        lvl = self._levels[i]
        self._orbit_update(lvl)
        changed = True
        while changed:
            changed = False
            for x, ux in list(lvl.transversal.items()):
                for s in list(lvl.gens):
                    y = s[x]
                    schreier = compose(invert(lvl.transversal[y]), compose(s, ux))
                    h, depth = self._sift(schreier, i + 1)
                    if not is_identity(h):
                        self._add_gen(h, i + 1)
                        self._orbit_update(lvl)
                        changed = True
                        break
                if changed:
                    break

    def _build(self) -> None:
        for g in self.generators:
            h, depth = self._sift(g)
            if not is_identity(h):
                self._add_gen(h, 0)

    # -- queries ----------------------------------------------------------
    def order(self) -> int:
        out = 1
        for lvl in self._levels:
            out *= len(lvl.transversal)
        return out

    @property
    def base(self) -> list[int]:
        return [lvl.base_point for lvl in self._levels]

    def contains(self, g: Sequence[int]) -> bool:
        h, _ = self._sift(tuple(g))
        return is_identity(h)

    def orbits(self) -> list[list[int]]:
        return orbits(self.degree, self.generators)

    def elements(self) -> Iterator[Perm]:
        """All group elements (use only for small groups)."""
        depth = len(self._levels)

        def rec(i: int, acc: Perm) -> Iterator[Perm]:
            if i == depth:
                yield acc
                return
            for u in self._levels[i].transversal.values():
                yield from rec(i + 1, compose(acc, u))
        yield from rec(0, identity(self.degree))

    def transversal(self, i: int = 0) -> dict[int, Perm]:
        """Orbit of the i-th base point, each point with an element mapping the base point there."""
        return dict(self._levels[i].transversal) if i < len(self._levels) else {}

    def stabilizer_elements(self, i: int = 1) -> Iterator[Perm]:
        """Elements of the pointwise stabilizer of the first i base points."""
        depth = len(self._levels)

        def rec(j: int, acc: Perm) -> Iterator[Perm]:
            if j == depth:
                yield acc
                return
            for u in self._levels[j].transversal.values():
                yield from rec(j + 1, compose(acc, u))
        yield from rec(i, identity(self.degree))

    def stabilizer_chain_gens(self, i: int) -> list[Perm]:
        """Strong generators of the pointwise stabilizer of the first i base points."""
        return [g for lvl in self._levels[i:] for g in lvl.gens]

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1
