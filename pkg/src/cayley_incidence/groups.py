"""Finite groups stored as multiplication tables.

Every group uses element indices ``0..n-1`` with the identity at index 0.
Subsets of a group ("element sets") are plain sorted tuples of indices.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Sequence

import numpy as np

MAX_ORDER = 64

ElementSet = tuple  # sorted tuple of element indices


class GroupError(ValueError):
    """Raised for invalid tables, actions or descriptors."""


def element_set(items: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(i) for i in items)))


class FiniteGroup:
    """A finite group given by its Cayley table.

    The table is validated on construction: identity at index 0, Latin
    square, associativity. Instances are treated as immutable.
    """

    __slots__ = ("name", "order", "table", "inverse", "labels", "abelian",
                 "dedekind", "_index", "_hash")

    def __init__(self, table, name: str = "G", labels: Sequence[str] | None = None):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = t.shape[0]
        if n > MAX_ORDER:
            raise GroupError(f"groups of order > {MAX_ORDER} are not supported")
        _check_table(t)
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.name = name
        inv = [0] * n
        for i in range(n):
            inv[i] = int(np.flatnonzero(t[i] == 0)[0])
        self.inverse = tuple(inv)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n or len(set(labels)) != n:
            raise GroupError("labels must be distinct and match the order")
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self.abelian = bool(np.array_equal(t, t.T))
        self.dedekind = self.abelian or _all_cyclic_normal(self)
        self._hash = hash((n, t.tobytes()))

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup) and self.order == other.order
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return self._hash

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GroupError(f"{self.name} has no element labelled {label!r}") from None

    def elements_of(self, *labels: str) -> tuple[int, ...]:
        return element_set(self.index(lab) for lab in labels)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        r = 0
        for _ in range(k):
            r = int(self.table[r, g])
        return r

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def to_json(self) -> list[list[int]]:
        return self.table.tolist()


def _check_table(t: np.ndarray) -> None:
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupError("table entries out of range")
    ids = np.arange(n)
    if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
        raise GroupError("element 0 must be a two-sided identity")
    srt = np.sort(t, axis=1)
    if not (np.all(srt == ids) and np.all(np.sort(t, axis=0) == ids[:, None])):
        raise GroupError("table is not a Latin square")
    # (ab)c == a(bc) for all triples, vectorised over a and b
    left = t[t]            # left[a, b, c] = (ab)c  since t[t[a,b], c]
    right = t[:, t]        # right[a, b, c] = a(bc)
    if not np.array_equal(left, right):
        raise GroupError("table is not associative")


def _all_cyclic_normal(G: FiniteGroup) -> bool:
    for g in range(G.order):
        cyc = set(cyclic_subgroup(G, g))
        for x in range(G.order):
            if G.mul(G.mul(x, g), G.inv(x)) not in cyc:
                return False
    return True


# ---------------------------------------------------------------------------
# element-set operations

def multiply(G: FiniteGroup, g: int, h: int) -> int:
    return G.mul(g, h)


def translate_set(G: FiniteGroup, g: int, C: Iterable[int], side: str = "left") -> tuple[int, ...]:
    """``gC`` (side="left") or ``Cg`` (side="right") as a sorted tuple."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    row = G.table[g] if side == "left" else G.table[:, g]
    return tuple(sorted(int(row[c]) for c in C))


def inverse_set(G: FiniteGroup, C: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(G.inverse[c] for c in C))


def cyclic_subgroup(G: FiniteGroup, g: int) -> tuple[int, ...]:
    out, x = [0], g
    while x != 0:
        out.append(x)
        x = G.mul(x, g)
    return tuple(sorted(out))


def generated_subgroup(G: FiniteGroup, S: Iterable[int]) -> tuple[int, ...]:
    gens = [s for s in set(S) if s != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def is_subgroup(G: FiniteGroup, H: Iterable[int]) -> bool:
    Hs = set(H)
    if 0 not in Hs:
        return False
    return all(G.mul(a, G.inv(b)) in Hs for a in Hs for b in Hs)


def is_normal(G: FiniteGroup, H: Iterable[int]) -> bool:
    Hs = set(H)
    return all(G.mul(G.mul(x, h), G.inv(x)) in Hs for x in range(G.order) for h in Hs)


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily by element order then index."""
    gens: list[int] = []
    current = {0}
    for g in sorted(range(1, G.order), key=lambda x: (-G.element_order(x), x)):
        if g not in current:
            gens.append(g)
            current = set(generated_subgroup(G, gens))
            if len(current) == G.order:
                break
    return gens


# ---------------------------------------------------------------------------
# constructors

def from_table(table, name: str = "G", labels: Sequence[str] | None = None) -> FiniteGroup:
    return FiniteGroup(table, name=name, labels=labels)


def _from_elements(elements: Sequence, mul: Callable, name: str, labels: Sequence[str]) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    t = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            t[i, j] = index[mul(a, b)]
    return FiniteGroup(t, name=name, labels=labels)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, name=f"Z{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Pairs ``(g, h)`` in lexicographic order, index ``g * |H| + h``."""
    m = H.order
    t = (G.table[:, None, :, None] * m + H.table[None, :, None, :])
    n = G.order * m
    labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    return FiniteGroup(t.reshape(n, n), name=name or f"{G.name}x{H.name}", labels=labels)


def semidirect(N: FiniteGroup, H: FiniteGroup, action: Callable[[int], Sequence[int]],
               name: str | None = None, labels: Sequence[str] | None = None) -> FiniteGroup:
    """``N ⋊ H`` with ``(n1,h1)(n2,h2) = (n1·φ_h1(n2), h1h2)``.

    ``action(h)`` returns the image list of the automorphism φ_h of N.
    """
    phis = [tuple(action(h)) for h in range(H.order)]
    for h, phi in enumerate(phis):
        if not is_automorphism(N, phi):
            raise GroupError(f"action of {H.labels[h]} is not an automorphism of {N.name}")
    for h1 in range(H.order):
        for h2 in range(H.order):
            comp = tuple(phis[h1][phis[h2][x]] for x in range(N.order))
            if comp != phis[H.mul(h1, h2)]:
                raise GroupError("action is not a homomorphism H -> Aut(N)")
    m = H.order
    n = N.order * m
    t = np.empty((n, n), dtype=np.int64)
    for n1 in range(N.order):
        for h1 in range(m):
            row = n1 * m + h1
            phi = phis[h1]
            for n2 in range(N.order):
                nn = N.mul(n1, phi[n2])
                for h2 in range(m):
                    t[row, n2 * m + h2] = nn * m + H.mul(h1, h2)
    if labels is None:
        labels = [f"({a},{b})" for a in N.labels for b in H.labels]
    return FiniteGroup(t, name=name or f"{N.name}:{H.name}", labels=labels)


def _dihedral_labels(n: int) -> list[str]:
    def rot(i):
        return "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    labels = []
    for i in range(n):
        for j in (0, 1):
            lab = rot(i) + ("b" if j else "")
            labels.append(lab or "e")
    return labels


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element ``a^i b^j`` has index ``2i + j``."""
    Zn, Z2 = cyclic(n), cyclic(2)
    neg = [(-x) % n for x in range(n)]
    return semidirect(Zn, Z2, lambda h: neg if h else list(range(n)),
                      name=f"D{n}", labels=_dihedral_labels(n))


def generalized_dihedral(G: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """``dih(G) = G ⋊ Z2`` with the involution inverting the abelian group G."""
    if not G.abelian:
        raise GroupError("generalized dihedral group needs an abelian group")
    ident = list(range(G.order))
    return semidirect(G, cyclic(2), lambda h: list(G.inverse) if h else ident,
                      name=name or f"dih({G.name})")


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: ``a^{2n} = 1, x^2 = a^n, x a x^-1 = a^-1``.

    Element ``a^i x^j`` has index ``2i + j``.
    """
    if n < 2:
        raise GroupError("dicyclic group needs n >= 2")
    m = 2 * n
    elems = [(i, j) for i in range(m) for j in (0, 1)]

    def mul(p, q):
        i, j = p
        k, l = q
        e = i + (-k if j else k)
        if j and l:
            return ((e + n) % m, 0)
        return (e % m, (j + l) % 2)

    def lab(p):
        i, j = p
        s = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        s += "x" if j else ""
        return s or "e"

    return _from_elements(elems, mul, f"Dic{n}", [lab(p) for p in elems])


_QUAT = {  # unit products: (a, b) -> (sign, unit)
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    """Q8 with labels ``1, -1, i, -i, j, -j, k, -k`` (ij = k)."""
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]

    def mul(p, q):
        s, u = _QUAT[(p[1], q[1])]
        return (p[0] * q[0] * s, u)

    labels = [("" if s > 0 else "-") + u for s, u in elems]
    return _from_elements(elems, mul, "Q8", labels)


def _cycle_label(p: tuple[int, ...]) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(out) or "e"


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    # product gh means "apply h first, then g"
    return _from_elements(perms, lambda g, h: tuple(g[x] for x in h), name,
                          [_cycle_label(p) for p in perms])


def symmetric(n: int) -> FiniteGroup:
    """S_n in lexicographic one-line order; ``(gh)(x) = g(h(x))``."""
    if not 1 <= n <= 5:
        raise GroupError("symmetric(n) supports 1 <= n <= 5")
    return _perm_group(list(permutations(range(n))), f"S{n}")


def _parity(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def alternating(n: int = 4) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("alternating(n) supports 1 <= n <= 5")
    return _perm_group([p for p in permutations(range(n)) if _parity(p) == 0], f"A{n}")


def _z_action(n: int, mult: int):
    return lambda h: [(x * pow(mult, h, n)) % n for x in range(n)]


def nonabelian_21() -> FiniteGroup:
    """``Z7 ⋊ Z3`` with ``b a b^-1 = a^2``; labels ``a^i b^j``."""
    labels = []
    for i in range(7):
        for j in range(3):
            s = ("" if i == 0 else ("a" if i == 1 else f"a^{i}")) + \
                ("" if j == 0 else ("b" if j == 1 else "b^2"))
            labels.append(s or "e")
    return semidirect(cyclic(7), cyclic(3), _z_action(7, 2), name="Z7:Z3", labels=labels)


def abelian(*orders: int, name: str | None = None) -> FiniteGroup:
    """Product of cyclic groups; element (a1, ..., ar) in lexicographic order."""
    G = cyclic(orders[0])
    for m in orders[1:]:
        G = direct_product(G, cyclic(m))
    labels = G.labels
    if len(orders) > 1:
        labels = ["(" + ",".join(map(str, t)) + ")" for t in itertools.product(*map(range, orders))]
    lab = "x".join(f"Z{m}" for m in orders)
    return FiniteGroup(G.table, name=name or lab, labels=labels)


def _rename(G: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(G.table, name=name, labels=G.labels)


def _z2sq_z4() -> FiniteGroup:
    # Z4 acts on Z2xZ2 through the coordinate swap
    N = abelian(2, 2)
    swap = [0, 2, 1, 3]  # (a,b) -> (b,a) with index 2a+b
    return semidirect(N, cyclic(4), lambda h: swap if h % 2 else [0, 1, 2, 3],
                      name="(Z2xZ2):Z4")


def _pauli() -> FiniteGroup:
    # N = <iI> x <Z> = Z4 x Z2; conjugation by X sends (k, m) -> (k + 2m, m)
    N = abelian(4, 2)
    act = [((k + 2 * m) % 4) * 2 + m for k in range(4) for m in range(2)]
    return semidirect(N, cyclic(2), lambda h: act if h else list(range(8)),
                      name="(Z4xZ2):Z2")


def _z4_z4() -> FiniteGroup:
    return semidirect(cyclic(4), cyclic(4), lambda h: [(x * (-1) ** h) % 4 for x in range(4)],
                      name="Z4:Z4")


# Table-1 vocabulary, in table order.
CATALOG: dict[str, Callable[[], FiniteGroup]] = {
    "Z7": lambda: cyclic(7),
    "Z8": lambda: cyclic(8),
    "Z4xZ2": lambda: abelian(4, 2),
    "Z2^3": lambda: abelian(2, 2, 2, name="Z2^3"),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "Z9": lambda: cyclic(9),
    "Z3^2": lambda: abelian(3, 3, name="Z3^2"),
    "Z10": lambda: cyclic(10),
    "D5": lambda: dihedral(5),
    "Z11": lambda: cyclic(11),
    "Z12": lambda: cyclic(12),
    "Z6xZ2": lambda: abelian(6, 2),
    "D6": lambda: dihedral(6),
    "Dic3": lambda: dicyclic(3),
    "A4": lambda: alternating(4),
    "Z13": lambda: cyclic(13),
    "Z14": lambda: cyclic(14),
    "D7": lambda: dihedral(7),
    "Z15": lambda: cyclic(15),
    "Z16": lambda: cyclic(16),
    "Z4^2": lambda: abelian(4, 4, name="Z4^2"),
    "Z8xZ2": lambda: abelian(8, 2),
    "Z4xZ2^2": lambda: abelian(4, 2, 2, name="Z4xZ2^2"),
    "Z2^4": lambda: abelian(2, 2, 2, 2, name="Z2^4"),
    "D8": lambda: dihedral(8),
    "Dic4": lambda: dicyclic(4),
    "Z4:Z4": _z4_z4,
    "(Z2xZ2):Z4": _z2sq_z4,
    "Z8:Z2": lambda: semidirect(cyclic(8), cyclic(2), _z_action(8, 5), name="Z8:Z2"),
    "QD8": lambda: semidirect(cyclic(8), cyclic(2), _z_action(8, 3), name="QD8"),
    "D4xZ2": lambda: direct_product(dihedral(4), cyclic(2), name="D4xZ2"),
    "Q8xZ2": lambda: direct_product(quaternion(), cyclic(2), name="Q8xZ2"),
    "(Z4xZ2):Z2": _pauli,
}

EXTRA: dict[str, Callable[[], FiniteGroup]] = {
    "S4": lambda: symmetric(4),
    "Z7:Z3": nonabelian_21,
}

ALIASES = {
    "SD16": "QD8", "QD16": "QD8", "Q16": "Dic4", "Dic12": "Dic3", "M16": "Z8:Z2",
    "Z2^2:Z4": "(Z2xZ2):Z4", "Pauli": "(Z4xZ2):Z2", "C7:C3": "Z7:Z3",
    "Z3xZ3": "Z3^2", "Z2xZ2xZ2": "Z2^3", "Z4xZ4": "Z4^2", "Z2xZ2xZ2xZ2": "Z2^4",
    "Z4xZ2xZ2": "Z4xZ2^2",
}


def catalog(order: int | None = None) -> list[FiniteGroup]:
    """The Table-1 groups (orders 7..16), optionally filtered by order."""
    groups = [f() for f in CATALOG.values()]
    if order is not None:
        groups = [G for G in groups if G.order == order]
    return groups


_ATOM = re.compile(r"^(Z|D|Dic|Q|S|A)(\d+)$")


def _atom(tok: str) -> FiniteGroup:
    m = _ATOM.match(tok)
    if not m:
        if tok in CATALOG:
            return CATALOG[tok]()
        raise GroupError(f"unknown group descriptor {tok!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "Z":
        return cyclic(n)
    if kind == "D":
        return dihedral(n)
    if kind == "Dic":
        return dicyclic(n)
    if kind == "Q":
        if n == 8:
            return quaternion()
        if n % 4 == 0 and n >= 8:
            return dicyclic(n // 4)
        raise GroupError(f"no quaternion group of order {n}")
    if kind == "S":
        return symmetric(n)
    return alternating(n)


def make_group(descriptor) -> FiniteGroup:
    """Build a group from a descriptor.

    Accepts catalog names ("Z4xZ2^2", "Dic4", "QD8"), the ``C`` spelling of
    cyclic groups ("C3xC3"), products of atoms joined by ``x`` with optional
    powers, ``dih(<descriptor>)``, a JSON table string, or a nested list
    table.
    """
    if isinstance(descriptor, FiniteGroup):
        return descriptor
    if isinstance(descriptor, (list, tuple)):
        return from_table(descriptor, name="G")
    text = str(descriptor).strip()
    if text.startswith("["):
        try:
            return from_table(json.loads(text), name="G")
        except json.JSONDecodeError as exc:
            raise GroupError(f"malformed table JSON: {exc}") from None
    if text.startswith("dih(") and text.endswith(")"):
        return generalized_dihedral(make_group(text[4:-1]))
    norm = re.sub(r"(^|[x(:×⋊])C(\d+)", r"\1Z\2", text).replace("×", "x").replace("⋊", ":")
    norm = ALIASES.get(norm, norm)
    if norm in CATALOG:
        return CATALOG[norm]()
    if norm in EXTRA:
        return EXTRA[norm]()
    factors = []
    for tok in norm.split("x"):
        base, _, exp = tok.partition("^")
        if not base:
            raise GroupError(f"unknown group descriptor {text!r}")
        reps = int(exp) if exp else 1
        factors.extend([base] * reps)
    try:
        groups = [_atom(f) for f in factors]
    except GroupError:
        raise GroupError(f"unknown group descriptor {text!r}") from None
    if len(groups) > 1 and all(f.startswith("Z") and f[1:].isdigit() for f in factors):
        return abelian(*(int(f[1:]) for f in factors), name=norm)
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return _rename(G, norm) if len(groups) > 1 else G


def subgroup_as_group(G: FiniteGroup, H: Sequence[int], name: str | None = None):
    """Return ``(K, embed)``: H as a standalone group and the index map K -> G."""
    embed = tuple(sorted(H))
    if embed[0] != 0 or not is_subgroup(G, embed):
        raise GroupError("not a subgroup")
    pos = {g: i for i, g in enumerate(embed)}
    t = [[pos[G.mul(a, b)] for b in embed] for a in embed]
    return FiniteGroup(t, name=name or f"sub({G.name})",
                       labels=[G.labels[g] for g in embed]), embed


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True)
class GroupMap:
    images: tuple[int, ...]
    kind: str = "automorphism"  # automorphism | homomorphism-to-Z2 | left-translation

    def __call__(self, g: int) -> int:
        return self.images[g]

    def apply_set(self, C: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.images[c] for c in C))

    def compose(self, other: "GroupMap") -> "GroupMap":
        """``self ∘ other``."""
        return GroupMap(tuple(self.images[x] for x in other.images), self.kind)

    def inverse(self) -> "GroupMap":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return GroupMap(tuple(inv), self.kind)

    def order(self) -> int:
        k, cur = 1, self
        ident = tuple(range(len(self.images)))
        while cur.images != ident:
            cur = cur.compose(self)
            k += 1
        return k


def is_automorphism(G: FiniteGroup, images: Sequence[int]) -> bool:
    im = np.asarray(images)
    if im.shape != (G.order,) or im[0] != 0 or len(set(im.tolist())) != G.order:
        return False
    return bool(np.array_equal(im[G.table], G.table[im[:, None], im[None, :]]))


def left_translation(G: FiniteGroup, g: int) -> GroupMap:
    return GroupMap(tuple(int(x) for x in G.table[g]), "left-translation")


def _extend(G: FiniteGroup, H: FiniteGroup, partial: dict[int, int], gen: int, img: int,
            injective: bool) -> dict[int, int] | None:
    """Extend a homomorphism defined on a subgroup by ``gen -> img``.

    Returns the extension to the generated subgroup, or None on conflict.
    """
    mapping = dict(partial)
    if gen in mapping:
        return mapping if mapping[gen] == img else None
    gens = [g for g in mapping if g != 0] + [gen]
    mapping[gen] = img
    frontier = list(mapping)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                fy = H.mul(mapping[x], mapping[s])
                if y in mapping:
                    if mapping[y] != fy:
                        return None
                else:
                    mapping[y] = fy
                    nxt.append(y)
        frontier = nxt
    if injective and len(set(mapping.values())) != len(mapping):
        return None
    return mapping


def _homomorphisms(G: FiniteGroup, H: FiniteGroup, injective: bool):
    gens = generating_set(G)
    orders = [G.element_order(g) for g in gens]

    def rec(i, mapping):
        if i == len(gens):
            yield tuple(mapping[g] for g in range(G.order))
            return
        for img in range(H.order):
            if H.element_order(img) > orders[i] or orders[i] % H.element_order(img):
                continue
            if injective and H.element_order(img) != orders[i]:
                continue
            ext = _extend(G, H, mapping, gens[i], img, injective)
            if ext is not None:
                yield from rec(i + 1, ext)

    yield from rec(0, {0: 0})


def group_automorphisms(G: FiniteGroup) -> list[GroupMap]:
    """All automorphisms of G, by backtracking over generator images.

    Sorted by image tuple, so the identity map comes first.
    """
    autos = [GroupMap(im) for im in _homomorphisms(G, G, injective=True)]
    return sorted(autos, key=lambda a: a.images)


def bipartition_homomorphism(G: FiniteGroup, S: Iterable[int]) -> GroupMap | None:
    """A surjection ``G -> Z2`` sending every element of S to 1, if one exists."""
    S = list(S)
    Z2 = cyclic(2)
    for im in _homomorphisms(G, Z2, injective=False):
        if all(im[s] == 1 for s in S) and any(im):
            return GroupMap(im, "homomorphism-to-Z2")
    return None
