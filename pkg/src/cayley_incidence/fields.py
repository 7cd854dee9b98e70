"""Small finite fields GF(p^m) as log/antilog tables over a primitive polynomial."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

MAX_FIELD_SIZE = 343

# Monic primitive polynomials, coefficients from the constant term upwards.
PRIMITIVE_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),        # x^3 + x + 1, i.e. x^3 - x - 1 over F_2
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
    # larger fields, needed only so every PG family with at most 64 points exists
    (3, 4): (2, 0, 0, 2, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 3): (4, 0, 6, 1),
}

# Least primitive root of each prime up to 64.
PRIMITIVE_ROOTS = {
    2: 1, 3: 2, 5: 2, 7: 3, 11: 2, 13: 2, 17: 3, 19: 2, 23: 5, 29: 2, 31: 3,
    37: 2, 41: 6, 43: 3, 47: 5, 53: 2, 59: 2, 61: 2,
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, or FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


@dataclass(frozen=True)
class FiniteFieldTable:
    """GF(p^m); element i <-> coefficient vector of ``antilog[i] = α^i``."""

    p: int
    m: int
    modulus: tuple[int, ...]
    antilog: tuple[tuple[int, ...], ...]
    log: dict = field(hash=False, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.m

    def add(self, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % self.p for a, b in zip(u, v))

    def mul(self, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        if u == self.zero or v == self.zero:
            return self.zero
        return self.antilog[(self.log[u] + self.log[v]) % (self.order - 1)]

    def scale(self, k: int, u: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((k * a) % self.p for a in u)

    def elements(self) -> list[tuple[int, ...]]:
        return [self.zero] + list(self.antilog)

    def to_int(self, u: tuple[int, ...]) -> int:
        """Base-p integer with the constant coefficient most significant."""
        out = 0
        for a in u:
            out = out * self.p + a
        return out


@lru_cache(maxsize=None)
def field_table(p: int, m: int) -> FiniteFieldTable:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1 or p ** m > MAX_FIELD_SIZE:
        raise FieldError(f"GF({p}^{m}) is outside the stored table")
    if m == 1:
        g = PRIMITIVE_ROOTS[p]
        modulus = ((-g) % p, 1)
    else:
        modulus = PRIMITIVE_POLYNOMIALS.get((p, m))
        if modulus is None:
            raise FieldError(f"no primitive polynomial stored for GF({p}^{m})")
    size = p ** m
    # powers of x modulo the modulus
    cur = [1] + [0] * (m - 1)
    antilog = []
    for _ in range(size - 1):
        antilog.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1] if m > 1 else [0]
        if m == 1:
            cur = [(top * -modulus[0]) % p]
        else:
            cur = [(c - top * modulus[i]) % p for i, c in enumerate(cur)]
    if cur != [1] + [0] * (m - 1) or len(set(antilog)) != size - 1:
        raise FieldError(f"stored polynomial for GF({p}^{m}) is not primitive")
    log = {v: i for i, v in enumerate(antilog)}
    return FiniteFieldTable(p, m, tuple(modulus), tuple(antilog), log)


def gaussian_one(n: int, q: int) -> int:
    """Number of 1-dimensional subspaces of F_q^n."""
    return (q ** n - 1) // (q - 1)
