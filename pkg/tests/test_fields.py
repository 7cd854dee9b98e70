from __future__ import annotations

import pytest

from cayley_incidence.fields import (
    PRIMITIVE_POLYNOMIALS, FieldError, field_table, gaussian_one, is_prime, prime_power,
)


@pytest.mark.parametrize("pm", sorted(PRIMITIVE_POLYNOMIALS) + [(2, 1), (3, 1), (7, 1)])
def test_field_axioms(pm):
    F = field_table(*pm)
    els = F.elements()
    assert len(els) == F.order == len(set(els))
    one = (1,) + (0,) * (F.m - 1)
    sample = els[:: max(1, len(els) // 12)]
    for u in sample:
        assert F.add(u, F.zero) == u and F.mul(u, one) == u
        if u != F.zero:
            assert any(F.mul(u, v) == one for v in els)
        for v in sample:
            assert F.mul(u, v) == F.mul(v, u)
            for w in sample[:4]:
                assert F.mul(u, F.add(v, w)) == F.add(F.mul(u, v), F.mul(u, w))


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(8) == (2, 3) and prime_power(49) == (7, 2)
    with pytest.raises(FieldError):
        prime_power(12)
    assert gaussian_one(3, 2) == 7 and gaussian_one(2, 3) == 4


def test_unsupported_fields():
    with pytest.raises(FieldError):
        field_table(4, 1)
    with pytest.raises(FieldError):
        field_table(2, 9)
