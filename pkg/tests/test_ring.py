import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commring.errors import (
    NotAbelianGroup,
    NotAssociativeMul,
    NotDistributive,
    NotPrime,
    OverflowGuard,
    RingFormatError,
    TableShapeError,
)
from commring.ring import (
    ElementSet,
    additive_order,
    center,
    centralizer,
    cyclic_ring,
    direct_product,
    functional_ring,
    is_commutative,
    presentation_E,
    presentation_F,
    relabel,
    ring_from_text,
    ring_iso,
    ring_to_text,
    validate_ring,
    zero_ring,
)


def z2_tables():
    add = [[0, 1], [1, 0]]
    return add, [[0, 0], [0, 1]]


def test_validate_accepts_z2():
    R = validate_ring(*z2_tables())
    assert R.order == 2 and is_commutative(R)


def test_shape_errors():
    with pytest.raises(TableShapeError):
        validate_ring([[0, 1], [1, 0]], [[0, 0, 0]])
    with pytest.raises(TableShapeError):
        validate_ring([[0, 1], [1, 2]], [[0, 0], [0, 0]])


def test_not_a_group():
    # 1 + 1 = 1 has no inverse
    with pytest.raises(NotAbelianGroup):
        validate_ring([[0, 1], [1, 1]], [[0, 0], [0, 0]])


def test_not_distributive():
    # Z3 additively, 1*1 = 1, 1*2 = 1 breaks 1*(1+1) = 1*1 + 1*1
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[0, 0, 0], [0, 1, 1], [0, 1, 1]]
    with pytest.raises(NotDistributive) as exc:
        validate_ring(add, mul)
    assert len(exc.value.triple) == 3


def test_not_associative():
    from commring.ring import coordinate_index, mixed_radix_elements
    moduli = (2, 2)
    elems = mixed_radix_elements(moduli)
    add = [[coordinate_index(tuple((a + b) % 2 for a, b in zip(u, v)), moduli) for v in elems] for u in elems]
    # x = (1,0), y = (0,1); x*x = y, x*y = y: (x*x)*x = y*x = 0 but x*(x*x) = y

    def mul(u, v):
        c = (u[0] * v[0] + u[0] * v[1]) % 2
        return coordinate_index((0, c), moduli)
    mt = [[mul(u, v) for v in elems] for u in elems]
    with pytest.raises(NotAssociativeMul):
        validate_ring(add, mt)


def test_presentation_E4_structure(E4, F4):
    assert E4.order == 4 and not is_commutative(E4)
    assert list(center(E4)) == [0]
    assert list(center(F4)) == [0]
    # x = index 2, y = index 1: x^2 = x, y^2 = y, xy = x, yx = y
    x, y = 2, 1
    assert E4.mul[x][x] == x and E4.mul[y][y] == y
    assert E4.mul[x][y] == x and E4.mul[y][x] == y
    assert F4.mul[x][y] == y and F4.mul[y][x] == x


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_presentations_zero_center(p):
    for R in (presentation_E(p), presentation_F(p)):
        validate_ring(R.add, R.mul)
        assert R.order == p * p
        assert len(center(R)) == 1
        # one-sided identities exist, a two-sided unity does not
        n = R.order
        assert not any(all(R.mul[u][a] == a == R.mul[a][u] for a in range(n)) for u in range(n))


def test_presentation_needs_prime():
    with pytest.raises(NotPrime):
        presentation_E(4)


def test_E_and_F_not_isomorphic(E4, F4):
    assert ring_iso(E4, F4) is None
    assert ring_iso(E4, E4) is not None


def test_centralizer_contains_zero_and_self(E9):
    for a in range(E9.order):
        C = centralizer(E9, a)
        assert 0 in C and a in C
        assert E9.order % len(C) == 0


def test_additive_order():
    R = cyclic_ring(6)
    assert [additive_order(R, a) for a in range(6)] == [1, 6, 3, 2, 3, 6]


def test_zero_ring_is_commutative():
    R = zero_ring(5)
    assert is_commutative(R) and all(v == 0 for row in R.mul for v in row)


def test_direct_product_center(E4, Z2zero):
    P = direct_product([E4, Z2zero])
    assert P.order == 8
    assert len(center(P)) == 2
    validate_ring(P.add, P.mul)


def test_direct_product_cap(E4):
    with pytest.raises(OverflowGuard):
        direct_product([E4] * 7, cap=4096)


def test_functional_ring_matches_presentations():
    assert ring_iso(functional_ring(3, 2), presentation_E(3)) is not None
    assert ring_iso(functional_ring(2, 2, left=False), presentation_F(2)) is not None
    R = functional_ring(3, 3)
    validate_ring(R.add, R.mul)
    assert R.order == 27 and len(center(R)) == 1


def test_element_set_ops():
    a = ElementSet.of(8, [0, 1, 3])
    b = ElementSet.of(8, [0, 3, 5])
    assert list(a & b) == [0, 3]
    assert list(a | b) == [0, 1, 3, 5]
    assert 3 in a and 5 not in a and 9 not in a
    with pytest.raises(ValueError):
        ElementSet.of(4, [4])


def test_text_round_trip(E9, tmp_path):
    from commring.ring import load_ring, save_ring
    path = tmp_path / "e9.ring"
    save_ring(E9, path)
    S = load_ring(path)
    assert S == E9 and S.name == E9.name
    assert ring_to_text(S) == ring_to_text(E9)


def test_bad_ring_files():
    with pytest.raises(RingFormatError):
        ring_from_text("not json")
    with pytest.raises(RingFormatError):
        ring_from_text('{"format": "other"}')
    with pytest.raises(RingFormatError):
        ring_from_text('{"format": "commring/1", "order": 2}')


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, True), (2, False), (3, True), (3, False)]), st.randoms(use_true_random=False))
def test_relabel_is_isomorphic(which, rnd):
    p, left = which
    R = presentation_E(p) if left else presentation_F(p)
    rest = list(range(1, R.order))
    rnd.shuffle(rest)
    S = relabel(R, [0] + rest)
    validate_ring(S.add, S.mul)
    phi = ring_iso(R, S)
    assert phi is not None
    for a in range(R.order):
        for b in range(R.order):
            assert phi[R.mul[a][b]] == S.mul[phi[a]][phi[b]]
            assert phi[R.add[a][b]] == S.add[phi[a]][phi[b]]


def test_relabel_must_fix_zero(E4):
    with pytest.raises(ValueError):
        relabel(E4, [1, 0, 2, 3])
