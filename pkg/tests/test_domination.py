import random

import pytest
from hypothesis import given, settings

from commring.domination import (
    SignedCertificate,
    gamma_bounds,
    gamma_bruteforce,
    gamma_exact,
    gamma_signed_bruteforce,
    gamma_signed_exact,
    verify_dominating,
    verify_signed,
)
from commring.errors import TooLarge
from commring.graph import (
    commuting_graph,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    random_graph,
)
from commring.ring import direct_product
from test_graph import graphs


def test_gamma_examples(E4, F4, E9):
    assert gamma_exact(commuting_graph(E4)).gamma == 3
    assert gamma_exact(commuting_graph(E9)).gamma == 4
    assert gamma_exact(commuting_graph(direct_product([E4, F4]))).gamma == 3
    assert gamma_exact(empty_graph(0)).gamma == 0


def test_bruteforce_examples():
    assert gamma_bruteforce(cycle_graph(4)).gamma == 2
    assert gamma_bruteforce(disjoint_union(complete_graph(3), empty_graph(4))).gamma == 5
    c = gamma_bruteforce(disjoint_union(path_graph(2), path_graph(2)))
    assert c.gamma == 2 and c.witness == (0, 2)
    with pytest.raises(TooLarge):
        gamma_bruteforce(empty_graph(25))


def test_bounds():
    b = gamma_bounds(complete_graph(5))
    assert (b.lower, b.upper) == (1, 1)
    b = gamma_bounds(empty_graph(3))
    assert (b.lower, b.upper, b.no_isolated) == (3, 3, False)


def test_bounds_bracket_E9(E9):
    G = commuting_graph(E9)
    b = gamma_bounds(G)
    assert b.lower <= 4 <= b.upper


def test_signed_examples(E4):
    assert gamma_signed_exact(complete_graph(4)).gamma_s == 2
    assert gamma_signed_exact(complete_graph(5)).gamma_s == 1
    assert gamma_signed_exact(commuting_graph(E4)).gamma_s == 3
    assert gamma_signed_exact(disjoint_union(*[path_graph(2)] * 4)).gamma_s == 8
    assert gamma_signed_exact(empty_graph(0)).gamma_s == 0


def test_signed_certificate_weight_check():
    with pytest.raises(ValueError):
        SignedCertificate(3, (0,), 4)


def test_verifiers():
    C4 = cycle_graph(4)
    assert verify_dominating(C4, [0, 2])
    assert not verify_dominating(C4, [0])
    assert verify_signed(complete_graph(5), [0, 1])
    assert not verify_signed(complete_graph(5), [0, 1, 2])
    assert not verify_dominating(C4, [7])


def test_certificate_text(E9):
    c = gamma_exact(commuting_graph(E9))
    assert c.to_text().splitlines()[0] == "gamma 4"


@settings(max_examples=300, deadline=None)
@given(graphs(11))
def test_gamma_matches_bruteforce(G):
    a, b = gamma_exact(G), gamma_bruteforce(G)
    assert a.gamma == b.gamma
    assert verify_dominating(G, a.witness) and len(a.witness) == a.gamma


@settings(max_examples=300, deadline=None)
@given(graphs(11))
def test_signed_matches_bruteforce(G):
    a, b = gamma_signed_exact(G), gamma_signed_bruteforce(G)
    assert a.gamma_s == b.gamma_s
    assert verify_signed(G, a.minus_set)
    assert (G.m - a.gamma_s) % 2 == 0


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_random_oracle(p):
    rng = random.Random(int(p * 10))
    for _ in range(40):
        G = random_graph(12, p, rng)
        assert gamma_exact(G).gamma == gamma_bruteforce(G).gamma
        assert gamma_signed_exact(G).gamma_s == gamma_signed_bruteforce(G).gamma_s


def test_deterministic_witness(E9):
    G = complement(commuting_graph(E9))
    assert gamma_exact(G) == gamma_exact(G)
    assert gamma_signed_exact(G) == gamma_signed_exact(G)
