import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latnash import topology
from latnash.errors import (
    CarrierMismatch,
    CarrierTooLarge,
    ElementOutOfCarrier,
    NotALattice,
    PreconditionViolated,
)
from latnash.omega import finite_truncation
from latnash.order import (
    build_poset,
    chain,
    product_poset,
    random_lattice,
    random_sublattice,
)

from oracles import alternating_pass_closure


def diamond():
    return build_poset(["m", "x", "y", "M"],
                       [("m", "x"), ("m", "y"), ("x", "M"), ("y", "M")])


# --------------------------------------------------------------------------
# generation


def test_empty_subbasis_is_indiscrete():
    T = topology.generate_topology(["a", "b", "c"], [])
    assert T.closed_masks == frozenset({0, 0b111})


def test_singletons_generate_power_set():
    T = topology.generate_topology(["a", "b", "c"], [["a"], ["b"], ["c"]])
    assert len(T.closed_masks) == 8


def test_truncation_interval_subbasis_generates_power_set():
    # {x1} is the intersection of the rays above and below x1, so the
    # finite slice collapses to the discrete topology; the cofinite
    # behaviour of the infinite lattice is NOT reproduced by truncations.
    L = finite_truncation(2)  # carrier m, x0, x1, M
    subbasis = [L.down_set(e) for e in L.elements]
    subbasis += [L.up_set(e) for e in L.elements]
    T = topology.generate_topology(L.elements, subbasis)
    assert len(T.closed_masks) == 2 ** 4
    assert T.is_closed({"x1"})


def test_generation_matches_alternating_pass_oracle():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 6)
        carrier = [f"c{i}" for i in range(n)]
        full = (1 << n) - 1
        masks = [rng.randint(0, full) for _ in range(rng.randint(0, 5))]
        subbasis = [[carrier[i] for i in range(n) if (m >> i) & 1]
                    for m in masks]
        T = topology.generate_topology(carrier, subbasis)
        assert sorted(T.closed_masks) == alternating_pass_closure(masks, full)


def test_generate_validates_carrier():
    with pytest.raises(ElementOutOfCarrier):
        topology.generate_topology(["a"], [["zz"]])
    with pytest.raises(CarrierTooLarge):
        topology.generate_topology([f"c{i}" for i in range(17)], [])


def test_generation_idempotent():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(1, 6)
        carrier = [f"c{i}" for i in range(n)]
        full = (1 << n) - 1
        masks = [rng.randint(0, full) for _ in range(rng.randint(0, 5))]
        subbasis = [[carrier[i] for i in range(n) if (m >> i) & 1] for m in masks]
        T = topology.generate_topology(carrier, subbasis)
        again = topology.generate_topology(
            carrier, [T.set_of(m) for m in T.closed_masks])
        assert again == T


# --------------------------------------------------------------------------
# interval topology


def test_interval_topology_of_chain_is_discrete():
    c = chain([str(i) for i in range(5)])
    T = topology.interval_topology(c)
    assert len(T.closed_masks) == 2 ** 5


def test_interval_topology_singleton():
    P = build_poset(["a"], [])
    T = topology.interval_topology(P)
    assert T.closed_masks == frozenset({0, 1})


def test_interval_topology_diamond_discrete():
    T = topology.interval_topology(diamond())
    assert len(T.closed_masks) == 16


def test_rays_are_closed():
    rng = random.Random(7)
    for _ in range(10):
        P = random_lattice(rng, max_size=7)
        T = topology.interval_topology(P)
        for x in P.elements:
            assert T.is_closed(P.down_set(x))
            assert T.is_closed(P.up_set(x))


# --------------------------------------------------------------------------
# restriction and products


def test_restrict_identity_and_discrete():
    d = diamond()
    T = topology.interval_topology(d)
    assert topology.restrict(T, d.elements) == T
    R = topology.restrict(T, {"m", "x"})
    assert len(R.closed_masks) == 4  # discrete on two points


def test_restrict_diamond_to_chain():
    d = diamond()
    lhs = topology.restrict(topology.interval_topology(d), {"m", "x", "M"})
    rhs = topology.interval_topology(chain(["m", "x", "M"]))
    assert lhs == rhs


def test_restrict_unknown_element():
    T = topology.generate_topology(["a"], [])
    with pytest.raises(ElementOutOfCarrier):
        topology.restrict(T, {"zz"})


def test_product_of_discrete_is_discrete():
    c2 = chain(["0", "1"])
    T = topology.interval_topology(c2)
    P = topology.product_topology([T, T])
    assert len(P.closed_masks) == 16
    assert P.carrier == ("(0,0)", "(0,1)", "(1,0)", "(1,1)")


def test_product_single_factor_unchanged():
    T = topology.generate_topology(["a", "b"], [["a"]])
    assert topology.product_topology([T]) == T


def test_product_lemma_instance_chain2_chain3():
    c2, c3 = chain(["0", "1"]), chain(["0", "1", "2"])
    lhs = topology.interval_topology(product_poset([c2, c3]))
    rhs = topology.product_topology(
        [topology.interval_topology(c2), topology.interval_topology(c3)])
    assert lhs == rhs


# --------------------------------------------------------------------------
# lemma checkers


def test_restriction_lemma_trivial_and_diamond():
    d = diamond()
    assert topology.check_restriction_lemma(d, d.elements)
    assert topology.check_restriction_lemma(d, {"m", "M"})


def test_restriction_lemma_precondition():
    d = diamond()
    with pytest.raises(PreconditionViolated):
        topology.check_restriction_lemma(d, {"x", "y"})


def test_restriction_lemma_random_instances():
    rng = random.Random(0)
    for _ in range(100):
        P = random_lattice(rng, max_size=8)
        Q = random_sublattice(rng, P)
        assert topology.check_restriction_lemma(P, Q)


def test_product_lemma_single_and_random():
    c2 = chain(["0", "1"])
    assert topology.check_product_interval_lemma([c2])
    assert topology.check_product_interval_lemma([c2, c2])
    rng = random.Random(1)
    done = 0
    while done < 20:
        sizes = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
        total = 1
        for s in sizes:
            total *= s
        if total > 12:
            continue
        factors = [chain([str(v) for v in range(s)]) for s in sizes]
        assert topology.check_product_interval_lemma(factors)
        done += 1


def test_product_lemma_rejects_non_lattice():
    two = build_poset(["a", "b"], [])
    with pytest.raises(NotALattice):
        topology.check_product_interval_lemma([two])


# --------------------------------------------------------------------------
# finer_than


def test_finer_than_basics():
    carrier = ["a", "b"]
    disc = topology.generate_topology(carrier, [["a"], ["b"]])
    indisc = topology.generate_topology(carrier, [])
    assert topology.finer_than(disc, disc)
    assert topology.finer_than(disc, indisc)
    assert not topology.finer_than(indisc, disc)
    other = topology.generate_topology(["z"], [])
    with pytest.raises(CarrierMismatch):
        topology.finer_than(disc, other)


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=30, deadline=None)
def test_finer_than_is_a_partial_order(seed):
    rng = random.Random(seed)
    carrier = [f"c{i}" for i in range(rng.randint(1, 4))]
    full = (1 << len(carrier)) - 1

    def rand_topology():
        masks = [rng.randint(0, full) for _ in range(rng.randint(0, 4))]
        sb = [[carrier[i] for i in range(len(carrier)) if (m >> i) & 1]
              for m in masks]
        return topology.generate_topology(carrier, sb)

    a, b, c = rand_topology(), rand_topology(), rand_topology()
    assert topology.finer_than(a, a)
    if topology.finer_than(a, b) and topology.finer_than(b, a):
        assert a == b
    if topology.finer_than(a, b) and topology.finer_than(b, c):
        assert topology.finer_than(a, c)


# --------------------------------------------------------------------------
# dump format


def test_dump_golden():
    T = topology.generate_topology(["a", "b", "c"], [["a", "c"]])
    # closed family: {}, {a,c}, {a,b,c}
    assert T.dump() == "\na,b,c\na,c\n"


def test_dump_lines_sorted_and_stable():
    d = diamond()
    T = topology.interval_topology(d)
    dump = T.dump()
    lines = dump.strip("\n").split("\n")
    assert lines == sorted(lines)
    assert topology.interval_topology(d).dump() == dump
