import itertools

import pytest
from hypothesis import given, strategies as st

from freespec.errors import InputError, ResourceCapError
from freespec.ncpart import (NCPairing, NCPartition, Permutation, catalan, enumerate_nc_partitions,
                             enumerate_pairings, kreweras, loop_count)


def all_pairings(points):
    """Every perfect matching, crossing or not."""
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in all_pairings(rest):
            yield [(a, points[i])] + m


def all_set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def crosses(blocks):
    for b1, b2 in itertools.permutations(blocks, 2):
        for a, c in itertools.combinations(sorted(b1), 2):
            for b, d in itertools.combinations(sorted(b2), 2):
                if a < b < c < d:
                    return True
    return False


def catalan_by_recursion(n):
    c = [1]
    for m in range(n):
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return c[n]


@pytest.mark.parametrize("k,expected", [(0, 1), (3, 5), (8, 1430)])
def test_catalan_values(k, expected):
    assert catalan(k) == expected


def test_catalan_matches_recursion():
    assert all(catalan(k) == catalan_by_recursion(k) for k in range(15))


def test_pairings_k2_explicit():
    assert [p.pairs for p in enumerate_pairings(2)] == [((1, 2), (3, 4)), ((1, 4), (2, 3))]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_pairings_match_brute_force(k):
    brute = {tuple(sorted(m)) for m in all_pairings(list(range(1, 2 * k + 1))) if not crosses(m)}
    got = [p.pairs for p in enumerate_pairings(k)]
    assert set(got) == brute
    assert len(got) == catalan(k)
    assert got == sorted(got)


def test_pairing_counts_up_to_cap():
    assert [len(enumerate_pairings(k)) for k in range(1, 9)] == [catalan(k) for k in range(1, 9)]


def test_pairing_cap():
    with pytest.raises(ResourceCapError):
        enumerate_pairings(9)
    with pytest.raises(InputError):
        enumerate_pairings(0)


def test_crossing_pairing_rejected():
    with pytest.raises(InputError):
        NCPairing(((1, 3), (2, 4)))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_partitions_match_brute_force(m):
    brute = {tuple(sorted(tuple(sorted(b)) for b in p))
             for p in all_set_partitions(list(range(1, m + 1))) if not crosses(p)}
    got = {p.blocks for p in enumerate_nc_partitions(m)}
    assert got == brute
    assert len(got) == catalan(m)


def test_m4_excludes_exactly_the_crossing_partition():
    all4 = {tuple(sorted(tuple(sorted(b)) for b in p)) for p in all_set_partitions([1, 2, 3, 4])}
    assert len(all4) == 15
    nc = {p.blocks for p in enumerate_nc_partitions(4)}
    assert all4 - nc == {((1, 3), (2, 4))}


def test_partition_cap():
    assert len(enumerate_nc_partitions(10)) == 16796
    with pytest.raises(ResourceCapError):
        enumerate_nc_partitions(11)


def kreweras_by_definition(p):
    """Coarsest partition of the primed points keeping the union noncrossing.

    Point i sits at position 2i-1 and i' at 2i.
    """
    m = p.size
    base = [tuple(2 * x - 1 for x in b) for b in p.blocks]
    best = None
    for q in enumerate_nc_partitions(m):
        primed = [tuple(2 * x for x in b) for b in q.blocks]
        if not crosses(base + primed):
            if best is None or len(q.blocks) < len(best.blocks):
                best = q
    return best


def test_kreweras_examples():
    assert kreweras(NCPartition.discrete(3)) == NCPartition.full(3)
    assert kreweras(NCPartition.full(3)) == NCPartition.discrete(3)
    assert kreweras(NCPartition(((1, 2), (3,)))) == NCPartition(((1,), (2, 3)))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_kreweras_matches_definition(m):
    for p in enumerate_nc_partitions(m):
        assert kreweras(p) == kreweras_by_definition(p)


@pytest.mark.parametrize("m", range(1, 7))
def test_double_kreweras_is_rotation(m):
    for p in enumerate_nc_partitions(m):
        assert kreweras(kreweras(p)) == p.rotate(-1)


@pytest.mark.parametrize("m", range(1, 7))
def test_kreweras_block_count(m):
    # |pi| + |K(pi)| = m + 1
    for p in enumerate_nc_partitions(m):
        assert len(p.blocks) + len(kreweras(p).blocks) == m + 1


def test_loop_count_examples():
    a = NCPairing(((1, 2), (3, 4)))
    b = NCPairing(((1, 4), (2, 3)))
    assert loop_count(a, a) == 2
    assert loop_count(a, b) == 1
    assert loop_count(b, b) == 2


def test_loop_count_size_mismatch():
    with pytest.raises(InputError):
        loop_count(enumerate_pairings(1)[0], enumerate_pairings(2)[0])


@given(st.integers(1, 5), st.data())
def test_loop_count_properties(k, data):
    diagrams = enumerate_pairings(k)
    p = data.draw(st.sampled_from(diagrams))
    q = data.draw(st.sampled_from(diagrams))
    c = loop_count(p, q)
    assert c == loop_count(q, p)
    assert 1 <= c <= k
    assert (c == k) == (p == q)


def test_permutation_basics():
    g = Permutation.cyclic(4)
    assert g.cycles() == [(1, 2, 3, 4)]
    assert (g @ g.inverse()).fixed_points() == 4
    with pytest.raises(InputError):
        Permutation((1, 1, 2))
