import json
from fractions import Fraction
from itertools import product

import pytest

from freespec import weingarten as wg
from freespec.errors import InputError, ResourceCapError, SingularMatrixError
from freespec.ncpart import catalan
from freespec.rational import RationalMatrix, leading_principal_minors
from freespec.weingarten import (MonomialSpec, asymptotic_semicircle_report, gram_matrix, integrate_monomial,
                                 truncated_character_moment, weingarten_matrix)

F = Fraction


def test_gram_small():
    assert gram_matrix(1, 7) == RationalMatrix(((7,),))
    assert gram_matrix(2, 3) == RationalMatrix(((9, 3), (3, 9)))
    assert gram_matrix(2, 2) == RationalMatrix(((4, 2), (2, 4)))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_gram_symmetric_with_constant_diagonal(k):
    g = gram_matrix(k, 3)
    assert g.is_symmetric()
    assert all(g[i, i] == 3 ** k for i in range(catalan(k)))


@pytest.mark.parametrize("k,n", [(k, n) for k in range(1, 5) for n in (2, 3, 5)])
def test_gram_positive_definite(k, n):
    assert all(m > 0 for m in leading_principal_minors(gram_matrix(k, n)))


def test_weingarten_small():
    assert weingarten_matrix(1, 2) == RationalMatrix(((F(1, 2),),))
    assert weingarten_matrix(2, 2) == RationalMatrix(((F(4, 12), F(-2, 12)), (F(-2, 12), F(4, 12))))


@pytest.mark.parametrize("k,n", [(k, n) for k in range(1, 5) for n in (2, 3, 4, 7)])
def test_weingarten_is_inverse(k, n):
    assert weingarten_matrix(k, n) @ gram_matrix(k, n) == RationalMatrix.identity(catalan(k))


def test_singular_at_n1():
    with pytest.raises(SingularMatrixError):
        weingarten_matrix(2, 1)
    assert weingarten_matrix(1, 1) == RationalMatrix(((1,),))


def test_cap():
    with pytest.raises(ResourceCapError):
        gram_matrix(9, 2)


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("FREESPEC_CACHE", str(tmp_path))
    wg.clear_memory_cache()
    w = weingarten_matrix(3, 5)
    path = tmp_path / "wg_k3_n5.json"
    data = json.loads(path.read_text())
    assert data["k"] == 3 and data["n"] == 5
    assert data["matrix"][0][0] == str(w[0, 0])
    assert not list(tmp_path.glob("*.tmp"))
    wg.clear_memory_cache()
    assert weingarten_matrix(3, 5) == w


def test_corrupt_cache_is_recomputed(tmp_path, monkeypatch):
    monkeypatch.setenv("FREESPEC_CACHE", str(tmp_path))
    wg.clear_memory_cache()
    (tmp_path / "wg_k2_n6.json").write_text("{not json")
    assert weingarten_matrix(2, 6) @ gram_matrix(2, 6) == RationalMatrix.identity(2)


@pytest.mark.parametrize("factors,expected", [
    ([(1, 1), (1, 1)], F(1, 2)),
    ([(1, 1), (1, 1), (2, 2), (2, 2)], F(1, 3)),
    ([(1, 1)] * 4, F(1, 3)),
    ([(1, 1), (1, 1), (1, 2), (1, 2)], F(1, 6)),
    ([(1, 1), (1, 2), (1, 1), (1, 2)], F(0)),
])
def test_integrate_n2(factors, expected):
    assert integrate_monomial(2, factors) == expected


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("length", [1, 3, 5])
def test_odd_monomials_vanish(n, length):
    assert integrate_monomial(n, [(1, 1)] * length) == 0


def test_integrate_errors():
    with pytest.raises(InputError):
        integrate_monomial(2, [(1, 3), (1, 1)])
    with pytest.raises(ResourceCapError):
        integrate_monomial(2, [(1, 1)] * 18)
    with pytest.raises(InputError):
        MonomialSpec.parse("1,1;2")


def test_monomial_parse():
    assert MonomialSpec.parse("1,1; 2,1").factors == ((1, 1), (2, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_row_norm_sum_rule(n):
    for i in range(1, n + 1):
        assert sum(integrate_monomial(n, [(i, j), (i, j)]) for j in range(1, n + 1)) == 1
    total = sum(integrate_monomial(n, [(1, j), (1, j), (1, l), (1, l)])
                for j in range(1, n + 1) for l in range(1, n + 1))
    assert total == 1


@pytest.mark.parametrize("n", [2, 3])
def test_column_orthogonality(n):
    # sum_j u_1j u_2j = 0 for an orthogonal matrix
    assert sum(integrate_monomial(n, [(1, j), (2, j), (1, l), (2, l)])
               for j in range(1, n + 1) for l in range(1, n + 1)) == 0


def test_truncated_examples():
    assert truncated_character_moment(2, 2, 1) == F(1, 3)
    for n in (2, 3, 7):
        for s in range(1, n + 1):
            assert truncated_character_moment(1, n, s) == F(s, n)
    for k in range(1, 6):
        assert truncated_character_moment(k, 2, 2) == catalan(k)


def test_truncated_errors():
    with pytest.raises(InputError):
        truncated_character_moment(2, 3, 4)
    with pytest.raises(SingularMatrixError):
        truncated_character_moment(2, 1, 1)


def brute_character_moment(k, n, s):
    """Expand (u_11 + ... + u_ss)^(2k) index by index, independently of the
    library expansion helper."""
    total = F(0)
    for idx in product(range(1, s + 1), repeat=2 * k):
        total += integrate_monomial(n, [(i, i) for i in idx])
    return total


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("n", [2, 3])
def test_expansion_consistency(k, s, n):
    if s > n:
        pytest.skip("s > n")
    assert brute_character_moment(k, n, s) == truncated_character_moment(k, n, s)
    assert wg.expanded_character_moment(k, n, s) == truncated_character_moment(k, n, s)


def test_semicircle_report_examples():
    rows = asymptotic_semicircle_report(1, 1, [2, 5, 9])
    assert all(r.value == 1 and r.error == 0 for r in rows)
    (row,) = asymptotic_semicircle_report(2, 1, [2])
    assert row.value == F(4, 3) and row.error == F(2, 3)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_semicircle_report_converges(k):
    rows = asymptotic_semicircle_report(k, 1, [4, 8, 16, 32, 64, 128])
    errors = [r.error for r in rows]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert errors[-1] < F(catalan(k), 10)


def test_semicircle_report_rejects_small_n():
    with pytest.raises(InputError):
        asymptotic_semicircle_report(2, 3, [2])
