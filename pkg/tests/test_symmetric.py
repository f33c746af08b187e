import pytest

from wbinom.coeffs import a
from wbinom.symmetric import (SymIdentity, admissible, avars, bridge_check, complete_h,
                              complete_h_bruteforce, elementary_e, elementary_e_bruteforce,
                              sym_binom_check, sym_identity_check, sym_identity_sides)


def test_h_examples():
    assert complete_h(0, avars(0, 3)) == 1
    assert complete_h(2, avars(0, 1)) == a(0) ** 2 + a(0) * a(1) + a(1) ** 2
    assert complete_h(3, []) == 0


def test_e_examples():
    assert elementary_e(0, avars(1, 3)) == 1
    assert elementary_e(2, avars(1, 3)) == a(1) * a(2) + a(1) * a(3) + a(2) * a(3)
    assert elementary_e(4, avars(1, 3)) == 0


def test_recursions_match_brute_force():
    for k in range(6):
        for m in range(5):
            xs = avars(0, m)
            assert complete_h(k, xs) == complete_h_bruteforce(k, xs)
            assert elementary_e(k, xs) == elementary_e_bruteforce(k, xs)


def test_numeric_values():
    assert complete_h(2, [1, 2, 3]) == 25
    assert elementary_e(2, [1, 2, 3]) == 11


def test_negative_degree():
    with pytest.raises(ValueError):
        complete_h(-1, avars(0, 2))


@pytest.mark.parametrize("family", ["h", "e"])
def test_binomial_theorems(family):
    for n in range(7):
        assert sym_binom_check(family, n) == 0


@pytest.mark.parametrize("family", ["h", "e"])
def test_bridges(family):
    for n in range(9):
        for k in range(n + 1):
            assert bridge_check(family, n, k) == 0


def test_identity_examples():
    assert sym_identity_check(SymIdentity.SchurH, 3, 2, 2) == 0
    assert sym_identity_check(SymIdentity.H1, 2, 2, 2) == 0
    assert sym_identity_check(SymIdentity.E2, 3, 3, 2) == 0


def test_sides_are_nontrivial():
    lhs, rhs = sym_identity_sides("h2", 3, 2, 2)
    assert lhs == complete_h(3, avars(0, 2))
    assert lhs == rhs
    assert len(lhs) == 10


@pytest.mark.parametrize("which", list(SymIdentity))
def test_all_identities(which):
    for n in range(6):
        for m in range(6):
            for kl in admissible(which, n, m):
                assert sym_identity_check(which, n, m, kl) == 0


def test_index_constraints():
    with pytest.raises(ValueError):
        sym_identity_check("e1", 2, 2, 0)
    with pytest.raises(ValueError):
        sym_identity_check("schur-h", 2, 2, 3)


def test_mismatched_sides_differ():
    # the residual is not identically zero by construction
    _, rhs_small = sym_identity_sides("schur-h", 2, 2, 1)
    lhs_big, _ = sym_identity_sides("schur-h", 2, 3, 1)
    assert lhs_big - rhs_small != 0
