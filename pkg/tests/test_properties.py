"""Randomized law checks over catalog semigroups (1000 examples each)."""

from hypothesis import HealthCheck, given, settings, strategies as st

import properties as P

N = len(P.catalog())
CASES = settings(max_examples=1000, deadline=None, derandomize=True,
                 suppress_health_check=[HealthCheck.too_slow])
idx = st.integers(0, N - 1)


@CASES
@given(idx, idx)
def test_product_action_classes(i, j):
    cat = P.catalog()
    P.check_product_classes(cat[i], cat[j])


@CASES
@given(idx, idx)
def test_cancellativity_of_products(i, j):
    cat = P.catalog()
    P.check_cancellativity_product(cat[i], cat[j])


@CASES
@given(idx, idx, st.integers(0, 2**32 - 1))
def test_skeleton_tie_break(i, j, seed):
    cat = P.catalog()
    P.check_skeleton_invariance(cat[i], cat[j], seed)


@CASES
@given(idx, st.integers(0, 3), st.integers(0, 3), st.integers(0, 5))
def test_extend_ideal_hom(i, k, a, auto):
    P.check_extend_ideal_hom(P.catalog()[i], k, a, auto)


def _upto(n):
    return [s for s in P.catalog() if s.order <= n]


@CASES
@given(st.integers(0, len(_upto(3)) - 1), st.integers(0, len(_upto(2)) - 1),
       st.integers(0, 3), st.integers(0, 5))
def test_split_product_hom(i, j, k, auto):
    P.check_split_product_hom(_upto(3)[i], _upto(2)[j], k, auto)


@CASES
@given(i=st.integers(0, 10**6), j=st.integers(0, 10**6), kappa=st.integers(1, 3))
def test_null_factor_agrees_with_search(i, j, kappa):
    P.check_null_factor_cross(P.semigroup_up_to_8(i, j), kappa, P.anti_catalog())
