import math

import pytest

import smoothcond as sc


def test_tail_bound_example():
    assert sc.tail_bound(3, 1, 1.0, 10.0) == pytest.approx(3.5073982236861543, rel=1e-12)


def test_expectation_examples():
    assert sc.application_bound("matrix-inversion", n=2) == pytest.approx(6 * math.log(2) + 5.5, rel=1e-13)
    assert sc.expectation_bound(3, 2, 0.5) == pytest.approx(10.469813299576, rel=1e-12)


def test_linear_bound_threshold():
    assert sc.linear_tail_bound(2, 1, 1.0, 0.01) == pytest.approx(0.5149250925534472, rel=1e-12)
    assert sc.linear_tail_bound(2, 1, 1.0, 0.9) is None


def test_errors_become_value_errors():
    with pytest.raises(ValueError):
        sc.tail_bound(3, 1, 1.0, 0.5)
    with pytest.raises(ValueError):
        sc.application_bound("no-such-problem")


def test_j_integral_matches_quadrature():
    for p in (2, 5, 11):
        for k in range(1, p + 1):
            assert sc.j_integral(p, k, 0.7) == pytest.approx(sc.j_integral_quadrature(p, k, 0.7), abs=1e-10)


def test_condition_numbers():
    assert sc.frobenius_condition([[1.0, 0.0], [0.0, 1.0]]) == pytest.approx(math.sqrt(2.0))
    assert sc.eigenvalue_condition([[1.0, 0.0], [0.0, 2.0]], 1.0) == pytest.approx(1.0)
    assert sc.real_eigen_condition_lower([[1.0, 0.0], [0.0, 2.0]]) > 1.0


def test_subsphere_ratio_contains_closed_form():
    est, lo, hi = sc.subsphere_tube_ratio(3, 2, 1.0, 0.3, samples=50000, seed=3)
    assert lo <= sc.subsphere_hemisphere_ratio(3, 2, 0.3) <= hi
    assert lo <= est <= hi


def test_tail_csv_is_worker_invariant():
    one = sc.estimate_tail("matrix-inversion", n=2, samples=4000, seed=5, workers=1)
    four = sc.estimate_tail("matrix-inversion", n=2, samples=4000, seed=5, workers=4)
    assert one == four
    assert one.splitlines()[0] == "t,empirical,ci_low,ci_high,bound,dominated"


def test_verify_reports_pass():
    assert sc.verify_jintegrals(8)["pass"]
    assert sc.verify_weyltube()["pass"]
    assert sc.verify_eckart_young(50)["pass"]
