import itertools

import numpy as np
import pytest

from tiedtrace.esystem import ESolutionCandidate, e_value, make_solution, residuals, verify


def test_examples():
    assert np.allclose(make_solution(2, "singleton", m=1).x, (-1,))
    assert make_solution(3, "trivial").x == (0, 0)
    assert np.allclose(make_solution(4, "subset", subset={0, 2}).x, (0, 1, 0))
    assert verify(make_solution(5, "singleton", m=2))
    assert verify(make_solution(6, "trivial"))
    assert not verify(ESolutionCandidate(3, (0.5, 0.5)))
    assert abs(e_value(make_solution(4, "subset", subset={0, 2})) - 0.5) < 1e-12


@pytest.mark.parametrize("d", range(1, 9))
def test_singleton_and_trivial(d):
    for m in range(d):
        c = make_solution(d, "singleton", m=m)
        assert np.max(np.abs(residuals(c)), initial=0) < 1e-9
        assert abs(e_value(c) - 1) < 1e-9
    c = make_solution(d, "trivial")
    assert verify(c) and abs(e_value(c) - 1 / d) < 1e-9


@pytest.mark.parametrize("d", range(1, 7))
def test_subset_candidates(d):
    for r in range(1, d + 1):
        for D in itertools.combinations(range(d), r):
            c = make_solution(d, "subset", subset=D)
            assert verify(c) and abs(e_value(c) - 1 / r) < 1e-9


def test_singleton_is_the_one_element_subset():
    for d in range(2, 7):
        for m in range(d):
            a, b = make_solution(d, "singleton", m=m), make_solution(d, "subset", subset={m})
            assert np.allclose(a.x, b.x)


@pytest.mark.parametrize(
    "args",
    [(0, "trivial"), (3, "singleton"), (3, "singleton", 3), (3, "subset"), (3, "other")],
)
def test_invalid_requests(args):
    with pytest.raises(ValueError):
        make_solution(*args)


def test_wrong_length():
    with pytest.raises(ValueError):
        ESolutionCandidate(3, (1,))
