import itertools

import pytest

from natext.library import bounded_dls, median_subalgebras


def median_suite():
    """Subalgebras of 2² and 2³, one per carrier subset."""
    return [S for k in (2, 3) for S, _ in median_subalgebras(k)]


def dl_suite():
    return list(bounded_dls(6))


def brute_force_maps(n, m):
    return itertools.product(range(m), repeat=n)


@pytest.fixture(scope="session")
def medians():
    return median_suite()


@pytest.fixture(scope="session")
def dls():
    return dl_suite()
