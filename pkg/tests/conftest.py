import pytest

from cwm.groupring import from_support


@pytest.fixture
def cw7():
    # -1 + X + X^2 + X^4, the weight-4 matrix of order 7
    return from_support(7, positives=[1, 2, 4], negatives=[0])


@pytest.fixture
def cw13():
    # proper weight-9 matrix of order 13
    return from_support(13, positives=[1, 4, 5, 6, 7, 10], negatives=[0, 2, 8])


@pytest.fixture
def cw26_proper():
    # proper weight-9 matrix of order 26
    return from_support(26, positives=[1, 2, 3, 6, 9, 18], negatives=[4, 12, 10])


@pytest.fixture
def cw26_multiple():
    # the order-26 multiple of the order-13 matrix
    return from_support(26, positives=[2, 8, 10, 12, 14, 20], negatives=[0, 4, 16])


def orbit_of(a, t, n):
    out = set()
    while a not in out:
        out.add(a)
        a = a * t % n
    return out


@pytest.fixture
def cw63():
    # order 63, weight 16: P = {0} u <27> u <11>, N = <31> under x -> 2x
    pos = {0} | orbit_of(27, 2, 63) | orbit_of(11, 2, 63)
    neg = orbit_of(31, 2, 63)
    return from_support(63, positives=pos, negatives=neg)
