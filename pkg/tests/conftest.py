import pytest

from app.algebra.curve import make_curve
from app.algebra.gf import make_field


@pytest.fixture(scope="session")
def f3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def f81():
    return make_field(3, 4)


@pytest.fixture(scope="session")
def f25():
    return make_field(5, 2)


@pytest.fixture(scope="session")
def elliptic():
    """y^3 + y = x^2 over F_9: genus 1, 16 rational places."""
    return make_curve(3, 2)


@pytest.fixture(scope="session")
def hermitian():
    """y^3 + y = x^4 over F_9: genus 3, 28 rational places."""
    return make_curve(3, 4)


@pytest.fixture(scope="session")
def hyperelliptic():
    """y^5 + y = x^2 over F_25: genus 2, 46 rational places."""
    return make_curve(5, 2)
