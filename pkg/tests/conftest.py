import pytest

from ruinbounds.reference import LOGNORMAL_HEAVY, MATCHED_TRIO, PARETO_HEAVY


@pytest.fixture(scope="session")
def matched_trio():
    """Lognormal/Pareto/gamma specs sharing the first two reciprocal moments."""
    return dict(MATCHED_TRIO)


@pytest.fixture(scope="session")
def heavy_pair():
    """Pareto(0.1, 0.9) and its exact lognormal two-moment match."""
    return {"pareto": PARETO_HEAVY, "lognormal": LOGNORMAL_HEAVY}
