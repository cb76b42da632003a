import pytest

from triflag import certificate as cert_mod


@pytest.fixture(scope="session")
def shipped_cert():
    return cert_mod.load_shipped_certificate()


@pytest.fixture(scope="session")
def shipped_table(shipped_cert):
    return cert_mod.coefficient_table(shipped_cert)


@pytest.fixture(scope="session")
def shipped_report(shipped_cert, shipped_table):
    return cert_mod.verify(shipped_cert, shipped_table)
