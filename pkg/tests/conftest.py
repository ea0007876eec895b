import pytest

from verify19.data import data_path
from verify19.numfield.field import load_field

FIELD_NAMES = ("Q", "Q_i", "Q_sqrt_m19", "Q_i_sqrt_m19", "F")


@pytest.fixture(scope="session")
def fields():
    return {name: load_field(data_path("fields", f"{name}.json")) for name in FIELD_NAMES}


@pytest.fixture(scope="session")
def quartic(fields):
    return fields["Q_i_sqrt_m19"]


@pytest.fixture(scope="session")
def sextic(fields):
    return fields["F"]
