import pytest
from hypothesis import settings

from actionuncertainty.fields import Rationals, field_from_spec
from actionuncertainty.gset import natural_gset, regular_gset
from actionuncertainty.io import DATA_DIR, builtin_group, load_function
from actionuncertainty.permmodule import FunctionOnX

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def s3():
    return builtin_group("S3")


@pytest.fixture(scope="session")
def s3_natural(s3):
    return natural_gset(s3)


@pytest.fixture(scope="session")
def worked_f():
    """f = (1, -1, 0) on the natural S3 set over Q."""
    return load_function(DATA_DIR / "functions" / "worked_s3.json")


@pytest.fixture(scope="session")
def q():
    return Rationals()


@pytest.fixture(scope="session")
def gf7():
    return field_from_spec("GF(7)")


def regular_function(name, spec, values):
    g = builtin_group(name)
    return FunctionOnX.from_values(regular_gset(g), field_from_spec(spec), values)
