import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def hconst_rules():
    from shiftlab.sft import load_rules
    return load_rules(DATA / "hconst.rules")


@pytest.fixture(scope="session")
def full_shift_rules():
    from shiftlab.sft import load_rules
    return load_rules(DATA / "full_shift.rules")


@pytest.fixture(scope="session")
def one_symbol_rules():
    from shiftlab.sft import load_rules
    return load_rules(DATA / "one_symbol.rules")


@pytest.fixture(scope="session")
def mismatched_wang_rules():
    from shiftlab.sft import load_rules
    return load_rules(DATA / "mismatched_pair.wang")
