import pytest

from looptrans.groupoid import build_graded_group

SUITE_SPECS = {
    "z2xz2_proj": {"family": "product_Z2", "base": {"family": "cyclic", "n": 2}},
    "z4_mod2": {"family": "cyclic", "n": 4, "grading": "mod2"},
    "z3xz2": {"family": "product_Z2", "base": {"family": "cyclic", "n": 3}},
    "s3xz2": {"family": "product_Z2", "base": {"family": "symmetric", "n": 3}},
    "d4_ref": {"family": "dihedral", "n": 4, "grading": "sign"},
}


@pytest.fixture(scope="session")
def suite_groups():
    return {name: build_graded_group(spec) for name, spec in SUITE_SPECS.items()}
