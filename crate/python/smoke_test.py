"""Smoke test for the glblab Python extension.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json
from fractions import Fraction
from pathlib import Path

import glblab_py as g

SPECS = Path(__file__).resolve().parent.parent / "specs"


def test_kostka_foulkes():
    assert Fraction(g.kostka_foulkes("2,1", "1,1,1", "1/2")) == Fraction(3, 4)
    assert g.kostka_foulkes("3", "3") == "1"


def test_characters():
    assert g.chi_unipotent("1,1,1", "1,1,1", "2") == "8"
    assert g.psi_unipotent("1,1", "2", "2") == "1"
    assert g.count_fixed_flags("11;01", "1,1", 2) == "1"


def test_cylinders():
    haar = (SPECS / "haar.spec").read_text()
    assert g.cylinder(haar, "2,1", "2") == "1/8"
    mixed = (SPECS / "mixed.spec").read_text()
    for rho in ["1", "2", "1,1", "2,1", "3,1,1"]:
        assert g.cylinder(mixed, rho, "2") == g.cylinder_via_r(mixed, rho, "2")


def test_sampler():
    p = g.haar_path(2, 50, 42)
    assert p == g.haar_path(2, 50, 42)
    assert len(p) == 50 and p[0] == 0
    rep = json.loads(g.lln_haar(2, 40, 10, 1))
    assert rep["trials"] == 10


def test_errors():
    try:
        g.chi_unipotent("2,1", "2", "2")
    except ValueError as e:
        assert "size mismatch" in str(e)
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
