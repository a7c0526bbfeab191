import pytest

import kderiv


def test_representable_collapse():
    r = kderiv.k0("s", "vect-iso", bound=2)
    assert r["group"] == "0"
    assert r["level_sizes"][1] == 3


def test_waldhausen_rank():
    r = kderiv.k0("waldhausen", "vect-iso", bound=2, cof="monos")
    assert r["group"] == "Z"
    # image = ±dim with one sign throughout
    ratios = {c["image"][0] / int(c["object"].strip("()")) for c in r["certificate"]}
    assert ratios in ({1.0}, {-1.0})


def test_oracle_agrees_on_chains():
    s = kderiv.k0("s", "chain-qis", bound=2)
    o = kderiv.k0("oracle", "chain-qis", bound=2)
    assert s["group"] == o["group"] == "Z"


def test_check_suite():
    r = kderiv.check("simplicial", "vect-iso", bound=1)
    assert r["pass"]
    assert all(c["status"] in ("pass", "skip") for c in r["checks"])


def test_nerve_sizes():
    n = kderiv.nerve("Ar[2]", 1)
    obj = [(i, j) for i in range(3) for j in range(i, 3)]
    arrows = [(a, b) for a in obj for b in obj if a[0] <= b[0] and a[1] <= b[1]]
    assert [l["size"] for l in n["levels"]] == [len(obj), len(arrows)]


def test_errors():
    with pytest.raises(ValueError):
        kderiv.k0("s", "foo")
    with pytest.raises(ValueError):
        kderiv.k0("s", "vect-iso", q=4)
    old = kderiv.enumeration_cap()
    kderiv.set_enumeration_cap(3)
    try:
        with pytest.raises(kderiv.CapExceeded):
            kderiv.k0("s", "vect-iso", bound=2)
    finally:
        kderiv.set_enumeration_cap(old)
