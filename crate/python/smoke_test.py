"""Smoke test for the gammares_py extension module."""

import json

import gammares_py as g


def main():
    t = g.taylor(["x", "y"], ["x^2", "x*y", "y^3"])
    assert t.ranks() == [1, 3, 3, 1], t.ranks()
    assert t.complex.check_d_squared().passed
    assert t.complex.verify_resolution().passed
    assert all(c.passed for c in t.check_all(samples=20))

    s = t.scarf()
    assert s.ranks() == [1, 3, 2]
    assert t.check_scarf().passed

    v = ["x", "y", "z", "w"]
    f1 = g.taylor(v, ["x*y", "y*z"])
    f2 = g.taylor(v, ["z*w", "w*x"])
    good = g.star([f1, f2])
    bad = g.star([f1, f2], sign_mode="unsigned")
    assert good.check_dg("graded_comm").passed
    failing = bad.check_dg("graded_comm")
    assert not failing.passed and failing.violations
    assert g.check_slot_independence([f1, f2], good).passed

    phi = g.comparison_map(g.tensor([f1, f2]), good)
    for prop in ["chain", "multiplicative", "loc_invertible", "gamma"]:
        assert phi.check(prop, samples=20).passed, prop
    assert g.inclusion_map(f1, good, 0).check("multiplicative").passed

    ks = [g.koszul(["x", "y"], u) for u in ["x^2", "x*y", "y^3"]]
    iso = g.taylor_iso(t, g.star(ks))
    assert iso.check("iso").passed and iso.inverse_is_identity()

    text = good.to_json()
    back = g.from_json(text)
    assert back.to_json() == text
    assert json.loads(text)["construction"]["kind"] == "star"

    assert g.sqf_decompose(["x", "y", "z"], "x^3*y") == ("x^2", "x*y")
    try:
        g.taylor(["x"], ["y"])
    except ValueError:
        pass
    else:
        raise AssertionError("unknown variable accepted")
    print("smoke test passed:", t, good)


if __name__ == "__main__":
    main()
