"""Smoke test for the pybivincular extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import json

import pybivincular as bv


def main():
    p = bv.Pattern("12|X=1|Y=1")
    assert str(p) == "12|X=1|Y=1"
    assert p.sigma == [1, 2] and p.x == [1] and p.y == [1]
    assert bv.avoidance_sequence([p], 7) == [1, 1, 3, 11, 53, 309, 2119]
    assert bv.avoidance_sequence(["132|X=|Y="], 6) == [1, 2, 5, 14, 42, 132]

    pi = bv.Permutation([3, 1, 4, 2])
    assert pi.inverse().entries == [2, 4, 1, 3]
    assert bv.Pattern("12|X=|Y=").count(pi) == 3
    assert len(p.symmetry_class()) >= 1

    try:
        bv.Pattern("132|X=9|Y=")
    except ValueError:
        pass
    else:
        raise AssertionError("bad pattern accepted")

    assert bv.burnside_s(6) == 1478528
    assert bv.burnside_direct(3) == 212
    assert bv.eval_closed_form("C01", 7) == 429
    assert bv.eval_closed_form("C22", 5) is None
    assert bv.verify_registry(6) == []

    table = json.loads(bv.wilf_classify(2, 7))
    assert len(table["rows"]) == 7

    xs = bv.ascent_sequences(5)
    assert len(xs) == 53
    for x in xs:
        assert bv.map_f_inverse(bv.map_f(x)) == x
        assert bv.map_g(bv.map_g_inverse(x)) == x
    print("pybivincular", bv.__version__, "ok")


if __name__ == "__main__":
    main()
