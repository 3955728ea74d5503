"""Smoke test for the compiled `symwald` module.

Run after `maturin develop --release` (or with the built library on
PYTHONPATH as `symwald.so`):

    python crates/py/python/smoke_test.py
"""

import tempfile

import symwald


def main():
    assert len(symwald.config_points("F4")) == 24
    assert symwald.config_points("d4")[0] == "(1:1:0:0)"
    assert symwald.alpha("D4", 1, 3) == 3
    assert symwald.alpha("D4", 2, 3) is None
    assert symwald.alpha("D4", 2, 4) == 4
    assert symwald.f4_ledger() == (True, "(4;1,0,4)")
    assert sum(symwald.hilbert_dimension(72, m) for m in range(73)) == 26

    with tempfile.TemporaryDirectory() as cache:
        p = symwald.Pipeline(cache)
        assert p.certificate("D4") == ("2", True)
        assert p.certificate("F4") == ("8/3", True)
        rows = p.table2(18)
        assert rows[8] == (16, [60, 60, 64, 72, 80], [True, False, False, False, False])
        t1 = {name: (d, m) for name, d, m, _ in p.table1()}
        assert t1["f36"] == (36, 10)
        assert p.warnings() == []

    try:
        symwald.config_points("E8")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown configuration accepted")
    print("symwald smoke test passed")


if __name__ == "__main__":
    main()
