"""Smoke test for the normbase Python module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/normbase-*.whl
"""

import normbase as nb


def main():
    assert nb.inequality_sides(7, 2) == (49, 63)
    assert nb.inequality_sides(4, "2^2") == nb.inequality_sides(4, 4)
    assert nb.equality_predicate(3, 2) and not nb.equality_predicate(7, 2)
    assert nb.v_count(7, 2) == 49 and nb.normal_basis_count(4, 2) == 2
    assert nb.irr_count_trace(7, 2) == 9 and nb.nonzero_trace_irr_count(4, 3) == 12
    lhs, rhs = nb.inequality_sides(24, 16)
    assert rhs > 2**64 and lhs <= rhs

    k = nb.FieldSpec("2^2")
    assert (k.p, k.k, k.q) == (2, 2, 4)
    assert all(k.mul(a, k.inv(a)) == 1 for a in range(1, 4))

    ext = nb.ExtField(2, modulus=[1, 0, 1, 1])
    root = [0, 1, 0]
    assert ext.is_normal(root) and ext.degree_of(root) == 3
    assert not ext.is_normal([1, 0, 0])
    assert ext.count_normal_elements() == 3

    assert nb.npoly_verdict([1, 0, 1, 1], 2) == "npoly"
    assert nb.npoly_verdict([1, 1, 0, 1], 2) == "zero-trace"
    assert nb.npoly_verdict([1, 0, 0, 1], 2) == "reducible"
    assert nb.count_npolys_and_traces(7, 2) == (7, 9, True)
    assert nb.find_witness(7, 2) == [1, 0, 0, 0, 1, 1, 1, 1]
    assert nb.find_witness(3, 2) is None

    blocks = nb.factor_xn_minus_1(7, 2)
    assert [(d, tau, len(fs)) for d, tau, fs in blocks] == [(1, 1, 1), (7, 3, 2)]

    rows = nb.verify([2, 3], range(1, 7), oracle=True)
    assert len(rows) == 12 and all(r["violation"] is None for r in rows)
    assert rows[5]["lhs"] == 24 and rows[5]["oracle_v"] == 24

    try:
        nb.v_count(3, 6)
    except ValueError:
        pass
    else:
        raise AssertionError("6 accepted as a prime power")
    try:
        nb.ExtField(2, 30).count_normal_elements()
    except MemoryError:
        pass
    else:
        raise AssertionError("budget not enforced")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
