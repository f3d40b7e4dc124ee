use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn with_module(code: &str) {
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let globals = PyDict::new_bound(py);
        globals.set_item("nb", wrap_pymodule!(normbase_py::normbase_module)(py)).unwrap();
        py.run_bound(code, Some(&globals), None).map_err(|e| e.print(py)).unwrap();
    });
}

#[test]
fn counts_and_predicates() {
    with_module(
        r#"
assert nb.inequality_sides(7, 2) == (49, 63)
assert nb.inequality_sides(3, "2^2") == (27, 45)
assert nb.equality_predicate(4, 2)
lhs, rhs = nb.inequality_sides(24, 16)
assert rhs > 2**64
assert nb.total_irr_count(4, 2) == 3
"#,
    );
}

#[test]
fn fields_and_oracles() {
    with_module(
        r#"
ext = nb.ExtField(2, n=4)
assert ext.count_normal_elements() == 8
assert ext.frobenius([0, 1, 0, 0]) == [0, 0, 1, 0]
assert ext.field_trace([1, 0, 0, 0]) == 0
assert nb.is_n_polynomial([1, 0, 1, 1], 2)
assert nb.npoly_verdict([1, 0, 0, 0, 1, 1, 1, 1], 2) == "rank-deficient:4"
for bad in ([1, 2], [0, 1, 5]):
    try:
        nb.is_irreducible(bad, 2)
    except ValueError:
        pass
    else:
        raise AssertionError(bad)
"#,
    );
}
