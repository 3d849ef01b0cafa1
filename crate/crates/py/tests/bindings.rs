use pyo3::prelude::*;
use pyo3::types::PyDict;

use pychevalley::pychevalley;

fn run(code: &str) {
    pyo3::append_to_inittab!(pychevalley);
    Python::initialize();
    Python::attach(|py| {
        let globals = PyDict::new(py);
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None)
            .map_err(|e| e.display(py))
            .unwrap();
    });
}

#[test]
fn module_round_trip() {
    run(r#"
import pychevalley as pc
q = pc.NumberFieldProfile.rationals()
e7 = pc.CartanType.parse("E7")
r = pc.classify(e7, q)
assert r["outcome"] == "NotSolitary", r
assert "E7(-25)" in r["witness"]
assert pc.ker_g_count(e7, pc.NumberFieldProfile(3, 0)) == 8
v = pc.solitude_verdict(pc.CartanType("A", 1), pc.NumberFieldProfile(4, 0), policy_a1="true")
assert v["outcome"]["kind"] == "NotSolitary"
try:
    pc.CartanType("B", 2)
except ValueError as e:
    assert "C_2" in str(e)
else:
    raise AssertionError
"#);
}
