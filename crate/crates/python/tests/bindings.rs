use std::ffi::CString;
use std::sync::Once;

use hypercone_py::hypercone_py;
use pyo3::prelude::*;

static INIT: Once = Once::new();

fn run(code: &str) -> PyResult<()> {
    INIT.call_once(|| {
        pyo3::append_to_inittab!(hypercone_py);
        Python::initialize();
    });
    let code = CString::new(code).expect("no interior nul");
    Python::attach(|py| py.run(&code, None, None))
}

#[test]
fn entropies_come_back_as_fractions() {
    run(r#"
from fractions import Fraction
import hypercone_py as hc
g = hc.Hypergraph(1, [(["A", "O"], "3/2")])
assert g.entropy_vector() == {"A": Fraction(3, 2)}
scale, unit = g.expand_to_unit_weights()
assert scale == 2 and unit.entropy("A")[0] == 3
"#)
    .unwrap();
}

#[test]
fn inequalities_and_maps() {
    run(r#"
import hypercone_py as hc
mmi = hc.Inequality.builtin("MMI")
assert (mmi.l, mmi.r) == (3, 4)
report = hc.verify_map("MMI", kmax=4)
assert [r["status"] for r in report["ranks"]] == ["verified", "verified", "violated"]
assert report["ranks"][2]["witness"]["lhs"] == 3
assert hc.search_map(mmi, k_target=4)["outcome"] == "unsatisfiable"
"#)
    .unwrap();
}

#[test]
fn states_and_rays() {
    run(r#"
import hypercone_py as hc
st = hc.state(hc.ray("GHZ3"))
assert st["norm"] == 2 and [k for k, _ in st["kets"]] == ["0;0;0", "1;1;1"]
assert hc.verify_state(hc.ray("CLR5")) == (31, 31, True)
"#)
    .unwrap();
}

#[test]
fn bad_input_raises_value_error() {
    let err = run(r#"
import hypercone_py as hc
hc.Inequality.parse("S(AZ) >= 0", 2)
"#)
    .unwrap_err();
    Python::attach(|py| assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py)));
}
