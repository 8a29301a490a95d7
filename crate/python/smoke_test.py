"""Smoke test for the Python bindings.

Build first:
    cargo build --release -p hypercone-py --features extension-module
then run with the built library on the path:
    python3 python/smoke_test.py target/release
"""

import os
import shutil
import sys
import tempfile
from fractions import Fraction


def load(build_dir):
    tmp = tempfile.mkdtemp()
    shutil.copy(os.path.join(build_dir, "libhypercone_py.so"), os.path.join(tmp, "hypercone_py.so"))
    sys.path.insert(0, tmp)
    import hypercone_py

    return hypercone_py


def main():
    hc = load(sys.argv[1] if len(sys.argv) > 1 else "target/release")

    g = hc.Hypergraph(3, [(["A", "B", "C", "O"], 1)])
    s = g.entropy_vector()
    assert all(v == 1 for v in s.values()), s

    bell = hc.Hypergraph(1, [(["A", "O"], "3/2")])
    value, _ = bell.entropy("A")
    assert value == Fraction(3, 2), value
    scale, unit = bell.expand_to_unit_weights()
    assert scale == 2, scale
    assert unit.entropy("A")[0] == 3
    assert hc.Hypergraph.from_json(g.to_json()).entropy_vector() == s

    mmi = hc.Inequality.builtin("MMI")
    assert mmi.evaluate(g) == -1
    assert str(hc.Inequality.parse("S(A) + S(B) >= S(AB)", 2)) != ""

    assert hc.verify_map("Ingleton", kmax=5)["fully_proved"]

    found = hc.search_map(hc.Inequality.parse("S(AB) + S(BC) >= S(B) + S(ABC)", 3))
    assert found["outcome"] == "found", found

    st = hc.state(hc.ray("CLR5"))
    assert len(st["kets"]) == 8, st
    matched, total, flat = hc.verify_state(hc.ray("R8"))
    assert matched == total == 31 and flat

    assert "Q1" in hc.library_names() and "R12" in hc.ray_names()

    try:
        hc.Inequality.parse("S(AZ) >= 0", 2)
    except ValueError:
        pass
    else:
        raise AssertionError("bad expression accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
