"""Quick end-to-end check of the Python bindings.

Build first:  pip install --no-build-isolation -e crates/python
Run:          python python/smoke_test.py
"""

import json

import primult


def main():
    r = primult.Ring(["X", "Y"], 2)
    x, t = r.parse("X"), r.parse("t")
    assert str(x * t) == "X*t"
    assert (t * t).is_zero()
    assert t.is_zero_divisor()
    assert not r.parse("1 + t").is_zero_divisor()

    assert primult.Module.ideal(r, ["X^2", "Y^2", "X*Y"]).is_balanced()
    assert not primult.Module.ideal(r, ["X^2", "Y^2 + t", "X*Y"]).is_balanced()

    free = primult.Module(r, 2, [], t_weight=1)
    assert free.quasi_free_type() == [0, 2]
    cyc = primult.Module.cyclic(r, ["X*t"])
    assert cyc.quasi_free_type() is None
    assert not cyc.is_torsion_free()

    p2 = primult.Ring(["x0", "x1", "x2"], 2)
    s2 = primult.Module(p2, 1, [], t_weight=1)
    assert s2.reduced_hilbert_polynomial() == ["1", "2", "1"]

    r3 = primult.Ring(["x", "y", "z"], 3)
    assert primult.is_regular_sequence(r3, ["x + t", "y"])
    assert not primult.is_regular_sequence(r3, ["x", "x"])

    j = primult.PointIdeal("1", "0")
    assert j.tau() == ("0", "-1")
    assert j == primult.PointIdeal("1 + x", "y")
    assert j != primult.PointIdeal("0", "1")

    out = json.loads(primult.run_job(json.dumps({"command": "ideal.tau", "payload": {"a": "1", "b": "0"}})))
    assert out["result"] == {"tau": [0, -1]}, out
    bad = json.loads(primult.run_job('{"command": "nope"}'))
    assert bad["error"]["code"] == "schema_error"

    print("python smoke test passed")


if __name__ == "__main__":
    main()
