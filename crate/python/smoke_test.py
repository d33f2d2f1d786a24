"""Smoke test for the Python extension.

Build and install first:
    pip install --no-build-isolation ./crates/py
"""

import json
import sys
from fractions import Fraction

import glhwv


def check(name, cond):
    print(("PASS " if cond else "FAIL ") + name)
    return cond


def main():
    ok = True

    s = glhwv.invariants(3)
    ok &= check("three invariants of degrees 1..3", [f.degree for f in s] == [1, 2, 3])
    ok &= check("trace text", str(s[0]) == str(glhwv.Polynomial(3, "x[1][1] + x[2][2] + x[3][3]")))
    ok &= check("trace evaluation", s[0].evaluate([[1, 2, 3], [4, Fraction(1, 2), 6], ["7", 8, "-3/2"]]) == 0)

    u = glhwv.hwv_build(4, 2, [2, 3], "u")
    v = glhwv.hwv_build(4, 2, [2, 3], "v")
    ok &= check("u is semi-invariant", u.verify([2, 0, -1, -1])["holds"])
    ok &= check("phi(u) = ±v", u.phi() == v or u.phi() == -v)
    ok &= check("degree of u", u.degree == 3)
    ok &= check("hash is stable", u.content_hash() == glhwv.Polynomial(4, str(u)).content_hash())

    delta = glhwv.delta(5, 2, randomized=True, seed=7)
    ok &= check("delta certificate", delta["verdict"] == "pass")

    basis = glhwv.basis_check(4, 2, "v")
    ok &= check("basis n=4 t=2", basis["verdict"] == "pass")

    jac = glhwv.jacobian(4, 1)
    ok &= check("jacobian unit", jac["verdict"] == "pass")

    ok &= check("gl3 suite", glhwv.gl3(cap=4)["verdict"] == "pass")

    scan = glhwv.scan(4, 2, 2)
    # s = C(3, 2) = 3 basic vectors, so the total is C(r + s - 1, r) = 6
    ok &= check("scan total", scan["results"]["total"] == scan["results"]["target"] == 6)

    q = glhwv.question(4, [1, 1, -1, -1])
    ok &= check("question generates", q["results"]["verdict"] == "generates")

    cfg = {"command": {"name": "basis", "n": 3, "t": 1, "family": "u"}, "characteristic": 5, "max_degree": None, "seed": 0}
    ok &= check("json config in characteristic 5", glhwv.run(json.dumps(cfg))["verdict"] == "pass")

    try:
        glhwv.hwv_build(3, 3, [1], "u")
        ok &= check("bad t rejected", False)
    except ValueError:
        ok &= check("bad t rejected", True)

    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
