"""Smoke test for the recollement_py extension.

Build with `cargo build --release -p recollement-py`, then either install via
maturin or copy target/release/librecollement_py.so next to this file as
recollement_py.so and run `python3 smoke_test.py`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import recollement_py as rp


def main():
    assert "T2_F2" in rp.Algebra.builtins()
    a = rp.Algebra.load("T2_F2")
    assert (a.dim, a.p) == (3, 2)
    e = a.element("e11")
    assert a.is_idempotent(e)
    assert a.mul(e, e) == e
    assert a.radical_dim() == 1
    assert len(a.idempotents()) == 6

    rad = a.radical()
    assert not rad.is_idempotent()
    assert rad.tor_dims() == (1, 1)
    ideals = a.idempotent_ideals()
    assert len(ideals) == 4
    for i in ideals:
        assert i.tor_dims()[1] == 0
        assert i.generating_idempotent() is not None
        assert all(ok for _, ok, _ in i.verify_radical_functor(2))

    assert rp.jans_check(a, 2) == (4, 4, True)

    r = rp.Recollement(a, e)
    assert r.corner_algebra().dim == 1
    assert r.quotient_algebra().dim == 1
    checks = r.verify(2)
    assert checks and all(ok for _, ok, _ in checks), [c for c in checks if not c[1]]

    # j_! of the corner's regular module is the projective eA.
    p = r.apply("j_shriek", r.corner_algebra().regular_module())
    assert p.dim == 2
    assert r.apply("j_star", p).dim == 1

    n, corner_dim, kchecks = rp.kuhn_demo(a.ideal_of_idempotent(e), 2)
    assert (n, corner_dim) == (1, 1)
    assert all(ok for _, ok, _ in kchecks)

    try:
        rp.kuhn_demo(rad, 2)
    except ValueError as err:
        assert "not idempotent" in str(err)
    else:
        raise AssertionError("radical of T2 accepted")

    report = json.loads(rp.run_cli(["ideals", "--algebra", "T2_F2", "--seed", "1"]))
    assert report["summary"]["failed"] == 0

    print("smoke test passed: %d recollement checks, %d modules up to dim 2"
          % (len(checks), len(a.modules(2))))


if __name__ == "__main__":
    main()
