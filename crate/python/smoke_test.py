#!/usr/bin/env python3
"""Smoke test for the morava2_py extension module.

Builds nothing itself: looks for the compiled cdylib under
target/release or target/debug (run `cargo build -p morava2-py`
first), copies it next to a temp directory under the importable name,
and exercises the bindings end to end.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def import_module():
    candidates = [
        ROOT / "target" / "release" / "libmorava2_py.so",
        ROOT / "target" / "debug" / "libmorava2_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p morava2-py")
    tmp = Path(tempfile.mkdtemp(prefix="morava2-py-"))
    shutil.copy2(built, tmp / "morava2_py.so")
    sys.path.insert(0, str(tmp))
    import morava2_py

    return morava2_py


def main():
    m = import_module()

    # Witt arithmetic: w^2 = -1 - w, norms, inversion.
    w = m.Witt.omega(12)
    one = m.Witt(1)
    minus_one_minus_w = -(one + w)
    assert w * w == minus_one_minus_w, "w^2 = -1 - w"
    assert w.norm() == 1 and w.is_unit()
    two = m.Witt(2)
    assert not two.is_unit()
    x = m.Witt(3, 5)
    assert x * x.invert() == one
    assert (x * x.conj()).coordinates == (x.norm(), 0)
    print("ok: Witt ring arithmetic")

    # Quaternion order: S^2 = 2, S w = conj(w) S, det is multiplicative.
    S = m.Quaternion.s(12)
    qw = m.Quaternion.omega(12)
    assert S * S == m.Quaternion(2)
    w_bar_s = m.Quaternion(0, 0, -1, -1)  # conj(w) S = (w^2) S
    assert S * qw == w_bar_s
    a = m.Quaternion(1, 2, 3, 4)
    b = m.Quaternion(-1, 0, 2, 7)
    assert (a * b).det() == a.det() * b.det()
    assert (m.Quaternion(1) + S).det() == m.Witt(-1)
    print("ok: quaternion order")

    # Curve data.
    pts = m.curve_points()
    assert len(pts) == 9 and sum(1 for p in pts if "Infinity" in p) == 1
    assert m.gl2_order() == 48
    mats = m.automorphism_matrices()
    assert mats["negation"] == [[2, 0], [0, 2]]  # -1 mod 3
    assert mats["frobenius"] == [[1, 0], [0, 2]]
    assert "x^4" in m.two_series(8)
    print("ok: curve points, GL2 image, 2-series")

    # Eisenstein series: G2 = -1/24 + q + 3q^2 + 4q^3 + ...
    g2 = m.eisenstein_series(1, 5)
    assert g2 == ["-1/24", "1", "3", "4", "7"], g2
    print("ok: Eisenstein series")

    # Binomial coefficients with carry-loss tracking: Lucas parity.
    coeffs, eff = m.binomial_coefficients(21, 12, 16)
    assert eff >= 8
    for s in range(4):
        assert coeffs[1 << s] % 2 == (21 >> s) % 2, "parity is the bit"
    assert coeffs[0] == 1 and coeffs[1] == 21 and coeffs[2] == math.comb(21, 2)
    print("ok: binomial coefficients")

    # q0 droplets: omega matches the identity, the order-four unit differs.
    d_id = m.q0_droplet("identity")
    assert m.q0_droplet("omega") == d_id
    assert m.q0_droplet("i") != d_id
    print("ok: q0 droplets")

    # Check runner round trip.
    ids = m.check_ids()
    assert len(ids) == 13 and ids == sorted(ids)
    one_report = m.run_check("curve.points")
    assert one_report["status"] == "pass" and one_report["details"] == ""
    assert one_report["params"]["n"] == 12
    reports = m.run_all(n=8, m=5, cap=6, q=3, dx=5, jobs=2)
    assert [r["check_id"] for r in reports] == ids
    bad = [r for r in reports if r["status"] != "pass"]
    assert not bad, bad
    try:
        m.run_check("curve.nonsense")
    except ValueError as e:
        assert "curve.nonsense" in str(e)
    else:
        sys.exit("unknown check id must raise ValueError")
    print("ok: check runner")

    print("smoke test passed")


if __name__ == "__main__":
    main()
