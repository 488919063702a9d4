#!/usr/bin/env python3
"""Smoke test for the locmaass_py extension module.

Builds the cdylib with cargo, loads it, and spot-checks a handful of values
against closed forms. Run from anywhere:

    python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "-p", "locmaass-py", "--release"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "liblocmaass_py.so"
    if not lib.exists():  # e.g. macOS
        lib = ROOT / "target" / "release" / "liblocmaass_py.dylib"
    stage = Path(tempfile.mkdtemp(prefix="locmaass-py-"))
    shutil.copy(lib, stage / "locmaass_py.so")
    sys.path.insert(0, str(stage))
    import locmaass_py

    return locmaass_py


def approx(a, b, rel=1e-9, abs_tol=0.0):
    scale = max(abs(a), abs(b), abs_tol / max(rel, 1e-300))
    assert abs(a - b) <= rel * scale + abs_tol, f"{a} != {b}"


def main():
    lm = build_and_import()

    # Kronecker symbol
    assert lm.kronecker(5, 11) == 1
    assert lm.kronecker(8, 3) == -1
    assert lm.kronecker(5, 5) == 0

    # psi(1) = pi/4 at k = 2; 2F1 log closed form
    approx(lm.psi_kernel(2, 1.0), math.pi / 4)
    approx(lm.hyp2f1(1, 1, 2, 0.5).real, -math.log(0.5) / 0.5, rel=1e-11)

    # Whittaker collapse: mathcal_m(kappa, kappa/2, t) = e^{-t/2}
    approx(lm.mathcal_m(2.5, 1.25, 3.0).real, math.exp(-1.5), rel=1e-13)

    # Forms and points
    q = lm.QForm(1, 1, -1)
    assert q.disc() == 5
    apex = lm.UHPoint(-0.5, math.sqrt(5) / 2)
    qpoly, qz = q.values(apex)
    approx(qpoly.real, -2.5, rel=1e-12)
    assert abs(qz) < 1e-12
    arc = lm.geodesic_of_form(q)
    assert arc["kind"] == "semicircle"
    approx(arc["center"], -0.5)
    approx(arc["radius"], math.sqrt(5) / 2)

    # dim S_4 = 0: the weight-4 lattice sum vanishes below its tail estimate.
    res = lm.eval_f_classical(2, 5, lm.UHPoint(0.0, 1.0), qz2_max=8000.0)
    assert abs(res.value) <= res.tail, (res.value, res.tail)

    # Jump at the apex of the D=5 geodesic: -10 phi*_s(1) = -10 (20 pi)^{-1/4}/12.
    jump = lm.predicted_jump(2, 1.25, 5, apex)
    approx(jump.real, -10.0 * (20 * math.pi) ** -0.25 / 12.0, rel=1e-10)
    assert abs(jump.imag) < 1e-12
    assert len(lm.vanishing_forms(5, apex)) == 2

    # tau coefficients of Delta and the eta product.
    assert lm.delta_coefficients(3) == [1, -24, 252]
    z = lm.UHPoint(0.13, 1.4)
    d1 = lm.delta_eta(z)
    # Hecke eigenvalue check through the bindings: T_3 Delta = 252 Delta.
    t3 = lm.hecke_tp(lambda x, y: lm.delta_eta(lm.UHPoint(x, y)), 12, 3, z)
    approx((t3 / d1).real, 252.0, rel=1e-9)

    # Theta kernel at (i, i) is real.
    th = lm.eval_theta(2, lm.UHPoint(0.0, 1.0), lm.UHPoint(0.0, 1.0))
    assert abs(th.imag) < 1e-12 and th.real != 0.0

    # One verification suite end to end.
    rows = lm.verify_suite("specfun")
    assert rows and all(passed for (_, _, _, passed) in rows), rows

    print("smoke test passed:", len(rows), "specfun checks green")


if __name__ == "__main__":
    main()
