#!/usr/bin/env python3
"""Smoke test for the pbv_py extension module.

Build the module first:

    cargo build -p pbv-py

then run this script with the same Python the build configured against:

    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent

EXAMPLE1 = """
(declare-width a)
(declare-pbv x :bits a)
(declare-pbv z0 :bits a :value 0)
(declare-pbv z1 :bits a :value 1)
(assert (distinct (bvadd (bvadd x x) z1) z0))
"""


def locate_library() -> pathlib.Path:
    names = ["libpbv_py.so", "libpbv_py.dylib", "pbv_py.dll"]
    for profile in ("debug", "release"):
        for name in names:
            candidate = ROOT / "target" / profile / name
            if candidate.exists():
                return candidate
    sys.exit("pbv_py library not found; run `cargo build -p pbv-py` first")


def import_module():
    lib = locate_library()
    staging = pathlib.Path(tempfile.mkdtemp(prefix="pbv_py_"))
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, staging / f"pbv_py{suffix}")
    sys.path.insert(0, str(staging))
    import pbv_py  # noqa: E402

    return pbv_py


def main() -> None:
    pbv_py = import_module()

    problem = pbv_py.Problem.parse(EXAMPLE1)

    smt = problem.translate(mode="qf")
    assert "(set-logic UFNIA)" in smt
    assert "(distinct (mod (+ (+ _ix_x _ix_x) 1) (pow2 a)) 0)" in smt, smt
    print("translate(qf): ok")

    report = json.loads(problem.check(widths=4))
    assert report["mismatch"] is None, report
    assert report["checked_valuations"] == 4
    print("oracle check: ok (%d assignments)" % report["checked_assignments"])

    axioms = json.loads(pbv_py.check_axioms(mode="partial", k_max=4))
    assert axioms["failures"] == [], axioms
    print("axiom validity (partial, k<=4): ok")

    lemmas = json.loads(pbv_py.check_lemmas(k_max=4))
    assert lemmas["failures"] == [], lemmas
    print("lemma suite (k<=4): ok")

    lifted = pbv_py.Problem.lift(
        "(declare-const a (_ BitVec 4))(assert (= (bvadd a #x0) a))"
    )
    assert "(declare-width k)" in lifted.pretty(), lifted.pretty()
    print("lift: ok")

    # The two known width-1 erratum slots; everything else verifies.
    failing = pbv_py.failing_builtin_inverses(width_bound=2)
    assert failing == ["shl_xs_ne", "mul_ne"], failing
    print("inverse ground truth: ok (known width-1 erratum slots only)")

    print("smoke test passed")


if __name__ == "__main__":
    main()
