"""Cross-checks between the compiled kernel and the pure-Python twin.

Everything here is exact arithmetic, so the two lanes must agree bit for bit.
The compiled-lane tests are skipped when the extension was not built.
"""

import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

from cdgalab import _kernel_py
from cdgalab.field import FieldElement, make_field

try:
    from cdgalab import _kernel
except ImportError:
    _kernel = None

needs_ext = pytest.mark.skipif(_kernel is None, reason="compiled kernel not built")

ROOT = Path(__file__).resolve().parent.parent


def rand_cv(rng, phi):
    return _kernel_py.cv_normalize(
        [rng.randint(-30, 30) for _ in range(phi)], rng.randint(1, 12))


@needs_ext
def test_cv_operations_agree():
    field = make_field(12)
    rng = random.Random(91)
    for _ in range(3000):
        a = rand_cv(rng, field.phi)
        b = rand_cv(rng, field.phi)
        assert _kernel.cv_add(a, b) == _kernel_py.cv_add(a, b)
        assert _kernel.cv_sub(a, b) == _kernel_py.cv_sub(a, b)
        assert _kernel.cv_neg(a) == _kernel_py.cv_neg(a)
        assert _kernel.cv_mul(a, b, field.red) == _kernel_py.cv_mul(a, b, field.red)
        assert _kernel.cv_is_zero(a) == _kernel_py.cv_is_zero(a)


@needs_ext
def test_rref_agrees_on_random_matrices():
    field = make_field(12)
    rng = random.Random(92)

    def inv(cv):
        return FieldElement(field, cv).inverse().cv

    for _ in range(40):
        nrows = rng.randint(1, 8)
        ncols = rng.randint(1, 8)
        rows = []
        for _ in range(nrows):
            row = []
            for _ in range(ncols):
                cv = rand_cv(rng, field.phi) if rng.random() < 0.6 \
                    else (0,) * field.phi + (1,)
                row.extend(cv)
            rows.append(row)
        rows_a = [list(r) for r in rows]
        rows_b = [list(r) for r in rows]
        out_a = _kernel_py.rref(rows_a, ncols, ncols, field.phi, field.red, inv)
        out_b = _kernel.rref(rows_b, ncols, ncols, field.phi, field.red, inv)
        assert out_a == out_b
        assert rows_a == rows_b


@needs_ext
def test_reduce_against_agrees():
    field = make_field(12)
    rng = random.Random(93)

    def inv(cv):
        return FieldElement(field, cv).inverse().cv

    for _ in range(30):
        ncols = rng.randint(2, 6)
        rows = []
        for _ in range(rng.randint(1, 4)):
            row = []
            for _ in range(ncols):
                row.extend(rand_cv(rng, field.phi))
            rows.append(row)
        _kernel_py.rref(rows, ncols, ncols, field.phi, field.red, inv)
        rank, pivots = _kernel_py.rref(rows, ncols, ncols, field.phi, field.red, inv)
        rrows = rows[:rank]
        target = []
        for _ in range(ncols):
            target.extend(rand_cv(rng, field.phi))
        t_a, t_b = list(target), list(target)
        c_a = _kernel_py.reduce_against(t_a, rrows, pivots, ncols, field.phi, field.red)
        c_b = _kernel.reduce_against(t_b, rrows, pivots, ncols, field.phi, field.red)
        assert c_a == c_b and t_a == t_b


def test_backend_selection_env_var():
    code = "import cdgalab; print(cdgalab.backend_name())"
    env = dict(os.environ)
    env["CDGALAB_PURE"] = "1"
    r = subprocess.run([sys.executable, "-c", code], env=env,
                       capture_output=True, text=True, check=True)
    assert r.stdout.strip() == "python"


@needs_ext
def test_compiled_backend_is_default():
    code = "import cdgalab; print(cdgalab.backend_name())"
    env = dict(os.environ)
    env.pop("CDGALAB_PURE", None)
    r = subprocess.run([sys.executable, "-c", code], env=env,
                       capture_output=True, text=True, check=True)
    assert r.stdout.strip() == "cython"


def test_machine_report_identical_across_backends(tmp_path):
    session = str(ROOT / "paper.cdga")
    out_pure = tmp_path / "pure.report"
    out_default = tmp_path / "default.report"
    env_pure = dict(os.environ)
    env_pure["CDGALAB_PURE"] = "1"
    subprocess.run([sys.executable, "-m", "cdgalab", "run", session,
                    "--report", str(out_pure)], env=env_pure,
                   capture_output=True, check=True)
    env = dict(os.environ)
    env.pop("CDGALAB_PURE", None)
    subprocess.run([sys.executable, "-m", "cdgalab", "run", session,
                    "--report", str(out_default)], env=env,
                   capture_output=True, check=True)
    assert out_pure.read_bytes() == out_default.read_bytes()
