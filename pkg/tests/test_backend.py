import os
import subprocess
import sys

from coxhecke import kernels


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


def test_pure_python_fallback_runs():
    env = dict(os.environ, COXHECKE_PURE_PYTHON="1")
    code = ("from coxhecke import kernels, linalg;"
            "from coxhecke.fields import GF;"
            "import numpy as np;"
            "assert kernels.BACKEND == 'python';"
            "print(linalg.rank(np.arange(12).reshape(3, 4), GF(7)))")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "2"


def test_fallback_acceptance_subset():
    env = dict(os.environ, COXHECKE_PURE_PYTHON="1")
    proc = subprocess.run([sys.executable, "-m", "coxhecke", "acceptance", "--suite", "weyl"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
