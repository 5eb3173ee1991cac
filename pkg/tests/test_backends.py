import os
import subprocess
import sys

import numpy as np
import pytest

from tmtree import GridGraph3, ScalarField
from tmtree.synthetic import erdos_renyi, random_values
from tmtree.tmt import BACKENDS, DEFAULT_BACKEND, compute_merge_tree, get_backend

needs_compiled = pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert get_backend("python").BACKEND == "python"
    with pytest.raises(ValueError):
        get_backend("fortran")


@needs_compiled
def test_compiled_is_default():
    assert DEFAULT_BACKEND == "compiled"


def test_env_var_forces_fallback():
    env = dict(os.environ, TMTREE_BACKEND="python")
    code = "import tmtree; print(tmtree.DEFAULT_BACKEND)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.stdout.strip() == "python"


@needs_compiled
@pytest.mark.parametrize("seed", range(20))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    if seed % 2:
        g = GridGraph3(*rng.integers(1, 12, size=3))
    else:
        g = erdos_renyi(int(rng.integers(1, 120)), 0.05, rng)
    f = ScalarField(random_values(g.n, rng, ties=seed % 3 == 0))
    a = compute_merge_tree(f, g, 4, "compiled")
    b = compute_merge_tree(f, g, 4, "python")
    assert np.array_equal(a.cells, b.cells)
