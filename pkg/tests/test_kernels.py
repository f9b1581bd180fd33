import os
import subprocess
import sys

import pytest

from tautrig import kernels
from tautrig.events import generate_event
from tautrig.spatial import run_chain, run_pair_chain


def test_fallback_selected_by_env():
    env = dict(os.environ, TAUTRIG_PURE_PYTHON="1")
    res = subprocess.run(
        [sys.executable, "-c", "from tautrig import kernels; print(kernels.DEFAULT, sorted(kernels.BACKENDS))"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert res.stdout.split()[0] == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get("fpga")


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_rejects_partial_block(backend):
    k = kernels.get(backend)
    with pytest.raises(ValueError):
        k.chain_select([1, 2, 3], 4)
    with pytest.raises(ValueError):
        k.pair_chain_select([1, 2, 3, 4, 5], 4)


@pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")
def test_backends_identical_on_events():
    for seed in range(50):
        e = generate_event(seed, 0)
        assert run_chain(e, backend="python") == run_chain(e, backend="compiled")
        assert run_pair_chain(e, backend="python") == run_pair_chain(e, backend="compiled")


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_empty_stream(backend):
    k = kernels.get(backend)
    assert k.chain_select([], 3) == ([-1, -1, -1], 0)
    assert k.pair_chain_select([], 2) == ([-1] * 4, 0)
