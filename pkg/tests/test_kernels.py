import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankone import _kernels_py, kernels
from rankone.permgroup import builtin

compiled = pytest.importorskip("rankone._kernels", reason="compiled kernels not built")

GROUPS = ["S4", "A5", "D8", "Wr3", "He3", "A6"]


def arrays(G):
    return (np.ascontiguousarray(G.table, dtype=np.int32),
            np.ascontiguousarray(G.inv, dtype=np.int32))


def test_backend_selected():
    want = "python" if os.environ.get("RANKONE_PURE") == "1" else "cython"
    assert kernels.BACKEND == want


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_backends_agree(name, data):
    G = builtin(name)
    table, inv = arrays(G)
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    members = np.asarray(G.subgroup([a]).members, dtype=np.int32)
    ext_py = _kernels_py.dimino_extend(table, members, [a], b)
    ext_c = compiled.dimino_extend(table, members, [a], b)
    assert np.array_equal(np.asarray(ext_py), np.asarray(ext_c))
    assert sorted(np.asarray(ext_py).tolist()) == sorted(G.subgroup([a, b]).members.tolist())
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    assert np.array_equal(
        np.asarray(_kernels_py.normalizing_mask(table, inv, mask, [a])),
        np.asarray(compiled.normalizing_mask(table, inv, mask, [a])),
    )


@pytest.mark.parametrize("name", GROUPS)
def test_conjugation_labels_agree(name):
    G = builtin(name)
    table, inv = arrays(G)
    gens = [int(g) for g in G.gen_indices]
    py = np.asarray(_kernels_py.conjugation_labels(table, inv, gens))
    assert np.array_equal(py, np.asarray(compiled.conjugation_labels(table, inv, gens)))
    # brute-force classes
    for x in range(G.order):
        cls = {G.conj(g, x) for g in range(G.order)}
        assert py[x] == min(cls)


def test_pure_fallback_gives_same_lattice():
    code = (
        "from rankone import kernels; from rankone.permgroup import builtin;"
        "G = builtin('A6'); print(kernels.BACKEND, len(G.lattice), [c.label for c in G.lattice])"
    )
    env = dict(os.environ, RANKONE_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, rest = out.stdout.split(" ", 1)
    assert backend == "python"
    G = builtin("A6")
    assert rest.strip() == f"{len(G.lattice)} {[c.label for c in G.lattice]}"
