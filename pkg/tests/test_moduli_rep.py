import numpy as np
import pytest

from moyforge.library import circle, figure2_graph, theta
from moyforge.moduli_rep import (
    Decoration,
    DecorationError,
    check_trace_lemma,
    eigenvalue_residual,
    is_admissible,
    lift_coloring,
    local_dimension,
    phi,
    random_decoration,
    roundtrip_residual,
    to_representation,
    verify_vertex_relations,
    zeta,
)
from moyforge.states import enumerate_colorings


@pytest.mark.parametrize("N", [2, 3, 5])
def test_phi_is_special_unitary(N):
    for k in range(1, N):
        m = phi(N, k)
        assert np.allclose(m.conj().T @ m, np.eye(N))
        assert abs(np.linalg.det(m) - 1) < 1e-12
        assert np.sum(np.isclose(np.diag(m), -zeta(N) ** k)) == k


@pytest.mark.parametrize("name,g", [("circle", circle()), ("theta", theta()), ("G", figure2_graph())])
@pytest.mark.parametrize("N", [3, 4])
def test_lifted_colorings_are_admissible(name, g, N):
    for c in enumerate_colorings(g, N, limit=10):
        d = lift_coloring(c, g, N)
        assert is_admissible(d, g).ok
        r = to_representation(d, g)
        assert verify_vertex_relations(r, g) < 1e-12


def test_perturbed_decoration_is_rejected():
    g = theta()
    d = random_decoration(g, 3, rng_seed=1)
    frames = dict(d.assignment)
    bent = frames["x"] + 1e-3 * frames["y"]
    frames["x"] = bent / np.linalg.norm(bent)
    rep = is_admissible(Decoration(3, frames), g)
    assert not rep.ok and rep.max_residual > 1e-4


def test_shape_errors():
    g = theta()
    d = random_decoration(g, 3, rng_seed=0)
    frames = dict(d.assignment)
    del frames["w"]
    with pytest.raises(DecorationError):
        is_admissible(Decoration(3, frames), g)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_random_decorations_and_dictionary(N):
    for seed in range(4):
        for g in (theta(), figure2_graph()):
            d = random_decoration(g, N, rng_seed=seed)
            assert d is not None and is_admissible(d, g).ok
            r = to_representation(d, g)
            assert r.unitarity_residual() < 1e-9
            assert verify_vertex_relations(r, g) < 1e-9
            assert eigenvalue_residual(r) < 1e-9
            assert roundtrip_residual(r, d) < 1e-9


def test_vertex_relations_track_admissibility():
    # residual of the representation stays small whenever the frames are admissible
    g = figure2_graph()
    for seed in range(5):
        d = random_decoration(g, 3, rng_seed=seed)
        assert is_admissible(d, g, 1e-11).ok
        assert verify_vertex_relations(to_representation(d, g), g) <= 1e-10


def test_decoration_json_roundtrip():
    g = theta()
    d = random_decoration(g, 4, rng_seed=3)
    back = Decoration.from_json(d.to_json())
    assert back.subspace_residual(d) < 1e-12


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_local_dimension_circle(N):
    for seed in range(5):
        d = random_decoration(circle(), N, rng_seed=seed)
        ld = local_dimension(d, circle())
        assert ld.conclusive and ld.dimension == 2 * (N - 1)


@pytest.mark.parametrize("N", [3, 4])
def test_local_dimension_theta(N):
    # flag manifold of a line inside a plane: dim = 2(N-1) + 2(N-2)
    d = random_decoration(theta(), N, rng_seed=7)
    ld = local_dimension(d, theta())
    assert ld.conclusive and ld.dimension == 2 * (N - 1) + 2 * (N - 2)


def test_trace_lemma_small_run():
    st = check_trace_lemma(4, 200, rng_seed=5)
    assert st.passed and st.trials == 200 and st.orthogonal_trials > 0
