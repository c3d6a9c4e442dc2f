"""Numerical decorations and SU(N) meridian representations.

A decoration puts a ``k``-dimensional subspace of C^N on every ``k``-colored
edge (stored as an orthonormal ``N x k`` frame) so that at each vertex the
two parts are orthogonal and span the sum edge.  The dictionary to
representations sends a subspace ``V`` of dimension ``k`` to
``zeta**k * (I - 2 P_V)`` with ``zeta = exp(i pi / N)``.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field

import numpy as np

from .graph import ColoredGraph
from .states import SubsetColoring, _roles, _vertex_order

__all__ = [
    "Decoration",
    "MeridianRep",
    "AdmissibilityReport",
    "DecorationError",
    "zeta",
    "phi",
    "projector",
    "is_admissible",
    "lift_coloring",
    "random_decoration",
    "local_dimension",
    "LocalDimension",
    "to_representation",
    "verify_vertex_relations",
    "eigenvalue_residual",
    "roundtrip_residual",
    "check_trace_lemma",
    "TraceLemmaStats",
]

ADMISSIBLE_TOL = 1e-10


class DecorationError(ValueError):
    pass


def zeta(N: int) -> complex:
    return cmath.exp(1j * cmath.pi / N)


def phi(N: int, k: int) -> np.ndarray:
    """The model conjugacy class ``zeta**k * diag(-1 (k times), 1, ...)``."""
    d = np.ones(N, dtype=complex)
    d[:k] = -1
    return zeta(N) ** k * np.diag(d)


def projector(frame: np.ndarray) -> np.ndarray:
    return frame @ frame.conj().T


def _orthonormalize(m: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(m)
    return q[:, : m.shape[1]]


def _complement(frame: np.ndarray, N: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of ``frame``'s span."""
    u, _, _ = np.linalg.svd(np.eye(N) - projector(frame))
    return u[:, : N - frame.shape[1]]


@dataclass
class Decoration:
    """Edge id (or ``"circle:<i>"``) -> orthonormal ``N x k`` frame."""

    N: int
    assignment: dict[str, np.ndarray]
    tolerance: float = ADMISSIBLE_TOL

    def frame(self, key: str) -> np.ndarray:
        return self.assignment[key]

    def subspace_residual(self, other: Decoration) -> float:
        """Largest projector difference against another decoration."""
        return max(
            (float(np.linalg.norm(projector(f) - projector(other.assignment[k]), 2))
             for k, f in self.assignment.items()),
            default=0.0,
        )

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "frames": {
                k: [[[float(z.real), float(z.imag)] for z in col] for col in f.T]
                for k, f in sorted(self.assignment.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> Decoration:
        frames = {}
        for k, cols in obj["frames"].items():
            frames[k] = np.array([[complex(re, im) for re, im in col] for col in cols]).T
        return cls(int(obj["N"]), frames)

    @classmethod
    def from_json(cls, text: str) -> Decoration:
        return cls.from_json_obj(json.loads(text))


@dataclass
class AdmissibilityReport:
    ok: bool
    max_residual: float
    vertex_residuals: dict[str, float] = field(default_factory=dict)
    frame_residuals: dict[str, float] = field(default_factory=dict)


def _expected_keys(g: ColoredGraph) -> dict[str, int]:
    keys = {eid: e.color for eid, e in g.edges.items()}
    keys.update({f"circle:{i}": c for i, c in enumerate(g.circles)})
    return keys


def _check_shapes(d: Decoration, g: ColoredGraph):
    for key, k in _expected_keys(g).items():
        if key not in d.assignment:
            raise DecorationError(f"no frame for {key}")
        shape = d.assignment[key].shape
        if shape != (d.N, k):
            raise DecorationError(f"{key}: frame shape {shape}, expected {(d.N, k)}")


def _vertex_residual(d: Decoration, t: str, a: str, b: str) -> float:
    A, B, T = d.assignment[a], d.assignment[b], d.assignment[t]
    orth = np.linalg.norm(A.conj().T @ B, 2)
    span = np.linalg.norm(projector(T) - projector(A) - projector(B), 2)
    return float(max(orth, span))


def is_admissible(d: Decoration, g: ColoredGraph, tol: float = ADMISSIBLE_TOL) -> AdmissibilityReport:
    """Check frames are orthonormal and every vertex condition holds within ``tol``.

    A vertex residual is the larger of ``||A^H B||`` (orthogonality of the
    parts) and ``||P_T - P_A - P_B||`` (the parts span the sum).
    """
    _check_shapes(d, g)
    frames = {
        k: float(np.linalg.norm(f.conj().T @ f - np.eye(f.shape[1]), 2))
        for k, f in d.assignment.items()
    }
    verts = {v: _vertex_residual(d, *_roles(g, v)) for v in g.vertices}
    worst = max(list(frames.values()) + list(verts.values()), default=0.0)
    return AdmissibilityReport(worst <= tol, worst, verts, frames)


def lift_coloring(c: SubsetColoring, g: ColoredGraph, N: int) -> Decoration:
    """Coordinate decoration: a subset S becomes span{e_i : i in S}."""
    eye = np.eye(N, dtype=complex)
    return Decoration(N, {k: eye[:, [i - 1 for i in sorted(s)]] for k, s in c.assignment})


# ----------------------------------------------------------------------
# random sampling


def _random_frame(rng: np.random.Generator, N: int, k: int) -> np.ndarray:
    z = rng.normal(size=(N, k)) + 1j * rng.normal(size=(N, k))
    return _orthonormalize(z)


def _propagate(g: ColoredGraph, N: int, rng: np.random.Generator) -> dict[str, np.ndarray]:
    """Greedy vertex-by-vertex assignment, exact wherever nothing is closed yet."""
    frames: dict[str, np.ndarray] = {}
    colors = {eid: e.color for eid, e in g.edges.items()}
    for v in _vertex_order(g):
        t, a, b = _roles(g, v)
        kt, ka, kb = colors[t], colors[a], colors[b]
        T, A, B = frames.get(t), frames.get(a), frames.get(b)
        if T is None and A is None and B is None:
            T = _random_frame(rng, N, kt)
        if T is not None and A is None and B is None:
            U = T @ _random_frame(rng, kt, kt)
            A, B = U[:, :ka], U[:, ka:]
        elif T is not None and (A is None) != (B is None):
            known = A if A is not None else B
            rest = (np.eye(N) - projector(known)) @ T
            u, _, _ = np.linalg.svd(rest)
            other = u[:, : kt - known.shape[1]]
            if A is None:
                A = other
            else:
                B = other
        elif T is None and (A is None) != (B is None):
            known = A if A is not None else B
            other = _complement(known, N) @ _random_frame(rng, N - known.shape[1], kt - known.shape[1])
            if A is None:
                A = other
            else:
                B = other
            T = _orthonormalize(np.hstack([A, B]))
        elif T is None:
            T = _orthonormalize(np.hstack([A, B]))
        frames[t], frames[a], frames[b] = T, A, B
    return frames


def _tangent_basis(F: np.ndarray, N: int):
    Q = _complement(F, N)
    return Q, Q.shape[1] * F.shape[1]


def _constraint_residual(g: ColoredGraph, frames: dict[str, np.ndarray], roles) -> np.ndarray:
    parts = []
    for t, a, b in roles:
        m = projector(frames[t]) - projector(frames[a]) - projector(frames[b])
        parts.append(m.real.ravel())
        parts.append(m.imag.ravel())
    return np.concatenate(parts) if parts else np.zeros(0)


def _jacobian(g: ColoredGraph, frames: dict[str, np.ndarray], N: int, roles, keys):
    """Real Jacobian of the vertex constraints in Grassmannian chart coordinates."""
    rows = 2 * N * N * len(roles)
    cols = []
    charts = []
    index_of = {}
    for i, (t, a, b) in enumerate(roles):
        for e, sign in ((t, 1.0), (a, -1.0), (b, -1.0)):
            index_of.setdefault(e, []).append((i, sign))
    for key in keys:
        F = frames[key]
        Q, _ = _tangent_basis(F, N)
        charts.append((key, Q))
        k = F.shape[1]
        for r in range(Q.shape[1]):
            for c in range(k):
                for unit in (1.0, 1j):
                    Z = np.zeros((Q.shape[1], k), dtype=complex)
                    Z[r, c] = unit
                    X = Q @ Z
                    dP = X @ F.conj().T + F @ X.conj().T
                    col = np.zeros(rows)
                    for i, sign in index_of.get(key, ()):
                        off = 2 * N * N * i
                        col[off: off + N * N] += sign * dP.real.ravel()
                        col[off + N * N: off + 2 * N * N] += sign * dP.imag.ravel()
                    cols.append(col)
    J = np.array(cols).T if cols else np.zeros((rows, 0))
    return J, charts


def _newton(g, frames, N, max_iter=60, tol=1e-14):
    roles = [_roles(g, v) for v in g.vertices]
    keys = sorted(g.edges)
    for _ in range(max_iter):
        r = _constraint_residual(g, frames, roles)
        if r.size == 0 or np.max(np.abs(r)) < tol:
            return True
        J, charts = _jacobian(g, frames, N, roles, keys)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        pos = 0
        for key, Q in charts:
            F = frames[key]
            k = F.shape[1]
            n = 2 * Q.shape[1] * k
            z = step[pos: pos + n]
            pos += n
            Z = (z[0::2] + 1j * z[1::2]).reshape(Q.shape[1], k)
            frames[key] = _orthonormalize(F + Q @ Z)
    r = _constraint_residual(g, frames, roles)
    return r.size == 0 or np.max(np.abs(r)) < 1e-12


def random_decoration(
    g: ColoredGraph, N: int, max_attempts: int = 20, rng_seed=None
) -> Decoration | None:
    """A random admissible decoration, or ``None`` after ``max_attempts``.

    Frames are propagated vertex by vertex (solving each constraint exactly
    while it is not yet over-determined); constraints left violated where
    cycles close are then removed by Gauss-Newton steps in Grassmannian
    charts.  Success means :func:`is_admissible` holds at 1e-10.
    """
    if g.max_color() > N:
        return None
    rng = np.random.default_rng(rng_seed)
    for _ in range(max_attempts):
        frames = _propagate(g, N, rng)
        for i, c in enumerate(g.circles):
            frames[f"circle:{i}"] = _random_frame(rng, N, c)
        if g.vertices and not _newton(g, frames, N):
            continue
        d = Decoration(N, frames)
        if is_admissible(d, g).ok:
            return d
    return None


@dataclass
class LocalDimension:
    dimension: int | None
    ambient: int
    rank: int
    singular_values: list[float]
    conclusive: bool


def local_dimension(d: Decoration, g: ColoredGraph, threshold: float = 1e-6) -> LocalDimension:
    """Real dimension of the Zariski tangent space at ``d``.

    Ambient dimension of the product of Grassmannians minus the numerical
    rank of the constraint Jacobian.  Singular values within a factor 10 of
    the cut-off make the estimate inconclusive (``dimension`` is None).
    """
    N = d.N
    roles = [_roles(g, v) for v in g.vertices]
    keys = sorted(d.assignment)
    ambient = sum(2 * f.shape[1] * (N - f.shape[1]) for f in d.assignment.values())
    frames = dict(d.assignment)
    J, _ = _jacobian(g, frames, N, roles, keys)
    if J.size == 0:
        return LocalDimension(ambient, ambient, 0, [], True)
    s = np.linalg.svd(J, compute_uv=False)
    cut = threshold * (s[0] if s[0] > 0 else 1.0)
    rank = int(np.sum(s > cut))
    near = np.any((s > cut / 10) & (s < cut * 10))
    return LocalDimension(
        None if near else ambient - rank, ambient, rank, [float(x) for x in s], not near
    )


# ----------------------------------------------------------------------
# representations


@dataclass
class MeridianRep:
    N: int
    matrices: dict[str, np.ndarray]
    colors: dict[str, int]

    @property
    def zeta(self) -> complex:
        return zeta(self.N)

    def unitarity_residual(self) -> float:
        worst = 0.0
        for m in self.matrices.values():
            worst = max(
                worst,
                float(np.linalg.norm(m.conj().T @ m - np.eye(self.N), 2)),
                abs(np.linalg.det(m) - 1),
            )
        return worst


def to_representation(d: Decoration, g: ColoredGraph) -> MeridianRep:
    """Subspace ``V`` of dimension ``k`` -> ``zeta**k (I - 2 P_V)``."""
    _check_shapes(d, g)
    N = d.N
    z = zeta(N)
    mats, colors = {}, {}
    for key, F in d.assignment.items():
        k = F.shape[1]
        mats[key] = z**k * (np.eye(N) - 2 * projector(F))
        colors[key] = k
    return MeridianRep(N, mats, colors)


def verify_vertex_relations(r: MeridianRep, g: ColoredGraph) -> float:
    """Largest ``||rho(m1) rho(m2) - rho(n)||`` over vertices."""
    worst = 0.0
    for v in g.vertices:
        t, a, b = _roles(g, v)
        diff = r.matrices[a] @ r.matrices[b] - r.matrices[t]
        worst = max(worst, float(np.linalg.norm(diff, 2)))
    return worst


def _sorted_spectrum(vals: np.ndarray) -> np.ndarray:
    return np.array(sorted(vals, key=lambda z: (round(cmath.phase(z), 9), z.real)))


def eigenvalue_residual(r: MeridianRep) -> float:
    """Distance of each matrix's spectrum from that of the model class."""
    worst = 0.0
    for key, m in r.matrices.items():
        got = _sorted_spectrum(np.linalg.eigvals(m))
        want = _sorted_spectrum(np.diag(phi(r.N, r.colors[key])))
        worst = max(worst, float(np.max(np.abs(got - want))))
    return worst


def roundtrip_residual(r: MeridianRep, d: Decoration) -> float:
    """Recover each subspace as the ``-zeta**k`` eigenspace and compare."""
    worst = 0.0
    for key, m in r.matrices.items():
        k = r.colors[key]
        h = m / r.zeta**k
        h = (h + h.conj().T) / 2
        w, vecs = np.linalg.eigh(h)
        rec = vecs[:, np.abs(w + 1) < 0.5]
        if rec.shape[1] != k:
            return float("inf")
        worst = max(worst, float(np.linalg.norm(projector(rec) - projector(d.assignment[key]), 2)))
    return worst


# ----------------------------------------------------------------------
# trace lemma


@dataclass
class TraceLemmaStats:
    N: int
    trials: int
    orthogonal_trials: int
    failures: int
    max_orthogonal_error: float
    min_nonorthogonal_gap: float
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def check_trace_lemma(N: int, trials: int = 1000, rng_seed=None, tol: float = 1e-8) -> TraceLemmaStats:
    """Sample pairs ``S, T`` conjugate to Phi_1 and test
    ``tr(ST) == zeta**2 (N - 4)``  iff  their ``-zeta`` eigenvectors are orthogonal.

    Half of the trials force orthogonal eigenvectors; the rest are random.
    """
    if N < 3:
        raise ValueError("the trace test needs N >= 3")
    rng = np.random.default_rng(rng_seed)
    z = zeta(N)
    target = z**2 * (N - 4)
    failures = 0
    n_orth = 0
    max_err = 0.0
    min_gap = float("inf")
    bad = []
    for i in range(trials):
        u = _random_frame(rng, N, 1)
        v = _random_frame(rng, N, 1)
        if i % 2 == 0:
            v = _orthonormalize((np.eye(N) - projector(u)) @ v)
        S = z * (np.eye(N) - 2 * projector(u))
        T = z * (np.eye(N) - 2 * projector(v))
        # recover eigenvectors from the matrices, not from u and v
        eu = _minus_eigvec(S, z)
        ev = _minus_eigvec(T, z)
        overlap = abs(complex((eu.conj().T @ ev)[0, 0]))
        err = abs(np.trace(S @ T) - target)
        orth = overlap <= tol
        match = err <= tol
        if orth:
            n_orth += 1
            max_err = max(max_err, err)
        else:
            min_gap = min(min_gap, err)
        if orth != match:
            failures += 1
            if len(bad) < 10:
                bad.append({"trial": i, "overlap": overlap, "trace_error": float(err)})
    return TraceLemmaStats(N, trials, n_orth, failures, max_err, min_gap, bad)


def _minus_eigvec(m: np.ndarray, z: complex) -> np.ndarray:
    h = m / z
    w, vecs = np.linalg.eigh((h + h.conj().T) / 2)
    return vecs[:, [int(np.argmin(w))]]
