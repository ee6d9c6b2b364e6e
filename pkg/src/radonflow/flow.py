"""Curvature flow that stretches an embedded circuit sphere flat.

Every vertex v of a circuit graph sits on the face of the ambient polytope
labeled by its sign pattern.  For each cycle through v the two cycle
neighbors v_i, v_i' define a local curvature

    eta_i = sqrt(det Gram(w_hat, w_hat')),

where w, w' are the components of the neighbor positions orthogonal to the
position of v; eta_i vanishes exactly when the three positions are linearly
dependent, i.e. coplanar with the origin.  The flow moves v with velocity

    dv/dt = sum_i eta_i * P_supp(v_i + v_i' - 2 v),

P_supp being the projection onto the span of the vertex's face directions.
The integrator pairs each field step with a partial flatness restoration
(see integrate), and after each step positions are radially renormalized
onto the polytope.  Fixed points with zero curvature are flat embeddings:
the positions span a subspace of dimension n - d - 1 whose orthogonal
complement in the zero-sum hyperplane is (the row space of) a recovered
point configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ambient import EPS_MEM, EPS_SIGN, project_to_gamma
from .complexes import (
    CircuitGraph,
    RadonComplex,
    combinatorial_circuit_graph,
    matroid_of_complex,
    opposite_neighbors,
)
from .core import (
    GroundSet,
    OrientedMatroid,
    PointConfiguration,
    SignedCircuitVertex,
)

COLLISION_DIST = 1e-10

# per-step blend weight toward the flat target state (see integrate)
FLAT_RELAX = 0.2

OUTCOME_CONVERGED = "converged-flat"
OUTCOME_STALLED = "stalled"
OUTCOME_FACE_EXIT = "face-exit"
OUTCOME_TMAX = "t_max-reached"


class IntegrationError(RuntimeError):
    """Numerical failure while integrating the flow."""


class NotFlatError(ValueError):
    """Positions do not span a subspace of the expected dimension."""


@dataclass
class FlowParams:
    h: float = 0.01
    t_max: float = 200.0
    tol_curv: float = 1e-8
    tol_fixed: float = 1e-10
    scheme: str = "rk4"

    def __post_init__(self) -> None:
        if self.h <= 0 or self.t_max <= 0:
            raise ValueError("step size and time horizon must be positive")
        if self.scheme not in ("euler", "rk4"):
            raise ValueError("scheme must be 'euler' or 'rk4'")


@dataclass
class TraceSample:
    t: float
    curv_max: float
    curv_mean: float
    vel_max: float


@dataclass
class FlowTrace:
    samples: list[TraceSample]
    outcome: str

    def to_csv_text(self) -> str:
        lines = ["t,curv_max,curv_mean,vel_max"]
        for s in self.samples:
            lines.append(f"{s.t!r},{s.curv_max!r},{s.curv_mean!r},{s.vel_max!r}")
        return "\n".join(lines) + "\n"


class EmbeddedSphere:
    """A circuit graph with one position per vertex, antipodally paired.

    Positions are stored for the positive-orientation representatives only;
    the antipode of a vertex is always placed at the negated position.
    """

    def __init__(
        self,
        matroid: OrientedMatroid,
        graph: CircuitGraph,
        rep_positions: np.ndarray,
        validate: bool = True,
    ) -> None:
        self.matroid = matroid
        self.graph = graph
        reps = len(graph.vertices) // 2
        pos = np.asarray(rep_positions, dtype=float)
        if pos.shape != (reps, matroid.n):
            raise ValueError(f"expected positions of shape ({reps}, {matroid.n})")
        self._pos = pos.copy()
        if validate:
            self._validate()

    def _validate(self) -> None:
        for k in range(self._pos.shape[0]):
            x = self._pos[k]
            if abs(float(x.sum())) > EPS_MEM or abs(float(np.abs(x).sum()) - 2.0) > EPS_MEM:
                raise ValueError(f"position of {self.graph.vertices[k]!r} is off the polytope")
            v = self.graph.vertices[k]
            for e in v.pos:
                if x[e - 1] <= EPS_SIGN:
                    raise ValueError(f"{v!r} has left its face (element {e})")
            for e in v.neg:
                if x[e - 1] >= -EPS_SIGN:
                    raise ValueError(f"{v!r} has left its face (element {e})")
            off = [e for e in range(1, self.matroid.n + 1) if e not in v.support]
            for e in off:
                if abs(x[e - 1]) > EPS_SIGN:
                    raise ValueError(f"{v!r} has support leakage on element {e}")

    @property
    def n_reps(self) -> int:
        return self._pos.shape[0]

    def position(self, v: SignedCircuitVertex) -> np.ndarray:
        i = self.graph.index_of(v)
        reps = self.n_reps
        if i < reps:
            return self._pos[i].copy()
        return -self._pos[i - reps]

    def positions_all(self) -> np.ndarray:
        return np.vstack([self._pos, -self._pos])

    def rep_positions(self) -> np.ndarray:
        return self._pos.copy()

    @classmethod
    def from_geometric(cls, rc: RadonComplex) -> "EmbeddedSphere":
        if rc.positions is None:
            raise ValueError("complex carries no coordinates")
        m = matroid_of_complex(rc)
        reps = len(rc.graph.vertices) // 2
        return cls(m, rc.graph, rc.positions[:reps])

    @classmethod
    def at_barycenters(
        cls, matroid: OrientedMatroid, graph: CircuitGraph | None = None
    ) -> "EmbeddedSphere":
        if graph is None:
            graph = combinatorial_circuit_graph(matroid)
        reps = len(graph.vertices) // 2
        pos = np.zeros((reps, matroid.n))
        for k in range(reps):
            c = graph.vertices[k].circuit
            for e in c.pos:
                pos[k, e - 1] = 1.0 / len(c.pos)
            for e in c.neg:
                pos[k, e - 1] = -1.0 / len(c.neg)
        return cls(matroid, graph, pos)

    def perturbed(self, delta: float, rng: np.random.Generator) -> "EmbeddedSphere":
        """Displace every representative inside its face, uniformly in a
        delta-ball of the face's tangent directions, then renormalize.

        Large delta may push vertices out of their faces; the result is not
        re-validated so that the flow can report a face exit.
        """
        new = self._pos.copy()
        for k in range(self.n_reps):
            v = self.graph.vertices[k]
            sup = sorted(v.support)
            dim = len(sup) - 2
            if dim <= 0:
                continue
            cons = np.zeros((2, len(sup)))
            for col, e in enumerate(sup):
                cons[0 if e in v.pos else 1, col] = 1.0
            _, _, vt = np.linalg.svd(cons)
            basis = vt[2:]  # tangent directions of the face
            g = rng.standard_normal(dim)
            g /= max(np.linalg.norm(g), 1e-30)
            radius = delta * rng.uniform() ** (1.0 / dim)
            step = radius * (g @ basis)
            row = new[k].copy()
            for col, e in enumerate(sup):
                row[e - 1] += step[col]
            new[k] = 2.0 * row / np.abs(row).sum()
        return EmbeddedSphere(self.matroid, self.graph, new, validate=False)

    def to_dict(self) -> dict:
        out = self.graph.to_dict()
        out["n"] = self.matroid.n
        out["d"] = self.matroid.d
        out["positions"] = [
            [float(x) for x in row] for row in self.positions_all()
        ]
        return out


class _Field:
    """Vectorized evaluation of curvature and velocity over all vertices."""

    def __init__(self, sphere: EmbeddedSphere) -> None:
        g = sphere.graph
        reps = sphere.n_reps
        self.reps = reps
        self.n = sphere.matroid.n
        v_idx, a_idx, b_idx = [], [], []
        for cyc in g.cycles:
            seq = cyc.vertex_seq
            size = len(seq)
            for k, v in enumerate(seq):
                if v < reps:
                    v_idx.append(v)
                    a_idx.append(seq[k - 1])
                    b_idx.append(seq[(k + 1) % size])
        self.v_idx = np.asarray(v_idx, dtype=int)
        self.a_idx = np.asarray(a_idx, dtype=int)
        self.b_idx = np.asarray(b_idx, dtype=int)
        mask = np.zeros((reps, self.n))
        for k in range(reps):
            for e in g.vertices[k].support:
                mask[k, e - 1] = 1.0
        self.mask = mask
        self.mask_size = mask.sum(axis=1, keepdims=True)

    def _eta(self, P: np.ndarray, full: np.ndarray) -> np.ndarray:
        if self.v_idx.size == 0:
            return np.zeros(0)
        a = full[self.a_idx]
        b = full[self.b_idx]
        v = P[self.v_idx]
        vn = v / np.linalg.norm(v, axis=1, keepdims=True)
        w = a - (a * vn).sum(axis=1, keepdims=True) * vn
        w2 = b - (b * vn).sum(axis=1, keepdims=True) * vn
        nw = np.linalg.norm(w, axis=1)
        nw2 = np.linalg.norm(w2, axis=1)
        if nw.size and (nw.min() < EPS_SIGN or nw2.min() < EPS_SIGN):
            raise IntegrationError("degenerate neighbor pair: radial neighbor position")
        wh = w / nw[:, None]
        wh2 = w2 / nw2[:, None]
        # sqrt(det Gram) in Schur form: the residual norm is exact near zero,
        # where 1 - cos^2 would lose half the available precision
        res = wh2 - (wh * wh2).sum(axis=1, keepdims=True) * wh
        return np.linalg.norm(res, axis=1)

    def velocity(self, P: np.ndarray) -> np.ndarray:
        full = np.vstack([P, -P])
        eta = self._eta(P, full)
        dP = np.zeros_like(P)
        if eta.size == 0:
            return dP
        mid = full[self.a_idx] + full[self.b_idx] - 2.0 * P[self.v_idx]
        y = mid * self.mask[self.v_idx]
        y -= self.mask[self.v_idx] * (
            y.sum(axis=1, keepdims=True) / self.mask_size[self.v_idx]
        )
        np.add.at(dP, self.v_idx, eta[:, None] * y)
        return dP


    def stats(self, P: np.ndarray) -> tuple[np.ndarray, float, float, float]:
        """Velocity plus max/mean vertex curvature and max vertex speed."""
        full = np.vstack([P, -P])
        eta = self._eta(P, full)
        curv = np.zeros(self.reps)
        dP = np.zeros_like(P)
        if eta.size:
            np.add.at(curv, self.v_idx, eta)
            mid = full[self.a_idx] + full[self.b_idx] - 2.0 * P[self.v_idx]
            y = mid * self.mask[self.v_idx]
            y -= self.mask[self.v_idx] * (
                y.sum(axis=1, keepdims=True) / self.mask_size[self.v_idx]
            )
            np.add.at(dP, self.v_idx, eta[:, None] * y)
        vel_max = float(np.linalg.norm(dP, axis=1).max()) if self.reps else 0.0
        curv_max = float(curv.max()) if self.reps else 0.0
        curv_mean = float(curv.mean()) if self.reps else 0.0
        return dP, curv_max, curv_mean, vel_max


def local_curvature(
    s: EmbeddedSphere, v: SignedCircuitVertex
) -> tuple[float, list[float]]:
    """Total curvature at v and the per-cycle contributions.

    Reference per-vertex implementation of the Gram-determinant formula; the
    integrator uses a vectorized twin that is tested against this one.
    """
    p = s.position(v)
    pn = p / np.linalg.norm(p)
    etas = []
    for a, b in opposite_neighbors(s.graph, v):
        pa, pb = s.position(a), s.position(b)
        w = pa - (pa @ pn) * pn
        w2 = pb - (pb @ pn) * pn
        nw, nw2 = np.linalg.norm(w), np.linalg.norm(w2)
        if nw < EPS_SIGN or nw2 < EPS_SIGN:
            raise IntegrationError("degenerate neighbor pair: radial neighbor position")
        wh, wh2 = w / nw, w2 / nw2
        # sqrt(det Gram(wh, wh2)) evaluated as the Schur complement, which
        # stays exact when the two directions are nearly (anti)parallel
        res = wh2 - float(wh @ wh2) * wh
        etas.append(float(np.linalg.norm(res)))
    return sum(etas), etas


def velocity(s: EmbeddedSphere, v: SignedCircuitVertex) -> np.ndarray:
    """Flow velocity at one vertex (reference implementation)."""
    from .ambient import support_projection

    p = s.position(v)
    pn = p / np.linalg.norm(p)
    out = np.zeros_like(p)
    for a, b in opposite_neighbors(s.graph, v):
        pa, pb = s.position(a), s.position(b)
        w = pa - (pa @ pn) * pn
        w2 = pb - (pb @ pn) * pn
        nw, nw2 = np.linalg.norm(w), np.linalg.norm(w2)
        if nw < EPS_SIGN or nw2 < EPS_SIGN:
            raise IntegrationError("degenerate neighbor pair: radial neighbor position")
        wh, wh2 = w / nw, w2 / nw2
        eta = float(np.linalg.norm(wh2 - float(wh @ wh2) * wh))
        out += eta * support_projection(v.support, pa + pb - 2.0 * p)
    return out


def _face_exit(sphere_graph: CircuitGraph, P: np.ndarray) -> bool:
    reps = P.shape[0]
    for k in range(reps):
        v = sphere_graph.vertices[k]
        for e in v.pos:
            if P[k, e - 1] <= 0.0:
                return True
        for e in v.neg:
            if P[k, e - 1] >= 0.0:
                return True
    return False


def _min_pair_distance(P: np.ndarray) -> float:
    full = np.vstack([P, -P])
    diff = full[:, None, :] - full[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())


def _flat_target(
    P: np.ndarray, m: int, mask: np.ndarray, mask_size: np.ndarray
) -> np.ndarray:
    """Support-respecting rank-m approximation of the position matrix.

    Truncating to the top m singular values breaks the face constraints
    (off-support coordinates pick up leakage, supports lose their zero sum),
    so the truncation is followed by the support projection of every row.
    Flat legal states are exactly the fixed points of this map.
    """
    u, sv, vt = np.linalg.svd(P, full_matrices=False)
    flat = (u[:, :m] * sv[:m]) @ vt[:m]
    flat = flat * mask
    flat -= mask * (flat.sum(axis=1, keepdims=True) / mask_size)
    return flat


def integrate(s: EmbeddedSphere, params: FlowParams | None = None) -> tuple[EmbeddedSphere, FlowTrace]:
    """Run the flow until it converges, stalls, exits a face, or times out.

    One antipodal representative per vertex pair is integrated; all vertices
    are updated simultaneously from the previous state, and every position
    is radially renormalized after each step.

    Each scheme step is followed by a partial flatness restoration: the
    positions are blended, with weight FLAT_RELAX, toward their
    support-respecting rank-(n-d-1) approximation (top singular subspace
    truncation followed by the face's support projection, see _flat_target)
    and renormalized.  Flat legal states are fixed points of the
    restoration, so the restoration does not move equilibria, and the
    velocity field itself is stepped unmodified.  It is needed because the
    field alone contracts toward the flat set only for complexes with a
    single cycle; with two or more crossing cycles the flat set is a saddle
    of the field dynamics and explicit integration drifts away from it.
    The blend removes a fixed fraction of the transverse part per step
    while the field re-injects an amount proportional to the remaining
    curvature, so the max curvature decays geometrically until both
    tolerances are met.
    """
    if params is None:
        params = FlowParams()
    field = _Field(s)
    P = s.rep_positions()
    m_flat = s.matroid.n - s.matroid.d - 1
    samples: list[TraceSample] = []
    t = 0.0
    h = params.h
    outcome = OUTCOME_TMAX
    max_steps = int(math.ceil(params.t_max / h)) + 1
    for _ in range(max_steps + 1):
        dP, curv_max, curv_mean, vel_max = field.stats(P)
        samples.append(TraceSample(t, curv_max, curv_mean, vel_max))
        if _face_exit(s.graph, P):
            outcome = OUTCOME_FACE_EXIT
            break
        if curv_max < params.tol_curv and vel_max < params.tol_fixed:
            outcome = OUTCOME_CONVERGED
            break
        if vel_max < params.tol_fixed:
            outcome = OUTCOME_STALLED
            break
        if t >= params.t_max:
            outcome = OUTCOME_TMAX
            break
        if params.scheme == "euler":
            P_new = P + h * dP
        else:
            k1 = dP
            k2 = field.velocity(P + 0.5 * h * k1)
            k3 = field.velocity(P + 0.5 * h * k2)
            k4 = field.velocity(P + h * k3)
            P_new = P + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norms = np.abs(P_new).sum(axis=1)
        if norms.size and norms.min() < EPS_MEM:
            raise IntegrationError("a position collapsed to the origin")
        P_new = 2.0 * P_new / norms[:, None]
        target = _flat_target(P_new, m_flat, field.mask, field.mask_size)
        P_new = (1.0 - FLAT_RELAX) * P_new + FLAT_RELAX * target
        norms = np.abs(P_new).sum(axis=1)
        if norms.size and norms.min() < EPS_MEM:
            raise IntegrationError("a position collapsed to the origin")
        P_new = 2.0 * P_new / norms[:, None]
        if P_new.shape[0] > 1 and _min_pair_distance(P_new) < COLLISION_DIST:
            raise IntegrationError("two vertices collided within 1e-10")
        P = P_new
        t += h
    final = EmbeddedSphere(s.matroid, s.graph, P, validate=False)
    return final, FlowTrace(samples=samples, outcome=outcome)


def recover_configuration(
    s: EmbeddedSphere, eps_flat: float = 1e-6
) -> PointConfiguration:
    """Read a point configuration off a flat embedding.

    The positions must span a subspace V of dimension n - d - 1 (relative
    singular-value threshold eps_flat); the recovered configuration has as
    rows a basis of the orthogonal complement of V inside the zero-sum
    hyperplane, one coordinate column per ground-set element.
    """
    n, d = s.matroid.n, s.matroid.d
    m = n - d - 1
    X = s.positions_all()
    sv = np.linalg.svd(X, compute_uv=False)
    if sv.size < m or sv[0] <= 0.0:
        raise NotFlatError("positions span too small a subspace")
    rel = sv / sv[0]
    if rel[m - 1] <= eps_flat:
        raise NotFlatError(
            f"positions span less than {m} dimensions (sv ratio {rel[m - 1]:.2e})"
        )
    if sv.size > m and rel[m] >= eps_flat:
        raise NotFlatError(
            f"positions are not flat: dimension exceeds {m} (sv ratio {rel[m]:.2e})"
        )
    _, _, vt = np.linalg.svd(X)
    V = vt[:m]
    stack = np.vstack([V, np.ones((1, n)) / math.sqrt(n)])
    _, _, vt2 = np.linalg.svd(stack)
    W = vt2[m + 1 :]
    if W.shape[0] != d:
        raise NotFlatError("complement of the span has unexpected dimension")
    return PointConfiguration(W.T.copy(), d)


def curvature_decay_stats(trace: FlowTrace) -> tuple[float, float]:
    """Least-squares decay rate and r^2 of log curv_max over the
    post-transient window (samples after curv_max first halves)."""
    pts = [(s.t, s.curv_max) for s in trace.samples if s.curv_max > 0.0]
    if len(pts) < 10:
        raise ValueError("need at least ten samples with positive curvature")
    c0 = pts[0][1]
    start = next((i for i, (_, c) in enumerate(pts) if c < 0.5 * c0), None)
    if start is None or len(pts) - start < 2:
        raise ValueError("curvature never halves; no post-transient window")
    ts = np.array([t for t, _ in pts[start:]])
    ys = np.log(np.array([c for _, c in pts[start:]]))
    slope, intercept = np.polyfit(ts, ys, 1)
    fit = slope * ts + intercept
    ss_res = float(((ys - fit) ** 2).sum())
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 and ss_res == 0.0 else 1.0 - ss_res / max(ss_tot, 1e-300)
    return float(slope), float(r2)
