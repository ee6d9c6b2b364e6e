"""Radon complexes and circuit graphs.

For a configuration of n points spanning R^d, the affine dependences form
the kernel of the lifted (d+1) x n matrix, a subspace V of dimension
n - d - 1 inside the zero-sum hyperplane.  Intersecting V with the boundary
of the cross-polytope yields a polyhedral (n-d-2)-sphere, the Radon
complex: its cells correspond to the sign vectors realized by vectors of V,
its vertices to the minimal-support (elementary) ones, which are exactly
the signed circuits of the configuration.

The same 1-skeleton can be built from the circuit list alone: two signed
circuits X, Y are adjacent iff they conform (no element receives opposite
signs), X != +-Y, and no third circuit conforms to the composition X o Y.
Edges group into closed cycles by the support of that composition, one
cycle per two-dimensional coordinate subspace of V.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .ambient import project_to_gamma
from .core import (
    KERNEL_RTOL,
    Circuit,
    GroundSet,
    OrientedMatroid,
    PointConfiguration,
    RankDeficientError,
    SignedCircuitVertex,
    check_circuit_axioms,
    mask_of,
    set_of,
)


@dataclass(frozen=True)
class Cycle:
    """A closed cycle of the circuit graph, tagged with its support set.

    vertex_seq lists the vertex indices in cyclic order (first not repeated);
    edge_ids[i] joins vertex_seq[i] to vertex_seq[(i+1) % len].
    """

    support: frozenset[int]
    vertex_seq: tuple[int, ...]
    edge_ids: tuple[int, ...]


@dataclass(frozen=True)
class Cell:
    """A filled cell of dimension >= 2, given by the vertices on its closure."""

    dim: int
    vertices: frozenset[int]


@dataclass
class CircuitGraph:
    """Vertices (signed circuits), edges, and the cycle partition of the edges."""

    vertices: tuple[SignedCircuitVertex, ...]
    edges: tuple[tuple[int, int], ...]
    cycles: tuple[Cycle, ...]
    _index: dict[SignedCircuitVertex, int] = field(init=False, repr=False)
    _adjacency: list[list[int]] = field(init=False, repr=False)
    _pairs: list[list[tuple[int, int]]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._adjacency = [[] for _ in self.vertices]
        for i, j in self.edges:
            self._adjacency[i].append(j)
            self._adjacency[j].append(i)
        self._pairs = [[] for _ in self.vertices]
        for cyc in self.cycles:
            seq = cyc.vertex_seq
            size = len(seq)
            for k, v in enumerate(seq):
                self._pairs[v].append((seq[k - 1], seq[(k + 1) % size]))

    def index_of(self, v: SignedCircuitVertex) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise ValueError(f"vertex {v!r} is not in the graph") from None

    def degree(self, i: int) -> int:
        return len(self._adjacency[i])

    def neighbors(self, i: int) -> list[int]:
        return sorted(self._adjacency[i])

    def to_dict(self) -> dict:
        return {
            "vertices": [
                {
                    "pos": sorted(v.circuit.pos),
                    "neg": sorted(v.circuit.neg),
                    "sign": v.orientation,
                }
                for v in self.vertices
            ],
            "edges": [list(e) for e in self.edges],
            "cycles": [
                {"support": sorted(c.support), "edge_ids": list(c.edge_ids)}
                for c in self.cycles
            ],
        }


@dataclass
class RadonComplex:
    """A circuit graph plus its filled higher cells and natural coordinates.

    positions holds one row per graph vertex (antipodal rows negated) when
    the complex was built geometrically, else None.
    """

    graph: CircuitGraph
    facets: tuple[Cell, ...]
    n: int
    d: int
    positions: np.ndarray | None = None

    def euler_characteristic(self) -> int:
        chi = len(self.graph.vertices) - len(self.graph.edges)
        for cell in self.facets:
            chi += (-1) ** cell.dim
        return chi


def _ordered_vertices(circuits: list[Circuit]) -> tuple[SignedCircuitVertex, ...]:
    """Positive orientations first, antipodes mirrored after; index i <-> i + R."""
    reps = [SignedCircuitVertex(c, 1) for c in circuits]
    return tuple(reps + [v.antipode() for v in reps])


def _vertex_masks(vertices) -> list[tuple[int, int]]:
    return [v.masks() for v in vertices]


def _partition_edges_into_cycles(
    n_vertices: int,
    edges: list[tuple[int, int]],
    masks: list[tuple[int, int]],
) -> tuple[Cycle, ...]:
    """Group edges by the support of the composed sign vector and walk cycles.

    Within one support tag every incident vertex must have exactly two
    incident edges; each connected component is then a closed cycle.
    """
    groups: dict[int, list[int]] = {}
    for eid, (i, j) in enumerate(edges):
        tag = masks[i][0] | masks[i][1] | masks[j][0] | masks[j][1]
        groups.setdefault(tag, []).append(eid)
    cycles = []
    for tag in sorted(groups):
        adj: dict[int, list[tuple[int, int]]] = {}
        for eid in groups[tag]:
            i, j = edges[eid]
            adj.setdefault(i, []).append((j, eid))
            adj.setdefault(j, []).append((i, eid))
        bad = [v for v, nb in adj.items() if len(nb) != 2]
        if bad:
            raise ValueError(
                f"edges tagged {sorted(set_of(tag))} do not form closed cycles "
                f"(vertex {bad[0]} has degree {len(adj[bad[0]])} there)"
            )
        used: set[int] = set()
        for start in sorted(adj):
            if any(eid in used for _, eid in adj[start]):
                continue
            seq = [start]
            eids = []
            prev_edge = -1
            current = start
            while True:
                nxt = [(w, eid) for w, eid in adj[current] if eid != prev_edge and eid not in used]
                if not nxt:
                    raise ValueError("cycle walk failed; edge group is not a disjoint cycle union")
                w, eid = min(nxt, key=lambda t: (t[0], t[1]))
                used.add(eid)
                eids.append(eid)
                if w == start:
                    break
                seq.append(w)
                prev_edge = eid
                current = w
            cycles.append(
                Cycle(support=set_of(tag), vertex_seq=tuple(seq), edge_ids=tuple(eids))
            )
    return tuple(cycles)


def _conformal(ap: int, an: int, bp: int, bn: int) -> bool:
    return (ap & bn) == 0 and (an & bp) == 0


def _conforms_to(zp: int, zn: int, sp: int, sn: int) -> bool:
    return (zp & ~sp) == 0 and (zn & ~sn) == 0


def geometric_radon_complex(config: PointConfiguration) -> RadonComplex:
    """Build the Radon complex of a spanning point configuration.

    Vertices are the elementary (minimal-support) sign vectors of the
    dependence space, placed on the polytope by radial normalization; a sign
    vector is realized iff the circuits conforming to it cover its support,
    and the cell it labels has dimension dim(V restricted to the support)
    minus one.
    """
    if not config.affinely_spans():
        raise RankDeficientError("points do not affinely span R^d")
    n, d = config.n, config.d
    lifted = config.lifted_matrix()

    dim_cache: dict[int, int] = {}

    def dim_of(support_mask: int) -> int:
        """Dimension of the dependence vectors supported inside the mask."""
        if support_mask not in dim_cache:
            idx = [i for i in range(n) if support_mask >> i & 1]
            sub = lifted[:, idx]
            s = np.linalg.svd(sub, compute_uv=False)
            tol = KERNEL_RTOL * max(1.0, float(s[0]) if s.size else 0.0)
            dim_cache[support_mask] = len(idx) - int((s > tol).sum())
        return dim_cache[support_mask]

    # minimal-support kernel sign vectors, scanned by increasing support size
    circuits: list[Circuit] = []
    positions_by_circuit: dict[Circuit, np.ndarray] = {}
    supports: list[frozenset[int]] = []
    for size in range(2, d + 3):
        for sub in itertools.combinations(range(1, n + 1), size):
            s = frozenset(sub)
            if any(supp <= s for supp in supports):
                continue
            smask = mask_of(sub)
            if dim_of(smask) < 1:
                continue
            idx = [e - 1 for e in sub]
            u, sv, vt = np.linalg.svd(lifted[:, idx])
            vec = vt[-1]
            vec = vec / np.abs(vec).max()
            if np.abs(vec).min() <= 1e-9:
                # a smaller support is dependent; it will be (or was) found
                continue
            x = np.zeros(n)
            x[idx] = vec
            emin = min(sub)
            if x[emin - 1] < 0:
                x = -x
            pos = frozenset(e for e in sub if x[e - 1] > 0)
            neg = frozenset(e for e in sub if x[e - 1] < 0)
            c = Circuit(pos, neg)
            circuits.append(c)
            supports.append(s)
            positions_by_circuit[c] = project_to_gamma(x)

    circuits.sort(key=Circuit.sort_key)
    vertices = _ordered_vertices(circuits)
    masks = _vertex_masks(vertices)
    positions = np.array(
        [positions_by_circuit[c] for c in circuits]
        + [-positions_by_circuit[c] for c in circuits]
    )

    # realized sign vectors: closure of the signed circuits under conformal
    # composition (sign-pattern union)
    realized: dict[tuple[int, int], None] = dict.fromkeys(masks)
    queue = list(masks)
    while queue:
        sp, sn = queue.pop()
        for cp, cn in masks:
            if not _conformal(sp, sn, cp, cn):
                continue
            t = (sp | cp, sn | cn)
            if t not in realized:
                realized[t] = None
                queue.append(t)

    edge_set: dict[tuple[int, int], None] = {}
    facet_cells: list[Cell] = []
    for sp, sn in realized:
        cell_dim = dim_of(sp | sn) - 1
        if cell_dim == 0:
            continue
        conforming = [
            i for i, (cp, cn) in enumerate(masks) if _conforms_to(cp, cn, sp, sn)
        ]
        if cell_dim == 1:
            if len(conforming) != 2:
                raise ValueError(
                    "a one-dimensional cell must close over exactly two circuits"
                )
            i, j = sorted(conforming)
            edge_set[(i, j)] = None
        else:
            facet_cells.append(Cell(dim=cell_dim, vertices=frozenset(conforming)))

    edges = sorted(edge_set)
    cycles = _partition_edges_into_cycles(len(vertices), edges, masks)
    graph = CircuitGraph(vertices=vertices, edges=tuple(edges), cycles=cycles)
    facets = tuple(
        sorted(facet_cells, key=lambda c: (c.dim, tuple(sorted(c.vertices))))
    )
    return RadonComplex(graph=graph, facets=facets, n=n, d=d, positions=positions)


def matroid_of_complex(rc: RadonComplex) -> OrientedMatroid:
    reps = rc.graph.vertices[: len(rc.graph.vertices) // 2]
    return OrientedMatroid(
        GroundSet(rc.n, rc.d), frozenset(v.circuit for v in reps)
    )


def combinatorial_circuit_graph(
    m: OrientedMatroid, check_axioms: bool = True
) -> CircuitGraph:
    """Build the circuit graph from the circuit list alone.

    Adjacency rule: X and Y are joined iff they conform, X != +-Y, and no
    third signed circuit conforms to the composition X o Y.  Edges are then
    partitioned into cycles by the support of the composition.
    """
    if check_axioms:
        report = check_circuit_axioms(m)
        if not report.ok:
            raise ValueError(f"circuit axioms fail: {report.summary()}")
    circuits = m.sorted_circuits()
    vertices = _ordered_vertices(circuits)
    masks = _vertex_masks(vertices)
    edges = []
    for i, j in itertools.combinations(range(len(vertices)), 2):
        xp, xn = masks[i]
        yp, yn = masks[j]
        if xp == yn and xn == yp:
            continue  # antipodal pair
        if not _conformal(xp, xn, yp, yn):
            continue
        sp, sn = xp | yp, xn | yn
        third = False
        for k, (zp, zn) in enumerate(masks):
            if k != i and k != j and _conforms_to(zp, zn, sp, sn):
                third = True
                break
        if not third:
            edges.append((i, j))
    cycles = _partition_edges_into_cycles(len(vertices), edges, masks)
    return CircuitGraph(vertices=vertices, edges=tuple(edges), cycles=cycles)


def opposite_neighbors(
    g: CircuitGraph, v: SignedCircuitVertex
) -> list[tuple[SignedCircuitVertex, SignedCircuitVertex]]:
    """The neighbor pairs of v, one pair per cycle through v."""
    i = g.index_of(v)
    return [(g.vertices[a], g.vertices[b]) for a, b in g._pairs[i]]


def graphs_equal(g1: CircuitGraph, g2: CircuitGraph) -> bool:
    """Labeled comparison: same signed-circuit vertices and same edges."""
    if set(g1.vertices) != set(g2.vertices):
        return False
    def edge_labels(g):
        return {frozenset((g.vertices[i], g.vertices[j])) for i, j in g.edges}
    return edge_labels(g1) == edge_labels(g2)


@dataclass
class SphereReport:
    """Structural checks of a Radon complex against the expected sphere."""

    n: int
    d: int
    sphere_dim: int
    euler_characteristic: int
    expected_euler: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "sphere_dim": self.sphere_dim,
            "euler_characteristic": self.euler_characteristic,
            "expected_euler": self.expected_euler,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def validate_sphere(c: RadonComplex, n: int, d: int) -> SphereReport:
    """Check Euler characteristic, parity, antipodality, and connectivity.

    The complex of an n-point configuration in R^d is an (n-d-2)-sphere, so
    its Euler characteristic must be 1 + (-1)^(n-d-2), every vertex degree
    must be even, the vertex and edge sets must be antipodally symmetric,
    and the 1-skeleton must be connected once the sphere dimension is >= 1.
    """
    failures: list[str] = []
    g = c.graph
    sphere_dim = n - d - 2
    expected = 1 + (-1) ** sphere_dim
    chi = c.euler_characteristic()
    if chi != expected:
        failures.append(f"euler characteristic {chi} != expected {expected}")

    for i in range(len(g.vertices)):
        if g.degree(i) % 2 != 0:
            failures.append(f"vertex {g.vertices[i]!r} has odd degree {g.degree(i)}")
            break

    vset = set(g.vertices)
    if any(v.antipode() not in vset for v in g.vertices):
        failures.append("vertex set is not closed under the antipodal map")
    else:
        edge_labels = {frozenset((g.vertices[i], g.vertices[j])) for i, j in g.edges}
        for i, j in g.edges:
            mirrored = frozenset(
                (g.vertices[i].antipode(), g.vertices[j].antipode())
            )
            if mirrored not in edge_labels:
                failures.append("edge set is not closed under the antipodal map")
                break

    if sphere_dim >= 1 and g.vertices:
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            for nb in g._adjacency[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(g.vertices):
            failures.append("1-skeleton is not connected")

    covered: dict[int, int] = {}
    for cyc in g.cycles:
        for eid in cyc.edge_ids:
            covered[eid] = covered.get(eid, 0) + 1
    if covered != {eid: 1 for eid in range(len(g.edges))}:
        failures.append("cycles do not partition the edge set")

    return SphereReport(
        n=n,
        d=d,
        sphere_dim=sphere_dim,
        euler_characteristic=chi,
        expected_euler=expected,
        failures=failures,
    )
