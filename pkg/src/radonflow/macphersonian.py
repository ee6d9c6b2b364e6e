"""Desk-scale MacPhersonian posets and their GF(2) homology.

The poset collects the acyclic oriented matroids realizable by n labeled
points in R^d, ordered by weak maps (circuit nesting).  Elements are found
by sampling point configurations through randomized degeneration recipes
(coincident pairs, collinear triples, coplanar quadruples) and closing the
result under relabelings; completeness is heuristic, validated by count
stabilization.  The order complex of the poset is the simplicial complex of
chains, whose Betti numbers over GF(2) come from boundary-matrix ranks.

For n = 4, d = 2 the poset has 25 elements (7 uniform, 12 with a collinear
triple, 6 with a coincident pair) matching the cells of the antipodal
quotient of the zero-sum cross-polytope slice: face vector (6, 12, 7),
Euler characteristic 1, Betti (1, 1, 1), a projective plane.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    Circuit,
    GroundSet,
    OrientedMatroid,
    PointConfiguration,
    circuits_of_points,
    weak_map_leq,
)

MAX_ENUMERATION_N = 6


class UnsupportedRangeError(ValueError):
    """Requested parameters outside the supported enumeration range."""


def _sample_configuration(
    n: int, d: int, rng: np.random.Generator
) -> PointConfiguration | None:
    """One random configuration, with randomized degeneration operations."""
    pts = rng.uniform(-1.0, 1.0, size=(n, d))
    n_ops = int(rng.integers(0, 3 if n <= 5 else 4))
    for _ in range(n_ops):
        kind = rng.integers(0, 3 if d >= 3 else 2)
        if kind == 0:  # coincident pair
            i, j = rng.choice(n, size=2, replace=False)
            pts[j] = pts[i]
        elif kind == 1 and d >= 2:  # collinear triple, inside or outside
            i, j, k = rng.choice(n, size=3, replace=False)
            t = float(rng.uniform(-0.8, 1.8))
            pts[k] = pts[i] + t * (pts[j] - pts[i])
        elif kind == 2:  # coplanar quadruple (d >= 3)
            i, j, k, l = rng.choice(n, size=4, replace=False)
            u, v = rng.uniform(-0.8, 1.2, size=2)
            pts[l] = pts[i] + u * (pts[j] - pts[i]) + v * (pts[k] - pts[i])
    config = PointConfiguration(pts, d)
    return config if config.affinely_spans() else None


def enumerate_acyclic_oms(
    n: int,
    d: int,
    seed: int = 0,
    stable_rounds: int = 400,
    max_rounds: int = 60000,
) -> list[OrientedMatroid]:
    """Sample the realizable acyclic oriented matroids on n points in R^d.

    Stops once stable_rounds consecutive samples add nothing new (or at
    max_rounds).  The returned list is closed under relabeling and sorted
    deterministically.
    """
    if d < 1 or n < d + 2:
        raise UnsupportedRangeError(f"need d >= 1 and n >= d + 2, got n={n}, d={d}")
    if n > MAX_ENUMERATION_N:
        raise UnsupportedRangeError(
            f"enumeration supports n <= {MAX_ENUMERATION_N}, got n={n}"
        )
    rng = np.random.default_rng([seed, n, d])
    perms = [
        dict(zip(range(1, n + 1), p)) for p in itertools.permutations(range(1, n + 1))
    ]
    found: dict[frozenset, OrientedMatroid] = {}

    def add_with_relabelings(m: OrientedMatroid) -> bool:
        if m.circuit_key() in found:
            return False
        for perm in perms:
            pm = m.relabeled(perm)
            found.setdefault(pm.circuit_key(), pm)
        return True

    quiet = 0
    rounds = 0
    while quiet < stable_rounds and rounds < max_rounds:
        rounds += 1
        config = _sample_configuration(n, d, rng)
        if config is None:
            continue
        if add_with_relabelings(circuits_of_points(config)):
            quiet = 0
        else:
            quiet += 1
    out = list(found.values())
    out.sort(key=lambda m: (len(m.circuits), sorted(c.sort_key() for c in m.circuits)))
    return out


@dataclass
class MatroidPoset:
    """Matroids with the (reflexive) weak-map order as a boolean matrix."""

    elements: list[OrientedMatroid]
    leq: np.ndarray

    @classmethod
    def from_elements(cls, elements: list[OrientedMatroid]) -> "MatroidPoset":
        k = len(elements)
        leq = np.zeros((k, k), dtype=bool)
        for i in range(k):
            for j in range(k):
                leq[i, j] = weak_map_leq(elements[i], elements[j])
        for i in range(k):
            for j in range(i + 1, k):
                if leq[i, j] and leq[j, i]:
                    raise ValueError("weak-map order is not antisymmetric here")
        return cls(elements=elements, leq=leq)

    def __len__(self) -> int:
        return len(self.elements)

    def maximal_indices(self) -> list[int]:
        k = len(self.elements)
        return [
            i
            for i in range(k)
            if not any(self.leq[i, j] and i != j for j in range(k))
        ]

    def hasse_pairs(self) -> list[tuple[int, int]]:
        """Cover relations i < j with nothing strictly between."""
        k = len(self.elements)
        strict = self.leq & ~np.eye(k, dtype=bool)
        covers = []
        for i in range(k):
            for j in range(k):
                if strict[i, j] and not (strict[i] & strict[:, j]).any():
                    covers.append((i, j))
        return covers

    def to_dict(self) -> dict:
        return {
            "elements": [m.to_dict() for m in self.elements],
            "hasse": [list(p) for p in self.hasse_pairs()],
            "maximal": self.maximal_indices(),
        }


@dataclass
class SimplicialComplex:
    """Simplices grouped by dimension, each a sorted vertex tuple."""

    simplices: list[list[tuple[int, ...]]]

    @classmethod
    def from_maximal_faces(cls, faces) -> "SimplicialComplex":
        closed: set[tuple[int, ...]] = set()
        for f in faces:
            f = tuple(sorted(set(f)))
            if not f:
                continue
            for size in range(1, len(f) + 1):
                closed.update(itertools.combinations(f, size))
        if not closed:
            return cls(simplices=[])
        top = max(len(s) for s in closed)
        by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(top)]
        for s in closed:
            by_dim[len(s) - 1].append(s)
        for lst in by_dim:
            lst.sort()
        return cls(simplices=by_dim)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def counts(self) -> list[int]:
        return [len(lst) for lst in self.simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(lst) for k, lst in enumerate(self.simplices))


def order_complex(p: MatroidPoset) -> SimplicialComplex:
    """Chains of the poset as simplices (vertex i = element index i)."""
    k = len(p.elements)
    strict_above = [
        [j for j in range(k) if p.leq[i, j] and i != j] for i in range(k)
    ]
    chains_by_dim: list[list[tuple[int, ...]]] = []

    def extend(chain: list[int]) -> None:
        dim = len(chain) - 1
        while len(chains_by_dim) <= dim:
            chains_by_dim.append([])
        chains_by_dim[dim].append(tuple(chain))
        for j in strict_above[chain[-1]]:
            chain.append(j)
            extend(chain)
            chain.pop()

    for i in range(k):
        extend([i])
    for lst in chains_by_dim:
        lst.sort()
    return SimplicialComplex(simplices=chains_by_dim)


def gf2_rank(mat: np.ndarray) -> int:
    """Rank of a 0/1 matrix over GF(2) by XOR row elimination."""
    m = np.array(mat, dtype=np.uint8) & 1
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        hits = np.flatnonzero(m[:, col])
        hits = hits[hits != rank]
        if hits.size:
            m[hits] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_betti(c: SimplicialComplex) -> list[int]:
    """Betti numbers over GF(2) from boundary-matrix ranks."""
    if not c.simplices:
        return []
    index = [
        {s: i for i, s in enumerate(lst)} for lst in c.simplices
    ]
    ranks = [0] * (len(c.simplices) + 1)
    for k in range(1, len(c.simplices)):
        lower, upper = c.simplices[k - 1], c.simplices[k]
        mat = np.zeros((len(lower), len(upper)), dtype=np.uint8)
        for j, s in enumerate(upper):
            for drop in range(len(s)):
                face = s[:drop] + s[drop + 1 :]
                mat[index[k - 1][face], j] = 1
        ranks[k] = gf2_rank(mat)
    return [
        len(c.simplices[k]) - ranks[k] - ranks[k + 1]
        for k in range(len(c.simplices))
    ]


@dataclass
class M42Report:
    """Cell structure of the 25-element poset for n=4, d=2."""

    face_vector: tuple[int, int, int]
    euler_characteristic: int
    square_facets: int
    triangle_facets: int
    matroid_facet_bijection: bool

    @property
    def ok(self) -> bool:
        return (
            self.face_vector == (6, 12, 7)
            and self.euler_characteristic == 1
            and self.square_facets == 3
            and self.triangle_facets == 4
            and self.matroid_facet_bijection
        )

    def to_dict(self) -> dict:
        return {
            "face_vector": list(self.face_vector),
            "euler_characteristic": self.euler_characteristic,
            "square_facets": self.square_facets,
            "triangle_facets": self.triangle_facets,
            "matroid_facet_bijection": self.matroid_facet_bijection,
            "ok": self.ok,
        }


def cell_structure_m42(seed: int = 0) -> M42Report:
    """Identify the uniform matroids on 4 points with the facets of the
    antipodally reduced cross-polytope slice in R^4.

    Faces of the slice are the sign patterns on {1,2,3,4} with both signs
    present; antipodal identification keeps one of each {sigma, -sigma}.
    """
    cells_by_size: dict[int, set[tuple[frozenset[int], frozenset[int]]]] = {2: set(), 3: set(), 4: set()}
    elems = [1, 2, 3, 4]
    for sub_size in (2, 3, 4):
        for sub in itertools.combinations(elems, sub_size):
            for pos_size in range(1, sub_size):
                for pos in itertools.combinations(sub, pos_size):
                    pos_set = frozenset(pos)
                    neg_set = frozenset(sub) - pos_set
                    # antipodal representative: smallest support element positive
                    if min(sub) in neg_set:
                        pos_set, neg_set = neg_set, pos_set
                    cells_by_size[sub_size].add((pos_set, neg_set))
    face_vector = (
        len(cells_by_size[2]),
        len(cells_by_size[3]),
        len(cells_by_size[4]),
    )
    chi = face_vector[0] - face_vector[1] + face_vector[2]
    squares = sum(1 for p, q in cells_by_size[4] if len(p) == 2)
    triangles = sum(1 for p, q in cells_by_size[4] if len(p) in (1, 3))

    uniform = [m for m in enumerate_acyclic_oms(4, 2, seed=seed) if m.is_uniform]
    facet_of_matroid = set()
    for m in uniform:
        (c,) = m.circuits
        facet_of_matroid.add((c.pos, c.neg))
    bijection = facet_of_matroid == cells_by_size[4] and len(uniform) == 7
    return M42Report(
        face_vector=face_vector,
        euler_characteristic=chi,
        square_facets=squares,
        triangle_facets=triangles,
        matroid_facet_bijection=bijection,
    )
