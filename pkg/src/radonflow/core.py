"""Oriented matroids represented by their signed circuits.

A circuit of a point configuration is an inclusion-minimal affinely
dependent subset, carrying the sign split A|B of its (unique up to scale)
affine dependence: sum_i lam_i p_i = 0 with sum_i lam_i = 0, A the elements
with lam_i > 0 and B those with lam_i < 0.  Equivalently A|B is a minimal
Radon partition: conv(A) and conv(B) intersect, and no proper subset has
that property.  Circuits are stored unsigned-canonically, with the smallest
element of A u B in the positive part; the two orientations of a circuit
are handled by SignedCircuitVertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# relative singular-value threshold for rank and kernel decisions
KERNEL_RTOL = 1e-10
# dependence coefficients below this magnitude (after max-abs normalization)
# are treated as zero, i.e. the element is not in the circuit
EPS_SIGN = 1e-9


class RankDeficientError(ValueError):
    """Point configuration does not affinely span R^d."""


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << (int(e) - 1)
    return m


def set_of(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class GroundSet:
    """Ground set 1..n of points in dimension d."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension d must be at least 1")
        if self.n < self.d + 2:
            raise ValueError("need n >= d + 2 for any circuit to exist")

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)


@dataclass(frozen=True)
class Circuit:
    """A signed circuit A|B up to global sign reversal.

    pos and neg are disjoint nonempty-union element sets.  Use make() to get
    the canonical representative (smallest element of the support positive);
    the raw constructor keeps whatever it is given so that malformed inputs
    can be represented and then flagged by check_circuit_axioms.
    """

    pos: frozenset[int]
    neg: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pos", frozenset(int(e) for e in self.pos))
        object.__setattr__(self, "neg", frozenset(int(e) for e in self.neg))
        if self.pos & self.neg:
            raise ValueError("circuit parts must be disjoint")
        if not (self.pos | self.neg):
            raise ValueError("circuit support must be nonempty")
        if any(e < 1 for e in self.pos | self.neg):
            raise ValueError("elements are 1-based positive integers")

    @staticmethod
    def make(pos, neg) -> "Circuit":
        pos, neg = frozenset(pos), frozenset(neg)
        if not (pos | neg):
            raise ValueError("circuit support must be nonempty")
        if min(pos | neg) in neg:
            pos, neg = neg, pos
        return Circuit(pos, neg)

    @property
    def support(self) -> frozenset[int]:
        return self.pos | self.neg

    @property
    def is_canonical(self) -> bool:
        return min(self.support) in self.pos

    def reversed(self) -> "Circuit":
        return Circuit(self.neg, self.pos)

    def masks(self) -> tuple[int, int]:
        return mask_of(self.pos), mask_of(self.neg)

    def sort_key(self):
        return (len(self.support), tuple(sorted(self.support)), tuple(sorted(self.pos)))

    def __repr__(self) -> str:
        p = ",".join(map(str, sorted(self.pos)))
        n = ",".join(map(str, sorted(self.neg)))
        return f"{{{p}}}|{{{n}}}"


@dataclass(frozen=True)
class SignedCircuitVertex:
    """One orientation of a circuit; the vertices of the circuit graph."""

    circuit: Circuit
    orientation: int

    def __post_init__(self) -> None:
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @property
    def pos(self) -> frozenset[int]:
        return self.circuit.pos if self.orientation == 1 else self.circuit.neg

    @property
    def neg(self) -> frozenset[int]:
        return self.circuit.neg if self.orientation == 1 else self.circuit.pos

    @property
    def support(self) -> frozenset[int]:
        return self.circuit.support

    def antipode(self) -> "SignedCircuitVertex":
        return SignedCircuitVertex(self.circuit, -self.orientation)

    def masks(self) -> tuple[int, int]:
        pm, nm = self.circuit.masks()
        return (pm, nm) if self.orientation == 1 else (nm, pm)

    def __repr__(self) -> str:
        sgn = "+" if self.orientation == 1 else "-"
        return f"{sgn}{self.circuit!r}"


@dataclass(frozen=True)
class OrientedMatroid:
    """A ground set together with a finite set of circuits.

    The constructor checks only basic well-formedness (element ranges and
    support sizes); structural axioms are verified separately by
    check_circuit_axioms so that defective hand-entered inputs can be
    represented and reported on.
    """

    ground: GroundSet
    circuits: frozenset[Circuit]

    def __post_init__(self) -> None:
        object.__setattr__(self, "circuits", frozenset(self.circuits))
        for c in self.circuits:
            if any(e > self.ground.n for e in c.support):
                raise ValueError(f"circuit {c!r} uses an element beyond n={self.ground.n}")
            if len(c.support) > self.ground.d + 2:
                raise ValueError(
                    f"circuit {c!r} has support larger than d + 2 = {self.ground.d + 2}"
                )

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def d(self) -> int:
        return self.ground.d

    @property
    def acyclic(self) -> bool:
        return all(c.pos and c.neg for c in self.circuits)

    @property
    def is_uniform(self) -> bool:
        return all(len(c.support) == self.d + 2 for c in self.circuits)

    def sorted_circuits(self) -> list[Circuit]:
        return sorted(self.circuits, key=Circuit.sort_key)

    def circuit_key(self) -> frozenset[tuple[tuple[int, ...], tuple[int, ...]]]:
        return frozenset(
            (tuple(sorted(c.pos)), tuple(sorted(c.neg))) for c in self.circuits
        )

    def relabeled(self, perm: dict[int, int]) -> "OrientedMatroid":
        """Apply an element relabeling, re-canonicalizing each circuit."""
        cs = frozenset(
            Circuit.make({perm[e] for e in c.pos}, {perm[e] for e in c.neg})
            for c in self.circuits
        )
        return OrientedMatroid(self.ground, cs)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "circuits": [
                {"pos": sorted(c.pos), "neg": sorted(c.neg)}
                for c in self.sorted_circuits()
            ],
        }

    @staticmethod
    def from_dict(data: dict) -> "OrientedMatroid":
        ground = GroundSet(int(data["n"]), int(data["d"]))
        cs = frozenset(
            Circuit(frozenset(c["pos"]), frozenset(c["neg"])) for c in data["circuits"]
        )
        return OrientedMatroid(ground, cs)


@dataclass(frozen=True)
class PointConfiguration:
    """n labeled points in R^d, stored as an (n, d) array.

    Degenerate positions (coincident points, collinear triples, ...) are
    allowed; the points merely have to be finite.  Operations that need the
    points to affinely span R^d check that themselves.
    """

    points: np.ndarray
    d: int

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.d:
            raise ValueError(f"points must form an (n, {self.d}) array")
        if pts.shape[0] < self.d + 2:
            raise ValueError("need at least d + 2 points")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def lifted_matrix(self) -> np.ndarray:
        """The (d+1) x n matrix of coordinates with an appended row of ones.

        Affine dependences of the points are exactly the kernel vectors.
        """
        return np.vstack([self.points.T, np.ones(self.n)])

    def affinely_spans(self) -> bool:
        s = np.linalg.svd(self.lifted_matrix(), compute_uv=False)
        return bool(s[-1] > KERNEL_RTOL * max(1.0, s[0])) and len(s) == self.d + 1

    def to_dict(self) -> dict:
        return {"d": self.d, "points": [list(map(float, row)) for row in self.points]}

    @staticmethod
    def from_dict(data: dict) -> "PointConfiguration":
        pts = np.asarray(data["points"], dtype=float)
        return PointConfiguration(pts, int(data["d"]))


def _kernel_vector(mat: np.ndarray) -> tuple[int, np.ndarray]:
    """Kernel dimension and one kernel vector (last right-singular vector)."""
    u, s, vt = np.linalg.svd(mat)
    tol = KERNEL_RTOL * max(1.0, float(s[0]) if s.size else 0.0)
    rank = int((s > tol).sum())
    dim = mat.shape[1] - rank
    return dim, vt[-1]


def circuits_of_points(config: PointConfiguration) -> OrientedMatroid:
    """Compute all signed circuits of a point configuration.

    Scans supports by increasing size, skipping supersets of circuits already
    found; a subset is a circuit when the lifted matrix restricted to it has
    a one-dimensional kernel with full support.  Coefficients below EPS_SIGN
    after max-abs normalization are treated as zero, and support-minimality
    is enforced by a final superset filter.
    """
    if not config.affinely_spans():
        raise RankDeficientError("points do not affinely span R^d")
    n, d = config.n, config.d
    lifted = config.lifted_matrix()
    found: list[tuple[frozenset[int], Circuit]] = []
    for size in range(2, d + 3):
        for sub in itertools.combinations(range(1, n + 1), size):
            s = frozenset(sub)
            if any(supp <= s for supp, _ in found):
                continue
            idx = [e - 1 for e in sub]
            dim, vec = _kernel_vector(lifted[:, idx])
            if dim == 0:
                continue
            lam = vec / np.abs(vec).max()
            nz = np.abs(lam) > EPS_SIGN
            pos = frozenset(e for e, keep, l in zip(sub, nz, lam) if keep and l > 0)
            neg = frozenset(e for e, keep, l in zip(sub, nz, lam) if keep and l < 0)
            c = Circuit.make(pos, neg)
            found.append((c.support, c))
    # defensive minimality pass; the size-ordered scan already prunes supersets
    # except when coefficient snapping shrank a support
    minimal = [
        c
        for supp, c in found
        if not any(other < supp for other, _ in found)
    ]
    return OrientedMatroid(GroundSet(n, d), frozenset(minimal))


def is_radon_partition(m: OrientedMatroid, a, b) -> bool:
    """True when some circuit of m nests in (a, b): A <= a, B <= b or swapped."""
    a, b = frozenset(int(e) for e in a), frozenset(int(e) for e in b)
    if a & b:
        raise ValueError("the two blocks must be disjoint")
    if any(e < 1 or e > m.n for e in a | b):
        raise ValueError("block element out of range")
    for c in m.circuits:
        if (c.pos <= a and c.neg <= b) or (c.pos <= b and c.neg <= a):
            return True
    return False


def weak_map_leq(m: OrientedMatroid, m2: OrientedMatroid) -> bool:
    """Weak-map order: m <= m2 iff every circuit of m2 is a Radon partition of m."""
    if m.ground != m2.ground:
        raise ValueError("matroids must share the same ground set")
    return all(is_radon_partition(m, c.pos, c.neg) for c in m2.circuits)


@dataclass
class AxiomReport:
    """Outcome of the circuit-axiom checks, one violation list per axiom."""

    support_minimality: list[str]
    canonicalization: list[str]
    weak_elimination: list[str]

    @property
    def ok(self) -> bool:
        return not (
            self.support_minimality or self.canonicalization or self.weak_elimination
        )

    def summary(self) -> str:
        if self.ok:
            return "all circuit axioms hold"
        parts = []
        for name, lst in [
            ("support-minimality", self.support_minimality),
            ("canonicalization", self.canonicalization),
            ("weak-elimination", self.weak_elimination),
        ]:
            if lst:
                parts.append(f"{name}: {len(lst)} violation(s), e.g. {lst[0]}")
        return "; ".join(parts)


def check_circuit_axioms(m: OrientedMatroid) -> AxiomReport:
    """Report-only verification of the signed circuit axioms.

    Checks pairwise support-minimality, the canonical-orientation storage
    convention (with duplicate reversed pairs flagged), and weak elimination:
    for signed circuits X != -Y and any e in X+ n Y- there must be a signed
    circuit Z with Z+ <= (X+ u Y+) \\ e and Z- <= (X- u Y-) \\ e.
    """
    circuits = m.sorted_circuits()
    minimality: list[str] = []
    canonical: list[str] = []
    elimination: list[str] = []

    for c1, c2 in itertools.combinations(circuits, 2):
        if c1.support < c2.support:
            minimality.append(f"support of {c1!r} is strictly inside {c2!r}")
        elif c2.support < c1.support:
            minimality.append(f"support of {c2!r} is strictly inside {c1!r}")
        elif c1.support == c2.support:
            minimality.append(f"{c1!r} and {c2!r} share their support")

    seen = {(c.pos, c.neg) for c in circuits}
    for c in circuits:
        if not c.is_canonical:
            canonical.append(f"{c!r} is stored with its smallest element negative")
        if (c.neg, c.pos) in seen:
            canonical.append(f"{c!r} is stored together with its reversal")

    signed = []
    for c in circuits:
        pm, nm = c.masks()
        signed.append((pm, nm, c, 1))
        signed.append((nm, pm, c, -1))
    for xp, xn, cx, ox in signed:
        for yp, yn, cy, oy in signed:
            if xp == yn and xn == yp:
                continue  # X == -Y
            conflict = xp & yn
            e_mask = conflict
            while e_mask:
                bit = e_mask & (-e_mask)
                e_mask ^= bit
                zp_max = (xp | yp) & ~bit
                zn_max = (xn | yn) & ~bit
                if not any(
                    zp & ~zp_max == 0 and zn & ~zn_max == 0 for zp, zn, _, _ in signed
                ):
                    e = bit.bit_length()
                    elimination.append(
                        f"no circuit eliminates element {e} between "
                        f"{'+' if ox == 1 else '-'}{cx!r} and {'+' if oy == 1 else '-'}{cy!r}"
                    )
                if len(elimination) > 200:
                    break
            if len(elimination) > 200:
                break
        if len(elimination) > 200:
            break
    return AxiomReport(minimality, canonical, elimination)
