"""Independent circuit oracle in exact rational arithmetic.

Enumerates every subset of size at most d + 2, solves the affine dependence
over Fraction, and keeps the subsets whose dependence space is exactly
one-dimensional with full support.  Shares no code with the package; on
integer inputs the answers are exact, so comparisons against
circuits_of_points carry no tolerance coupling.
"""

from fractions import Fraction
from itertools import combinations


def kernel_basis(rows, ncols):
    """Basis of the kernel of a small rational matrix, via RREF."""
    mat = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -mat[ri][fc]
        basis.append(v)
    return basis


def exact_circuits(points, d):
    """Minimal Radon partitions of integer points.

    Returns a set of (pos, neg) frozenset pairs, canonicalized so that the
    smallest support element lies in pos.  A subset is a circuit iff its
    affine dependence space is one-dimensional and the dependence has no
    zero coefficient; a zero coefficient or a higher-dimensional space both
    mean some proper subset is already dependent.
    """
    n = len(points)
    out = set()
    for size in range(2, d + 3):
        for sub in combinations(range(n), size):
            rows = [[points[i][k] for i in sub] for k in range(d)]
            rows.append([1] * size)
            basis = kernel_basis(rows, size)
            if len(basis) != 1:
                continue
            vec = basis[0]
            if any(v == 0 for v in vec):
                continue
            if vec[0] < 0:
                vec = [-v for v in vec]
            pos = frozenset(sub[i] + 1 for i, v in enumerate(vec) if v > 0)
            neg = frozenset(sub[i] + 1 for i, v in enumerate(vec) if v < 0)
            out.add((pos, neg))
    return out
