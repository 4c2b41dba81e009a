"""Symmetric eigendecomposition with eigenvalue grouping and projectors,
eigenvalue supports, exact rational kernels of integer-weighted graph
matrices, signed {-1, 0, 1} kernel vectors, and recognition of integer or
quadratic-surd spectra.

Floating decompositions use cyclic Jacobi rotations up to 64 x 64 (small,
predictable eigenvector error) and LAPACK's tridiagonalization-based solver
above that.  Exact kernels are computed with fraction-free rational
elimination, so kernel facts carry no floating error at all.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .graphs import MatrixKind, WeightedGraph, adjacency_lists, degrees, is_tree, matrix_of
from .tolerances import DEFAULT_TOLERANCES, Tolerances

JACOBI_MAX_N = 64


class SpectralError(RuntimeError):
    """Eigensolver failure (non-convergence); never silently ignored."""


def jacobi_eigh(matrix: np.ndarray, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Returns eigenvalues ascending and the matching orthonormal eigenvector
    columns.  Raises SpectralError when the off-diagonal mass fails to reach
    rounding level within the sweep limit.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("jacobi_eigh expects a square matrix")
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    norm = np.linalg.norm(a)
    target = max(1e-300, 1e-14 * max(norm, 1.0))
    prev_off = math.inf
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(a.diagonal())))
        if off <= target:
            break
        if off >= prev_off and off <= 1e-10 * max(norm, 1.0):
            break  # rounding-level stagnation; as converged as floats allow
        prev_off = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                small = 100.0 * abs(apq)
                if abs(a[p, p]) + small == abs(a[p, p]) and abs(a[q, q]) + small == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0  # below rounding level of the diagonal
                    continue
                diff = a[q, q] - a[p, p]
                if abs(diff) + small == abs(diff):
                    t = apq / diff  # tiny rotation; the full formula would overflow
                else:
                    tau = diff / (2.0 * apq)
                    t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                    if tau < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise SpectralError("Jacobi rotations did not converge")
    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues with multiplicities, orthonormal bases and
    symmetric eigenprojectors of one symmetric matrix."""

    matrix: np.ndarray
    eigenvalues: np.ndarray              # distinct values, ascending
    multiplicities: tuple[int, ...]
    bases: tuple[np.ndarray, ...]        # orthonormal columns per eigenvalue
    projectors: tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.eigenvalues).max())

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.matrix)
        for lam, proj in zip(self.eigenvalues, self.projectors):
            out += lam * proj
        return out


def decompose(matrix: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    """Group the spectrum of a symmetric matrix into distinct eigenvalues.

    Eigenvalues closer than the grouping tolerance (scaled by the spectral
    radius) are merged into one eigenspace whose projector is the sum of
    outer products of the grouped orthonormal eigenvectors.
    """
    m = np.array(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("decompose expects a square matrix")
    if not np.allclose(m, m.T, atol=1e-12 * max(1.0, float(np.abs(m).max(initial=0.0)))):
        raise ValueError("decompose expects a symmetric matrix")
    m = (m + m.T) / 2.0
    n = m.shape[0]
    if n <= JACOBI_MAX_N:
        w, v = jacobi_eigh(m)
    else:
        try:
            w, v = np.linalg.eigh(m)
        except np.linalg.LinAlgError as exc:
            raise SpectralError(f"eigensolver failed: {exc}") from exc
    gap = tol.group(float(np.abs(w).max(initial=0.0)))
    groups: list[list[int]] = [[0]]
    for i in range(1, n):
        if w[i] - w[groups[-1][-1]] <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    values = []
    mults = []
    bases = []
    projectors = []
    for idx in groups:
        block = v[:, idx]
        proj = block @ block.T
        proj = (proj + proj.T) / 2.0
        values.append(float(np.mean(w[idx])))
        mults.append(len(idx))
        block = block.copy()
        block.setflags(write=False)
        proj.setflags(write=False)
        bases.append(block)
        projectors.append(proj)
    eigvals = np.array(values)
    eigvals.setflags(write=False)
    m.setflags(write=False)
    return SpectralDecomposition(
        matrix=m, eigenvalues=eigvals, multiplicities=tuple(mults),
        bases=tuple(bases), projectors=tuple(projectors))


def decompose_graph(g: WeightedGraph, kind: MatrixKind,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    return decompose(matrix_of(g, kind), tol)


@dataclass(frozen=True)
class EigenvalueSupport:
    """Indices (into the distinct eigenvalues) where a vector has a nonzero
    projection, with the projection 2-norms of the members."""

    indices: tuple[int, ...]
    eigenvalues: tuple[float, ...]
    weights: tuple[float, ...]

    def __contains__(self, index: int) -> bool:
        return index in self.indices


def support(dec: SpectralDecomposition, x, tol: Tolerances = DEFAULT_TOLERANCES) -> EigenvalueSupport:
    """Eigenvalue support of a vector: eigenvalues with ||E x|| above the
    membership threshold (scaled by ||x|| so unit and sqrt(n)-normalized
    vectors are treated consistently)."""
    vec = np.asarray(x, dtype=complex).reshape(-1)
    if vec.shape[0] != dec.n:
        raise ValueError("vector length does not match the decomposition")
    cutoff = tol.supp * max(1.0, float(np.linalg.norm(vec)))
    idx, vals, weights = [], [], []
    for i, proj in enumerate(dec.projectors):
        w = float(np.linalg.norm(proj @ vec))
        if w > cutoff:
            idx.append(i)
            vals.append(float(dec.eigenvalues[i]))
            weights.append(w)
    return EigenvalueSupport(indices=tuple(idx), eigenvalues=tuple(vals), weights=tuple(weights))


def vertex_support(dec: SpectralDecomposition, u: int,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> EigenvalueSupport:
    e = np.zeros(dec.n)
    e[u] = 1.0
    return support(dec, e, tol)


# ---------------------------------------------------------------------------
# Exact kernels

def leaf_peel_order(g: WeightedGraph) -> list[int]:
    """Vertex order produced by repeatedly removing current leaves of a tree."""
    deg = degrees(g)
    adj = adjacency_lists(g)
    removed = [False] * g.n
    order: list[int] = []
    queue = deque(sorted(v for v in range(g.n) if deg[v] <= 1))
    while queue:
        u = queue.popleft()
        if removed[u]:
            continue
        removed[u] = True
        order.append(u)
        for v in adj[u]:
            if not removed[v]:
                deg[v] -= 1
                if deg[v] == 1:
                    queue.append(v)
    order.extend(v for v in range(g.n) if not removed[v])
    return order


def rational_matrix(g: WeightedGraph, kind: MatrixKind) -> list[list[Fraction]]:
    if not g.has_integer_weights():
        raise ValueError("exact arithmetic requires integer edge weights")
    n = g.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for u, v, w in g.edges:
        m[u][v] = m[v][u] = Fraction(w)
    if kind is not MatrixKind.ADJACENCY:
        sign = -1 if kind is MatrixKind.LAPLACIAN else 1
        wdeg = [sum(m[u]) for u in range(n)]
        m = [[Fraction(sign) * m[u][v] for v in range(n)] for u in range(n)]
        for u in range(n):
            m[u][u] += wdeg[u]
    return m


def _rational_kernel(m: list[list[Fraction]], column_order: list[int]) -> list[list[Fraction]]:
    """Kernel basis of a rational matrix, eliminating columns in the given order."""
    rows = [list(r) for r in m]
    nrows, ncols = len(rows), len(column_order)
    pivot_of_col: dict[int, int] = {}
    r = 0
    for col in column_order:
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_of_col[col] = r
        r += 1
        if r == nrows:
            break
    free = [c for c in column_order if c not in pivot_of_col]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for col, prow in pivot_of_col.items():
            vec[col] = -rows[prow][fc]
        basis.append(vec)
    return basis


def _primitive_integer(vec: list[Fraction]) -> tuple[int, ...]:
    scale = math.lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * scale) for x in vec]
    content = math.gcd(*(abs(x) for x in ints)) if any(ints) else 1
    if content > 1:
        ints = [x // content for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def exact_kernel(g: WeightedGraph, kind: MatrixKind) -> list[tuple[int, ...]]:
    """Basis of the rational kernel of the chosen matrix as primitive integer
    vectors (exact arithmetic; empty exactly when the matrix is nonsingular).

    On trees the elimination follows a leaf-peeling vertex order, which in
    practice yields a raw basis with entries in {-1, 0, 1} for unit weights;
    the property is verified by consumers per instance, never assumed.
    """
    m = rational_matrix(g, kind)
    order = leaf_peel_order(g) if is_tree(g) else list(range(g.n))
    basis = _rational_kernel(m, order)
    return [_primitive_integer(v) for v in basis]


@dataclass(frozen=True)
class SignedKernelVector:
    """Exact kernel vector with entries in {-1, 0, 1}."""

    vector: tuple[int, ...]
    nnz: int
    nnz_b1: int | None = None
    nnz_b2: int | None = None


@dataclass(frozen=True)
class SignedVectorResult:
    vectors: tuple[SignedKernelVector, ...]
    truncated: bool


def signed_kernel_vectors(kernel_basis: list[tuple[int, ...]], u: int | None = None,
                          max_dim: int = 12) -> SignedVectorResult:
    """Enumerate {-1, 0, 1}-coefficient combinations of the kernel basis and
    keep those whose entries all lie in {-1, 0, 1} (optionally with a nonzero
    entry at u).  Kernels of dimension above max_dim are only sampled through
    the basis vectors themselves and flagged as truncated."""
    dim = len(kernel_basis)
    if dim == 0:
        return SignedVectorResult(vectors=(), truncated=False)
    basis = np.array(kernel_basis, dtype=np.int64)
    found: dict[tuple[int, ...], None] = {}

    def _keep(vec: np.ndarray) -> None:
        if np.abs(vec).max(initial=0) != 1:
            return
        if u is not None and vec[u] == 0:
            return
        lead = vec[np.nonzero(vec)[0][0]]
        if lead < 0:
            vec = -vec
        found.setdefault(tuple(int(x) for x in vec))

    truncated = dim > max_dim
    if truncated:
        for row in basis:
            _keep(row.copy())
    else:
        coeff_iter = product((-1, 0, 1), repeat=dim)
        chunk: list[tuple[int, ...]] = []
        for coeffs in coeff_iter:
            if any(coeffs):
                chunk.append(coeffs)
            if len(chunk) == 32768:
                _keep_chunk(np.array(chunk, dtype=np.int64), basis, u, found)
                chunk = []
        if chunk:
            _keep_chunk(np.array(chunk, dtype=np.int64), basis, u, found)
    vectors = tuple(SignedKernelVector(vector=v, nnz=sum(1 for x in v if x))
                    for v in sorted(found))
    return SignedVectorResult(vectors=vectors, truncated=truncated)


def _keep_chunk(coeffs: np.ndarray, basis: np.ndarray, u: int | None,
                found: dict[tuple[int, ...], None]) -> None:
    vecs = coeffs @ basis
    ok = np.abs(vecs).max(axis=1) == 1
    if u is not None:
        ok &= vecs[:, u] != 0
    for vec in vecs[ok]:
        nz = np.nonzero(vec)[0]
        if vec[nz[0]] < 0:
            vec = -vec
        found.setdefault(tuple(int(x) for x in vec))


def attach_part_counts(sv: SignedKernelVector, b1: tuple[int, ...],
                       b2: tuple[int, ...]) -> SignedKernelVector:
    n1 = sum(1 for v in b1 if sv.vector[v])
    n2 = sum(1 for v in b2 if sv.vector[v])
    return SignedKernelVector(vector=sv.vector, nnz=sv.nnz, nnz_b1=n1, nnz_b2=n2)


# ---------------------------------------------------------------------------
# Spectrum recognition

class SpectrumKind(enum.Enum):
    ALL_INTEGER = "all-integer"
    QUADRATIC_SURD = "quadratic-surd"
    IRREGULAR = "irregular"


@dataclass(frozen=True)
class SpectrumClassification:
    kind: SpectrumKind
    delta: int | None = None        # square-free discriminant (> 1)
    half_offset: int | None = None  # shared integer a in (a + b*sqrt(delta)) / 2
    pairs: tuple[tuple[int, int], ...] = ()  # (a, b) per classified eigenvalue


def _squarefree_split(c: int) -> tuple[int, int]:
    """c = b^2 * d with d square-free; returns (b, d)."""
    b, d = 1, 1
    p = 2
    while p * p <= c:
        if c % p == 0:
            k = 0
            while c % p == 0:
                c //= p
                k += 1
            b *= p ** (k // 2)
            if k % 2:
                d *= p
        p += 1 if p == 2 else 2
    return b, d * c


def classify_spectrum(dec: SpectralDecomposition,
                      restrict_to: EigenvalueSupport | None = None,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> SpectrumClassification:
    """Recognise an all-integer spectrum or one of the form
    (a + b_j * sqrt(delta)) / 2 with a single integer a and square-free
    delta > 1; anything else is reported as irregular."""
    if restrict_to is not None:
        values = [float(dec.eigenvalues[i]) for i in restrict_to.indices]
    else:
        values = [float(x) for x in dec.eigenvalues]
    return classify_values(values, tol)


def classify_values(values: list[float], tol: Tolerances = DEFAULT_TOLERANCES) -> SpectrumClassification:
    if not values:
        return SpectrumClassification(kind=SpectrumKind.IRREGULAR)
    if all(abs(x - round(x)) <= tol.recog for x in values):
        return SpectrumClassification(
            kind=SpectrumKind.ALL_INTEGER,
            pairs=tuple((2 * round(x), 0) for x in values))
    candidates: set[int] = set()
    for i, x in enumerate(values):
        for y in values[i:]:
            s = x + y
            if abs(s - round(s)) <= 8 * tol.recog and abs(round(s)) <= tol.surd_offset_max:
                candidates.add(round(s))
    for a in sorted(candidates, key=lambda c: (abs(c), c)):
        fit = _fit_surd_family(values, a, tol)
        if fit is not None:
            delta, pairs = fit
            return SpectrumClassification(
                kind=SpectrumKind.QUADRATIC_SURD, delta=delta, half_offset=a, pairs=pairs)
    return SpectrumClassification(kind=SpectrumKind.IRREGULAR)


def _fit_surd_family(values, a, tol):
    targets = []
    for x in values:
        y = 2.0 * x - a
        c = round(y * y)
        if abs(y * y - c) > 8 * tol.recog * (1.0 + abs(y)):
            return None
        targets.append((y, int(c)))
    delta = None
    pairs = []
    for y, c in targets:
        if c == 0:
            pairs.append((a, 0))
            continue
        b, d = _squarefree_split(c)
        if d <= 1 or d > tol.surd_delta_max:
            return None
        if delta is None:
            delta = d
        elif delta != d:
            return None
        pairs.append((a, b if y > 0 else -b))
    if delta is None:
        return None
    # verify the reconstruction at full precision
    root = math.sqrt(delta)
    for x, (aa, b) in zip(values, pairs):
        if abs(x - (aa + b * root) / 2.0) > 8 * tol.recog:
            return None
    return delta, tuple(pairs)
