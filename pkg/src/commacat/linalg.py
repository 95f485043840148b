"""Exact dense linear algebra over a prime field F_p.

Every matrix in the package is an :class:`FpMatrix`: an immutable,
row-major integer matrix with entries reduced mod p.  All arithmetic is
integer arithmetic followed by reduction, so results are exact.  Target
dimensions are tiny (tens at most), so everything is dense and there are
no randomized algorithms: identical inputs give identical outputs.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

import numpy as np

_PRIME_CHECK_BOUND = 2 ** 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FpMatrix:
    """Immutable matrix over F_p, stored row-major as reduced residues."""

    __slots__ = ("p", "_a", "_hash")

    def __init__(self, p: int, entries) -> None:
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {p!r}")
        if p < _PRIME_CHECK_BOUND and not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        a = np.asarray(entries, dtype=np.int64)
        if a.ndim == 1:
            # Only the empty 1-d array is accepted, as the 0x0 matrix.
            if a.size:
                raise ValueError("entries must be a 2-d array of rows")
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("entries must be a 2-d array of rows")
        a = np.mod(a, p)
        a.setflags(write=False)
        self.p = p
        self._a = a
        self._hash = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def column(cls, p: int, vec: Sequence[int]) -> "FpMatrix":
        return cls(p, np.asarray(vec, dtype=np.int64).reshape(-1, 1))

    @classmethod
    def from_columns(cls, p: int, cols: Sequence[Sequence[int]], rows: int) -> "FpMatrix":
        if not cols:
            return cls.zeros(p, rows, 0)
        return cls(p, np.stack([np.asarray(c, dtype=np.int64) for c in cols], axis=1))

    # -- shape and access --------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def array(self) -> np.ndarray:
        return self._a

    def entry(self, i: int, j: int) -> int:
        return int(self._a[i, j])

    def to_lists(self) -> list:
        return [[int(x) for x in row] for row in self._a]

    def column_vector(self, j: int) -> "FpMatrix":
        return FpMatrix(self.p, self._a[:, j : j + 1])

    def take_columns(self, idx: Sequence[int]) -> "FpMatrix":
        return FpMatrix(self.p, self._a[:, list(idx)].reshape(self.rows, len(idx)))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "FpMatrix":
        return FpMatrix(self.p, self._a[r0:r1, c0:c1])

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise ValueError(f"moduli differ: {self.p} vs {other.p}")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: ({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})"
            )
        return FpMatrix(self.p, self._a @ other._a)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.p, self._a + other._a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.p, self._a - other._a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self._a)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self._a * (c % self.p))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self._a.T)

    def is_zero(self) -> bool:
        return not self._a.any()

    # -- equality -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self._a.shape == other._a.shape
            and np.array_equal(self._a, other._a)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self._a.shape, self._a.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.to_lists()})"


def hstack(ms: Sequence[FpMatrix]) -> FpMatrix:
    if not ms:
        raise ValueError("hstack of no matrices")
    p = ms[0].p
    return FpMatrix(p, np.concatenate([m.array() for m in ms], axis=1))


def vstack(ms: Sequence[FpMatrix]) -> FpMatrix:
    if not ms:
        raise ValueError("vstack of no matrices")
    p = ms[0].p
    return FpMatrix(p, np.concatenate([m.array() for m in ms], axis=0))


def block_diag(ms: Sequence[FpMatrix], p: Optional[int] = None) -> FpMatrix:
    if not ms:
        if p is None:
            raise ValueError("block_diag of no matrices needs an explicit modulus")
        return FpMatrix.zeros(p, 0, 0)
    p = ms[0].p
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in ms:
        out[r : r + m.rows, c : c + m.cols] = m.array()
        r += m.rows
        c += m.cols
    return FpMatrix(p, out)


def kron(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    if a.p != b.p:
        raise ValueError("moduli differ")
    return FpMatrix(a.p, np.kron(a.array(), b.array()))


def rref(m: FpMatrix) -> tuple[FpMatrix, tuple[int, ...]]:
    """Reduced row-echelon form and the tuple of pivot columns."""
    p = m.p
    a = m.array().copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = None
        for i in range(r, rows):
            if a[i, c] % p:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return FpMatrix(p, a), tuple(pivots)


def rank(m: FpMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Columns form a basis of the null space of ``m`` (canonical RREF basis)."""
    red, pivots = rref(m)
    p = m.p
    cols = m.cols
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    a = red.array()
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-a[i, f]) % p
    return FpMatrix(p, basis)


def solve(m: FpMatrix, b: FpMatrix) -> Optional[FpMatrix]:
    """One solution x of m x = b, or None when the system is inconsistent.

    ``b`` may carry several right-hand sides as columns; a solution is
    returned only when every column is consistent.
    """
    if b.rows != m.rows:
        raise ValueError(f"rhs has {b.rows} rows, expected {m.rows}")
    aug = hstack([m, b])
    red, pivots = rref(aug)
    if any(c >= m.cols for c in pivots):
        return None
    p = m.p
    x = np.zeros((m.cols, b.cols), dtype=np.int64)
    a = red.array()
    for i, pc in enumerate(pivots):
        x[pc, :] = a[i, m.cols :]
    return FpMatrix(p, x)


def inverse(m: FpMatrix) -> Optional[FpMatrix]:
    if m.rows != m.cols:
        return None
    red, pivots = rref(hstack([m, FpMatrix.identity(m.p, m.rows)]))
    if len(pivots) != m.rows or any(c >= m.cols for c in pivots):
        return None
    return red.block(0, m.rows, m.cols, 2 * m.cols)


def column_space_basis(m: FpMatrix) -> FpMatrix:
    """Canonical basis of the column span (RREF of the transpose, transposed back)."""
    red, pivots = rref(m.transpose())
    k = len(pivots)
    return red.block(0, k, 0, m.rows).transpose()


def quotient_space(p: int, dim: int, sub: FpMatrix) -> tuple[FpMatrix, FpMatrix]:
    """Projection and section for F_p^dim modulo the column span of ``sub``.

    Returns (projection, section) with projection @ sub = 0,
    projection @ section = identity on the quotient, and
    ker(projection) exactly the span of ``sub``.
    """
    if sub.cols and sub.rows != dim:
        raise ValueError(f"subspace columns live in dimension {sub.rows}, expected {dim}")
    red, pivots = rref(sub.transpose()) if sub.cols else (FpMatrix.zeros(p, 0, dim), ())
    k = len(pivots)
    complement = [j for j in range(dim) if j not in pivots]
    cols = [red.array()[i, :] for i in range(k)]
    for j in complement:
        e = np.zeros(dim, dtype=np.int64)
        e[j] = 1
        cols.append(e)
    basis = FpMatrix(p, np.stack(cols, axis=1) if cols else np.zeros((dim, 0), dtype=np.int64))
    inv = inverse(basis)
    if dim == 0:
        return FpMatrix.zeros(p, 0, 0), FpMatrix.zeros(p, 0, 0)
    assert inv is not None
    projection = inv.block(k, dim, 0, dim)
    section = basis.block(0, dim, k, dim)
    return projection, section


def span_contains(basis: FpMatrix, vec: FpMatrix) -> bool:
    return solve(basis, vec) is not None


def spans_equal(a: FpMatrix, b: FpMatrix) -> bool:
    return column_space_basis(a) == column_space_basis(b)


def matrix_of_linear_map(
    p: int, domain_dim: int, codomain_dim: int, fn: Callable[[FpMatrix], FpMatrix]
) -> FpMatrix:
    """Materialize a linear map by probing it with standard basis columns."""
    cols = []
    for j in range(domain_dim):
        e = np.zeros((domain_dim, 1), dtype=np.int64)
        e[j, 0] = 1
        cols.append(fn(FpMatrix(p, e)).array()[:, 0])
    if not cols:
        return FpMatrix.zeros(p, codomain_dim, 0)
    return FpMatrix(p, np.stack(cols, axis=1))


def enumerate_vectors(p: int, dim: int) -> Iterable[tuple[int, ...]]:
    """All coordinate tuples of F_p^dim in lexicographic order."""
    if dim == 0:
        yield ()
        return
    total = p ** dim
    for n in range(total):
        vec = []
        m = n
        for _ in range(dim):
            vec.append(m % p)
            m //= p
        yield tuple(reversed(vec))
