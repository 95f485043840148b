"""Modules as action-matrix representations, and the operations on them.

A left module of dimension n over an algebra with basis e_1..e_d is a
tuple of n x n matrices, one per basis element, satisfying the module
law.  Right modules store the matrix of x -> x*e_i per basis element,
so composition reverses: action(e_i) @ action(e_j) = action(e_j e_i).

Everything here is pure and deterministic; hom spaces, traces, tensor
products and extension enumeration all reduce to exact kernel and rank
computations over F_p.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .algebra import Bimodule, FDAlgebra
from .linalg import (
    FpMatrix,
    block_diag,
    column_space_basis,
    enumerate_vectors,
    hstack,
    kernel_basis,
    kron,
    matrix_of_linear_map,
    quotient_space,
    rank,
    solve,
    vstack,
)

LEFT = "left"
RIGHT = "right"


class AlgebraMismatch(ValueError):
    """Operands live over different algebras or on different sides."""


class IsoSearchCapExceeded(RuntimeError):
    """The Hom space is too large for exhaustive isomorphism search."""


class ModuleRep:
    """A left or right module given by one action matrix per basis element."""

    __slots__ = ("algebra", "side", "dim", "action", "label", "_hash")

    def __init__(
        self,
        algebra: FDAlgebra,
        side: str,
        dim: int,
        action: Sequence[FpMatrix],
        label: str = "",
    ) -> None:
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if len(action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element required")
        for m in action:
            if m.rows != dim or m.cols != dim or m.p != algebra.p:
                raise ValueError("action matrices must be dim x dim over the algebra's field")
        self.algebra = algebra
        self.side = side
        self.dim = dim
        self.action = tuple(action)
        self.label = label
        self._hash = None

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, coeffs) -> FpMatrix:
        """Action matrix of a general algebra element."""
        out = FpMatrix.zeros(self.p, self.dim, self.dim)
        for i, c in enumerate(np.asarray(coeffs, dtype=np.int64)):
            if c % self.p:
                out = out + self.action[i].scale(int(c))
        return out

    def relabel(self, label: str) -> "ModuleRep":
        return ModuleRep(self.algebra, self.side, self.dim, self.action, label)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleRep)
            and self.algebra == other.algebra
            and self.side == other.side
            and self.dim == other.dim
            and self.action == other.action
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, self.side, self.dim, self.action))
        return self._hash

    def __repr__(self) -> str:
        name = self.label or "module"
        return f"<{name}: {self.side} dim={self.dim} over {self.algebra!r}>"


class ModuleMap:
    """A linear map intertwining the actions of source and target."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: ModuleRep, target: ModuleRep, matrix: FpMatrix) -> None:
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ValueError(
                f"map matrix must be {target.dim} x {source.dim}, got {matrix.rows} x {matrix.cols}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    def is_valid(self) -> bool:
        return not violated_intertwining(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))


def violated_intertwining(f: ModuleMap) -> list[int]:
    """Basis indices where the intertwining condition fails."""
    bad = []
    for i in range(f.source.algebra.dim):
        if f.target.action[i] @ f.matrix != f.matrix @ f.source.action[i]:
            bad.append(i)
    return bad


def validate_module(m: ModuleRep) -> list[dict]:
    """Violations of the module law (unit acts as identity, composition)."""
    violations: list[dict] = []
    alg = m.algebra
    if m.act(alg.unit) != FpMatrix.identity(m.p, m.dim):
        violations.append({"kind": "unit-action"})
    for i in range(alg.dim):
        for j in range(alg.dim):
            coeffs = alg.mul[i, j, :] if m.side == LEFT else alg.mul[j, i, :]
            if m.action[i] @ m.action[j] != m.act(coeffs):
                violations.append({"kind": "composition", "pair": [i, j]})
    return violations


def _require_compatible(m: ModuleRep, n: ModuleRep) -> None:
    if m.algebra != n.algebra or m.side != n.side:
        raise AlgebraMismatch("modules are not over the same algebra and side")


# -- basic constructors ---------------------------------------------------


def zero_module(algebra: FDAlgebra, side: str = LEFT) -> ModuleRep:
    z = FpMatrix.zeros(algebra.p, 0, 0)
    return ModuleRep(algebra, side, 0, [z] * algebra.dim, label="0")


def regular_module(algebra: FDAlgebra, side: str = LEFT) -> ModuleRep:
    """The algebra acting on itself by multiplication on the chosen side."""
    if side == LEFT:
        mats = [algebra.left_mult_matrix(_unit_vec(algebra, i)) for i in range(algebra.dim)]
    else:
        mats = [algebra.right_mult_matrix(_unit_vec(algebra, i)) for i in range(algebra.dim)]
    return ModuleRep(algebra, side, algebra.dim, mats, label=f"{algebra.label or 'A'}_{side}")


def _unit_vec(algebra: FDAlgebra, i: int) -> np.ndarray:
    e = np.zeros(algebra.dim, dtype=np.int64)
    e[i] = 1
    return e


def module_dual(m: ModuleRep) -> ModuleRep:
    """Linear dual with the side flipped; actions are the transposes."""
    side = RIGHT if m.side == LEFT else LEFT
    return ModuleRep(m.algebra, side, m.dim, [a.transpose() for a in m.action], label=f"{m.label}+")


def dual_module(s: FDAlgebra) -> ModuleRep:
    """The left S-module on the linear dual of S, with (s.f)(x) = f(x s).

    Stands in for the character module: over a finite-dimensional F_p
    algebra the linear dual carries the same module structure.
    """
    return module_dual(regular_module(s, RIGHT)).relabel(f"{s.label or 'S'}+")


def identity_map(m: ModuleRep) -> ModuleMap:
    return ModuleMap(m, m, FpMatrix.identity(m.p, m.dim))


def zero_map(m: ModuleRep, n: ModuleRep) -> ModuleMap:
    return ModuleMap(m, n, FpMatrix.zeros(m.p, n.dim, m.dim))


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    if f.target != g.source:
        raise AlgebraMismatch("maps do not compose")
    return ModuleMap(f.source, g.target, g.matrix @ f.matrix)


# -- hom spaces ------------------------------------------------------------


_HOM_CACHE: dict = {}


def hom_space(m: ModuleRep, n: ModuleRep) -> list[ModuleMap]:
    """Basis of the space of maps intertwining the two actions.

    The intertwining conditions rho_n(e) H = H rho_m(e) form one linear
    system in the entries of H; the returned basis is the canonical
    kernel basis, so the order is deterministic.  Results are memoized;
    callers must not mutate the returned list.
    """
    key = (m, n)
    cached = _HOM_CACHE.get(key)
    if cached is not None:
        return cached
    _require_compatible(m, n)
    p = m.p
    if m.dim == 0 or n.dim == 0:
        _HOM_CACHE[key] = []
        return _HOM_CACHE[key]
    blocks = []
    im = FpMatrix.identity(p, m.dim)
    i_n = FpMatrix.identity(p, n.dim)
    for i in range(m.algebra.dim):
        # vec is row-major: vec(A H) = kron(A, I) vec(H), vec(H B) = kron(I, B^T) vec(H)
        blocks.append(kron(n.action[i], im) - kron(i_n, m.action[i].transpose()))
    system = vstack(blocks)
    basis = kernel_basis(system)
    maps = []
    for k in range(basis.cols):
        h = basis.array()[:, k].reshape(n.dim, m.dim)
        maps.append(ModuleMap(m, n, FpMatrix(p, h)))
    _HOM_CACHE[key] = maps
    return maps


def hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    return len(hom_space(m, n))


def coordinates_in_hom_basis(basis: Sequence[ModuleMap], matrix: FpMatrix) -> Optional[FpMatrix]:
    """Coordinates of a map in a hom-space basis, or None if outside the span."""
    if not basis:
        return None if not matrix.is_zero() else FpMatrix.zeros(matrix.p, 0, 1)
    p = matrix.p
    stacked = hstack([FpMatrix(p, b.matrix.array().reshape(-1, 1)) for b in basis])
    vec = FpMatrix(p, matrix.array().reshape(-1, 1))
    return solve(stacked, vec)


# -- sums, subs, quotients --------------------------------------------------


class DirectSum(NamedTuple):
    module: ModuleRep
    injections: list[ModuleMap]
    projections: list[ModuleMap]


def direct_sum(
    summands: Sequence[ModuleRep],
    algebra: Optional[FDAlgebra] = None,
    side: str = LEFT,
) -> DirectSum:
    """Block-diagonal direct sum with its injections and projections."""
    if not summands:
        if algebra is None:
            raise ValueError("empty direct sum needs an explicit algebra")
        return DirectSum(zero_module(algebra, side), [], [])
    first = summands[0]
    for m in summands[1:]:
        _require_compatible(first, m)
    alg = first.algebra
    p = alg.p
    total = sum(m.dim for m in summands)
    action = [
        block_diag([m.action[i] for m in summands], p=p) for i in range(alg.dim)
    ]
    label = "(" + "+".join(m.label or "?" for m in summands) + ")"
    module = ModuleRep(alg, first.side, total, action, label=label)
    injections, projections = [], []
    offset = 0
    for m in summands:
        inj = np.zeros((total, m.dim), dtype=np.int64)
        inj[offset : offset + m.dim, :] = np.eye(m.dim, dtype=np.int64)
        injections.append(ModuleMap(m, module, FpMatrix(p, inj)))
        projections.append(ModuleMap(module, m, FpMatrix(p, inj.T)))
        offset += m.dim
    return DirectSum(module, injections, projections)


def submodule(m: ModuleRep, basis_cols: FpMatrix, label: str = "") -> tuple[ModuleRep, ModuleMap]:
    """Submodule on an invariant column span, with its inclusion.

    The columns must be linearly independent and the span invariant
    under every action matrix; otherwise ValueError.
    """
    if rank(basis_cols) != basis_cols.cols:
        raise ValueError("submodule basis columns must be independent")
    action = []
    for i in range(m.algebra.dim):
        moved = m.action[i] @ basis_cols
        coords = solve(basis_cols, moved)
        if coords is None:
            raise ValueError(f"span is not invariant under basis element {i}")
        action.append(coords)
    sub = ModuleRep(m.algebra, m.side, basis_cols.cols, action, label=label)
    return sub, ModuleMap(sub, m, basis_cols)


def quotient_module(m: ModuleRep, sub_cols: FpMatrix, label: str = "") -> tuple[ModuleRep, ModuleMap]:
    """Quotient by an invariant column span, with its projection."""
    proj, sect = quotient_space(m.p, m.dim, sub_cols)
    action = []
    for i in range(m.algebra.dim):
        if sub_cols.cols and not (proj @ (m.action[i] @ sub_cols)).is_zero():
            raise ValueError(f"span is not invariant under basis element {i}")
        action.append(proj @ m.action[i] @ sect)
    quot = ModuleRep(m.algebra, m.side, proj.rows, action, label=label)
    return quot, ModuleMap(m, quot, proj)


class ImageKernelCokernel(NamedTuple):
    image: ModuleRep
    image_inclusion: ModuleMap
    kernel: ModuleRep
    kernel_inclusion: ModuleMap
    cokernel: ModuleRep
    cokernel_projection: ModuleMap


def image_kernel_cokernel(f: ModuleMap) -> ImageKernelCokernel:
    ker_cols = kernel_basis(f.matrix)
    kernel, ker_inc = submodule(f.source, ker_cols, label=f"ker")
    img_cols = column_space_basis(f.matrix)
    image, img_inc = submodule(f.target, img_cols, label=f"im")
    cokernel, coker_proj = quotient_module(f.target, img_cols, label=f"coker")
    return ImageKernelCokernel(image, img_inc, kernel, ker_inc, cokernel, coker_proj)


# -- tensor products --------------------------------------------------------


def balancing_generators(x_right: ModuleRep, a_left: ModuleRep) -> FpMatrix:
    """Columns spanning the balancing subspace of the full tensor space.

    Basis of the full space is x-major lexicographic (index =
    x_index * dim A + a_index); the generators are
    (x e)⊗a - x⊗(e a) over all basis triples.
    """
    if x_right.algebra != a_left.algebra or x_right.side != RIGHT or a_left.side != LEFT:
        raise AlgebraMismatch("balanced tensor needs a right and a left module over one algebra")
    p = x_right.p
    dx, da = x_right.dim, a_left.dim
    full = dx * da
    gens = []
    for e in range(x_right.algebra.dim):
        xr = x_right.action[e].array()
        al = a_left.action[e].array()
        for i in range(dx):
            for j in range(da):
                g = np.zeros(full, dtype=np.int64)
                for l in range(dx):
                    if xr[l, i]:
                        g[l * da + j] += xr[l, i]
                for mrow in range(da):
                    if al[mrow, j]:
                        g[i * da + mrow] -= al[mrow, j]
                gens.append(g % p)
    return FpMatrix(p, np.stack(gens, axis=1)) if gens else FpMatrix.zeros(p, full, 0)


def balanced_tensor(x_right: ModuleRep, a_left: ModuleRep) -> tuple[FpMatrix, FpMatrix]:
    """Projection and section for X (x)_A M as a plain F_p-space."""
    sub = balancing_generators(x_right, a_left)
    return quotient_space(x_right.p, x_right.dim * a_left.dim, sub)


class TensorModule(NamedTuple):
    module: ModuleRep
    projection: FpMatrix
    section: FpMatrix


def bimodule_as_left_module(u: Bimodule) -> ModuleRep:
    return ModuleRep(u.s_algebra, LEFT, u.dim, u.left_action, label=f"{u.label or 'U'}_S")


def bimodule_as_right_module(u: Bimodule) -> ModuleRep:
    return ModuleRep(u.r_algebra, RIGHT, u.dim, u.right_action, label=f"{u.label or 'U'}_R")


_TENSOR_CACHE: dict = {}


def tensor_over(u: Bimodule, a: ModuleRep) -> TensorModule:
    """U (x)_R A as a left S-module, with the canonical projection.

    The full tensor space has basis u_i (x) a_j in u-major lexicographic
    order (index = i * dim A + j); the module is its quotient by the
    balancing subspace, with the S-action induced from s.(u (x) a) =
    (s u) (x) a.  Memoized.
    """
    key = (u, a)
    cached = _TENSOR_CACHE.get(key)
    if cached is not None:
        return cached
    if a.algebra != u.r_algebra or a.side != LEFT:
        raise AlgebraMismatch("tensor_over expects a left module over the bimodule's right algebra")
    proj, sect = balanced_tensor(bimodule_as_right_module(u), a)
    p = u.p
    ia = FpMatrix.identity(p, a.dim)
    action = [proj @ kron(u.left_action[i], ia) @ sect for i in range(u.s_algebra.dim)]
    module = ModuleRep(u.s_algebra, LEFT, proj.rows, action, label=f"U*{a.label or '?'}")
    result = TensorModule(module, proj, sect)
    _TENSOR_CACHE[key] = result
    return result


def tensor_map(u: Bimodule, f: ModuleMap) -> ModuleMap:
    """The induced map U (x) f between the tensor quotients."""
    src = tensor_over(u, f.source)
    tgt = tensor_over(u, f.target)
    iu = FpMatrix.identity(u.p, u.dim)
    mat = tgt.projection @ kron(iu, f.matrix) @ src.section
    return ModuleMap(src.module, tgt.module, mat)


# -- trace, Gen, isomorphism -------------------------------------------------


def trace_of(generators: Sequence[ModuleRep], m: ModuleRep) -> tuple[ModuleRep, ModuleMap]:
    """Largest submodule of m generated by the given modules.

    Computed as the span of the images of a hom-space basis from each
    generator; the span of basis images equals the sum of all images.
    """
    cols = [FpMatrix.zeros(m.p, m.dim, 0)]
    for g in generators:
        _require_compatible(g, m)
        for h in hom_space(g, m):
            cols.append(h.matrix)
    span = column_space_basis(hstack(cols))
    return submodule(m, span, label=f"trace")


_GEN_CACHE: dict = {}


def gen_member(t: ModuleRep, x: ModuleRep) -> bool:
    """x lies in Gen(t): some power of t maps onto x (decided via trace)."""
    key = (t, x)
    cached = _GEN_CACHE.get(key)
    if cached is None:
        sub, _ = trace_of([t], x)
        cached = sub.dim == x.dim
        _GEN_CACHE[key] = cached
    return cached


def gen_member_epi_oracle(t: ModuleRep, x: ModuleRep, cap: int = 16) -> bool:
    """Brute-force surjection search t^j -> x for j <= dim x."""
    _require_compatible(t, x)
    if x.dim == 0:
        return True
    for j in range(1, x.dim + 1):
        power = direct_sum([t] * j, algebra=t.algebra, side=t.side).module
        basis = hom_space(power, x)
        if len(basis) > cap:
            raise IsoSearchCapExceeded(f"hom space dimension {len(basis)} exceeds cap {cap}")
        for coeffs in enumerate_vectors(t.p, len(basis)):
            mat = FpMatrix.zeros(t.p, x.dim, power.dim)
            for c, b in zip(coeffs, basis):
                if c:
                    mat = mat + b.matrix.scale(c)
            if rank(mat) == x.dim:
                return True
    return False


class IsoResult(NamedTuple):
    isomorphic: bool
    witness: Optional[ModuleMap]


_ISO_CACHE: dict = {}


def is_isomorphic(m: ModuleRep, n: ModuleRep, cap: int = 16) -> IsoResult:
    """Exhaustive search for an invertible intertwiner.

    Searches all p^h combinations of a Hom-space basis (h = dim Hom);
    raises IsoSearchCapExceeded when h > cap rather than guessing.
    Memoized per (source, target, cap).
    """
    key = (m, n, cap)
    cached = _ISO_CACHE.get(key)
    if cached is not None:
        return cached
    result = _is_isomorphic_uncached(m, n, cap)
    _ISO_CACHE[key] = result
    return result


def _is_isomorphic_uncached(m: ModuleRep, n: ModuleRep, cap: int) -> IsoResult:
    _require_compatible(m, n)
    if m.dim != n.dim:
        return IsoResult(False, None)
    if m.dim == 0:
        return IsoResult(True, ModuleMap(m, n, FpMatrix.zeros(m.p, 0, 0)))
    basis = hom_space(m, n)
    h = len(basis)
    if h == 0:
        return IsoResult(False, None)
    if h > cap:
        raise IsoSearchCapExceeded(f"hom space dimension {h} exceeds cap {cap}")
    for coeffs in enumerate_vectors(m.p, h):
        mat = FpMatrix.zeros(m.p, n.dim, m.dim)
        for c, b in zip(coeffs, basis):
            if c:
                mat = mat + b.matrix.scale(c)
        if rank(mat) == m.dim:
            return IsoResult(True, ModuleMap(m, n, mat))
    return IsoResult(False, None)


# -- extensions --------------------------------------------------------------


class ExtensionResult(NamedTuple):
    middle_terms: list[ModuleRep]
    truncated: bool


def extension_middle_terms(m: ModuleRep, n: ModuleRep, cap: int = 64) -> ExtensionResult:
    """Middle terms E of extensions 0 -> n -> E -> m -> 0, up to isomorphism.

    Solves for the cocycle blocks c(e) making
    [[rho_n(e), c(e)], [0, rho_m(e)]] a module structure, quotients by
    coboundaries, and realizes one E per class (split class first).
    The list of enumerated classes is capped; ``truncated`` reports
    whether classes were dropped.
    """
    _require_compatible(m, n)
    alg = m.algebra
    p = m.p
    d = alg.dim
    block = n.dim * m.dim
    if block == 0:
        return ExtensionResult([direct_sum([n, m], algebra=alg, side=m.side).module], False)

    def unpack(vec: np.ndarray) -> list[np.ndarray]:
        return [vec[i * block : (i + 1) * block].reshape(n.dim, m.dim) for i in range(d)]

    def residual(vec_mat: FpMatrix) -> FpMatrix:
        cs = unpack(vec_mat.array()[:, 0])
        rows = []
        for i in range(d):
            for j in range(d):
                coeffs = alg.mul[i, j, :] if m.side == LEFT else alg.mul[j, i, :]
                lhs = (n.action[i].array() @ cs[j] + cs[i] @ m.action[j].array()) % p
                rhs = sum(int(c) * cs[k] for k, c in enumerate(coeffs) if c % p)
                rhs = rhs % p if isinstance(rhs, np.ndarray) else np.zeros((n.dim, m.dim), dtype=np.int64)
                rows.append((lhs - rhs).reshape(-1))
        unit = sum(int(c) * cs[k] for k, c in enumerate(alg.unit) if c % p)
        unit = unit % p if isinstance(unit, np.ndarray) else np.zeros((n.dim, m.dim), dtype=np.int64)
        rows.append(unit.reshape(-1))
        return FpMatrix(p, np.concatenate(rows).reshape(-1, 1))

    probe_rows = (d * d + 1) * block
    system = matrix_of_linear_map(p, d * block, probe_rows, residual)
    cocycles = kernel_basis(system)

    # coboundaries of arbitrary linear maps h: m -> n
    cob_cols = []
    for r in range(n.dim):
        for c in range(m.dim):
            h = np.zeros((n.dim, m.dim), dtype=np.int64)
            h[r, c] = 1
            vec = np.concatenate(
                [
                    ((n.action[i].array() @ h - h @ m.action[i].array()) % p).reshape(-1)
                    for i in range(d)
                ]
            )
            cob_cols.append(vec)
    cob = FpMatrix(p, np.stack(cob_cols, axis=1))
    if cocycles.cols == 0:
        assert cob.is_zero(), "coboundaries must be cocycles"
        cob_in_z = FpMatrix.zeros(p, 0, cob.cols)
    else:
        cob_in_z = solve(cocycles, cob)
        assert cob_in_z is not None, "coboundaries must be cocycles"
    proj, sect = quotient_space(p, cocycles.cols, cob_in_z)

    total = p ** proj.rows
    limit = min(total, cap)
    truncated = total > cap
    terms: list[ModuleRep] = []
    for idx, coeffs in enumerate(enumerate_vectors(p, proj.rows)):
        if idx >= limit:
            break
        rep = sect @ FpMatrix.column(p, list(coeffs))
        cvec = (cocycles @ rep).array()[:, 0] if cocycles.cols else np.zeros(d * block, dtype=np.int64)
        cs = unpack(cvec)
        action = []
        for i in range(d):
            top = np.concatenate([n.action[i].array(), cs[i]], axis=1)
            bottom = np.concatenate(
                [np.zeros((m.dim, n.dim), dtype=np.int64), m.action[i].array()], axis=1
            )
            action.append(FpMatrix(p, np.concatenate([top, bottom], axis=0)))
        e = ModuleRep(alg, m.side, n.dim + m.dim, action, label=f"ext({m.label},{n.label})")
        try:
            seen_before = any(is_isomorphic(e, seen).isomorphic for seen in terms)
        except IsoSearchCapExceeded:
            # too large to deduplicate; keep the (correct) middle term
            seen_before = False
        if not seen_before:
            terms.append(e)
    return ExtensionResult(terms, truncated)


# -- Hom_S(U, B) as a left R-module -----------------------------------------


class HomModule(NamedTuple):
    module: ModuleRep
    basis: list[ModuleMap]


_HOM_MODULE_CACHE: dict = {}


def hom_module(u: Bimodule, b: ModuleRep) -> HomModule:
    """Hom_S(U, B) as a left R-module via (r.f)(u) = f(u r).  Memoized."""
    key = (u, b)
    cached = _HOM_MODULE_CACHE.get(key)
    if cached is not None:
        return cached
    if b.algebra != u.s_algebra or b.side != LEFT:
        raise AlgebraMismatch("hom_module expects a left module over the bimodule's left algebra")
    basis = hom_space(bimodule_as_left_module(u), b)
    p = u.p
    h = len(basis)
    r_alg = u.r_algebra
    if h == 0:
        result = HomModule(zero_module(r_alg, LEFT).relabel(f"Hom(U,{b.label})"), [])
        _HOM_MODULE_CACHE[key] = result
        return result
    stacked = hstack([FpMatrix(p, f.matrix.array().reshape(-1, 1)) for f in basis])
    action = []
    for i in range(r_alg.dim):
        ra = u.right_action[i]
        cols = []
        for f in basis:
            moved = FpMatrix(p, (f.matrix @ ra).array().reshape(-1, 1))
            coords = solve(stacked, moved)
            assert coords is not None, "hom space must be closed under the right action"
            cols.append(coords)
        action.append(hstack(cols))
    module = ModuleRep(r_alg, LEFT, h, action, label=f"Hom(U,{b.label})")
    result = HomModule(module, basis)
    _HOM_MODULE_CACHE[key] = result
    return result
