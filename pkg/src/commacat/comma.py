"""Comma-category objects for the triangular matrix ring, and their calculus.

A comma object is a triple (A, B, phi) with A a left R-module, B a left
S-module and phi an S-linear map U (x)_R A -> B.  The matrix of phi is
stored on the full tensor space k^(dim U * dim A) in u-major
lexicographic order (column index = u_index * dim A + a_index); vanishing
on the balancing subspace is a validation invariant, so documents stay
basis-free.

Comma objects correspond to left modules over T = [[R, 0], [U, S]]:
(r, u, s) acts on (a, b) by (r a, phi(u (x) a) + s b).  Both directions
of that correspondence are implemented, and every Hom computation can be
cross-checked through it.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

import numpy as np

from .algebra import Bimodule, TriangularAlgebra, triangular_algebra
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
from .modules import (
    LEFT,
    RIGHT,
    AlgebraMismatch,
    HomModule,
    IsoSearchCapExceeded,
    ModuleMap,
    ModuleRep,
    balancing_generators,
    balanced_tensor,
    direct_sum,
    hom_module,
    hom_space,
    image_kernel_cokernel,
    is_isomorphic,
    quotient_module,
    regular_module,
    tensor_map,
    tensor_over,
    zero_module,
)
from .presentations import Presentation

_TRIANGULAR_CACHE: dict[Bimodule, TriangularAlgebra] = {}


def triangular_for(u: Bimodule) -> TriangularAlgebra:
    t = _TRIANGULAR_CACHE.get(u)
    if t is None:
        t = triangular_algebra(u.r_algebra, u.s_algebra, u)
        _TRIANGULAR_CACHE[u] = t
    return t


class CommaObject:
    """Triple (A, B, phi) with phi stored on the full u-major tensor space."""

    __slots__ = ("bimodule", "A", "B", "phi", "label", "_hash")

    def __init__(
        self, bimodule: Bimodule, a: ModuleRep, b: ModuleRep, phi: FpMatrix, label: str = ""
    ) -> None:
        if a.algebra != bimodule.r_algebra or a.side != LEFT:
            raise AlgebraMismatch("A component must be a left module over R")
        if b.algebra != bimodule.s_algebra or b.side != LEFT:
            raise AlgebraMismatch("B component must be a left module over S")
        if phi.rows != b.dim or phi.cols != bimodule.dim * a.dim:
            raise ValueError(
                f"phi must be {b.dim} x {bimodule.dim * a.dim}, got {phi.rows} x {phi.cols}"
            )
        self.bimodule = bimodule
        self.A = a
        self.B = b
        self.phi = phi
        self.label = label
        self._hash = None

    @property
    def p(self) -> int:
        return self.bimodule.p

    @property
    def total_dim(self) -> int:
        return self.A.dim + self.B.dim

    def relabel(self, label: str) -> "CommaObject":
        return CommaObject(self.bimodule, self.A, self.B, self.phi, label)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CommaObject)
            and self.bimodule == other.bimodule
            and self.A == other.A
            and self.B == other.B
            and self.phi == other.phi
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.bimodule, self.A, self.B, self.phi))
        return self._hash

    def __repr__(self) -> str:
        return f"<comma {self.label or '?'}: A dim {self.A.dim}, B dim {self.B.dim}>"


def validate_comma(c: CommaObject) -> list[dict]:
    """Balance and S-linearity violations of phi (plus component validity)."""
    from .modules import validate_module

    violations = []
    for name, comp in (("A", c.A), ("B", c.B)):
        for v in validate_module(comp):
            violations.append({"kind": f"component-{name}", "detail": v})
    u = c.bimodule
    from .modules import bimodule_as_right_module

    gens = balancing_generators(bimodule_as_right_module(u), c.A)
    if gens.cols and not (c.phi @ gens).is_zero():
        bad = [j for j in range(gens.cols) if not (c.phi @ gens.column_vector(j)).is_zero()]
        violations.append({"kind": "phi-balance", "relations": bad})
    ia = FpMatrix.identity(c.p, c.A.dim)
    for i in range(u.s_algebra.dim):
        if c.phi @ kron(u.left_action[i], ia) != c.B.action[i] @ c.phi:
            violations.append({"kind": "phi-linearity", "basis": i})
    return violations


class CommaMap:
    """Pair (f, g) making the square with U (x) f commute."""

    __slots__ = ("source", "target", "f", "g")

    def __init__(self, source: CommaObject, target: CommaObject, f: ModuleMap, g: ModuleMap) -> None:
        self.source = source
        self.target = target
        self.f = f
        self.g = g

    def is_valid(self) -> bool:
        iu = FpMatrix.identity(self.source.p, self.source.bimodule.dim)
        square = self.g.matrix @ self.source.phi == self.target.phi @ kron(iu, self.f.matrix)
        return square and self.f.is_valid() and self.g.is_valid()


def comma_zero(u: Bimodule) -> CommaObject:
    zr = zero_module(u.r_algebra, LEFT)
    zs = zero_module(u.s_algebra, LEFT)
    return CommaObject(u, zr, zs, FpMatrix.zeros(u.p, 0, 0), label="0")


def comma_from_components(
    u: Bimodule, a: Optional[ModuleRep] = None, b: Optional[ModuleRep] = None, label: str = ""
) -> CommaObject:
    """Comma object with zero phi; either component may be omitted (zero)."""
    a = a if a is not None else zero_module(u.r_algebra, LEFT)
    b = b if b is not None else zero_module(u.s_algebra, LEFT)
    return CommaObject(u, a, b, FpMatrix.zeros(u.p, b.dim, u.dim * a.dim), label=label)


def canonical_tensor_comma(u: Bimodule, a: ModuleRep, label: str = "") -> CommaObject:
    """The object (A, U (x) A) with phi the canonical projection."""
    tensor = tensor_over(u, a)
    return CommaObject(u, a, tensor.module, tensor.projection, label=label or f"({a.label},F{a.label})")


# -- the three functors ------------------------------------------------------


def functor_p(u: Bimodule, a: ModuleRep, b: ModuleRep, label: str = "") -> CommaObject:
    """p(A, B) = (A, FA + B) with phi the inclusion of FA."""
    tensor = tensor_over(u, a)
    bsum = direct_sum([tensor.module, b], algebra=u.s_algebra, side=LEFT)
    phi = vstack([tensor.projection, FpMatrix.zeros(u.p, b.dim, tensor.projection.cols)])
    return CommaObject(u, a, bsum.module, phi, label=label or f"p({a.label},{b.label})")


def functor_p_map(u: Bimodule, f: ModuleMap, g: ModuleMap) -> CommaMap:
    """p on morphisms: (f, Ff + g)."""
    src = functor_p(u, f.source, g.source)
    tgt = functor_p(u, f.target, g.target)
    ff = tensor_map(u, f)
    gmat = block_diag([ff.matrix, g.matrix])
    gmap = ModuleMap(src.B, tgt.B, gmat)
    return CommaMap(src, tgt, ModuleMap(src.A, tgt.A, f.matrix), gmap)


def functor_q(c: CommaObject) -> tuple[ModuleRep, ModuleRep]:
    """q(A, B) = (A, B): forget phi."""
    return c.A, c.B


def functor_q_map(m: CommaMap) -> tuple[ModuleMap, ModuleMap]:
    return m.f, m.g


def functor_h(u: Bimodule, a: ModuleRep, b: ModuleRep, label: str = "") -> CommaObject:
    """h(A, B) = (A + Hom_S(U, B), B) with phi the evaluation on the Hom part."""
    hm = hom_module(u, b)
    asum = direct_sum([a, hm.module], algebra=u.r_algebra, side=LEFT)
    da = asum.module.dim
    du = u.dim
    phi = np.zeros((b.dim, du * da), dtype=np.int64)
    for i in range(du):
        for l, hbasis in enumerate(hm.basis):
            phi[:, i * da + (a.dim + l)] = hbasis.matrix.array()[:, i]
    return CommaObject(
        u, asum.module, b, FpMatrix(u.p, phi), label=label or f"h({a.label},{b.label})"
    )


def functor_h_map(u: Bimodule, f: ModuleMap, g: ModuleMap) -> CommaMap:
    """h on morphisms: (f + Hom(U, g), g)."""
    src = functor_h(u, f.source, g.source)
    tgt = functor_h(u, f.target, g.target)
    hm_src = hom_module(u, g.source)
    hm_tgt = hom_module(u, g.target)
    p = u.p
    if hm_tgt.basis:
        stacked = hstack([FpMatrix(p, h.matrix.array().reshape(-1, 1)) for h in hm_tgt.basis])
    cols = []
    for h in hm_src.basis:
        moved = FpMatrix(p, (g.matrix @ h.matrix).array().reshape(-1, 1))
        coords = solve(stacked, moved) if hm_tgt.basis else FpMatrix.zeros(p, 0, 1)
        assert coords is not None, "composition must stay S-linear"
        cols.append(coords)
    hom_part = hstack(cols) if cols else FpMatrix.zeros(p, hm_tgt.module.dim, 0)
    fmat = block_diag([f.matrix, hom_part])
    return CommaMap(src, tgt, ModuleMap(src.A, tgt.A, fmat), ModuleMap(src.B, tgt.B, g.matrix))


# -- adjunction unit / counit -------------------------------------------------


def p_counit(c: CommaObject) -> CommaMap:
    """The counit p(q(C)) -> C of the p -| q adjunction."""
    u = c.bimodule
    src = functor_p(u, c.A, c.B)
    tensor = tensor_over(u, c.A)
    descended = c.phi @ tensor.section
    g = hstack([descended, FpMatrix.identity(c.p, c.B.dim)])
    return CommaMap(src, c, ModuleMap(src.A, c.A, FpMatrix.identity(c.p, c.A.dim)), ModuleMap(src.B, c.B, g))


def h_unit(c: CommaObject) -> CommaMap:
    """The unit C -> h(q(C)) of the q -| h adjunction."""
    u = c.bimodule
    tgt = functor_h(u, c.A, c.B)
    tp = tilde_phi(c)
    fmat = vstack([FpMatrix.identity(c.p, c.A.dim), tp.map.matrix])
    return CommaMap(c, tgt, ModuleMap(c.A, tgt.A, fmat), ModuleMap(c.B, tgt.B, FpMatrix.identity(c.p, c.B.dim)))


# -- the T-module correspondence ----------------------------------------------


_TO_T_CACHE: dict = {}


def to_T_module(c: CommaObject, t: Optional[TriangularAlgebra] = None) -> ModuleRep:
    """The left T-module on A + B with (r, u, s).(a, b) = (ra, phi(u (x) a) + sb)."""
    t = t or triangular_for(c.bimodule)
    key = (c, t)
    cached = _TO_T_CACHE.get(key)
    if cached is not None:
        return cached
    bad = validate_comma(c)
    if bad:
        raise ValueError(f"invalid comma object: {bad[0]}")
    u = c.bimodule
    da, db = c.A.dim, c.B.dim
    p = c.p
    action = []
    for i in range(t.r.dim):
        action.append(block_diag([c.A.action[i], FpMatrix.zeros(p, db, db)], p=p))
    for j in range(u.dim):
        mat = np.zeros((da + db, da + db), dtype=np.int64)
        mat[da:, :da] = c.phi.array()[:, j * da : (j + 1) * da] if da else np.zeros((db, 0))
        action.append(FpMatrix(p, mat))
    for k in range(t.s.dim):
        action.append(block_diag([FpMatrix.zeros(p, da, da), c.B.action[k]], p=p))
    result = ModuleRep(t, LEFT, da + db, action, label=c.label or "T-module")
    _TO_T_CACHE[key] = result
    return result


class FromTResult(NamedTuple):
    comma: CommaObject
    witness: ModuleMap  # isomorphism m -> to_T_module(comma)


_FROM_T_CACHE: dict = {}


def from_T_module(m: ModuleRep, t: TriangularAlgebra) -> FromTResult:
    """Slice a left T-module along the block idempotents into a comma object."""
    key = (m, t)
    cached = _FROM_T_CACHE.get(key)
    if cached is not None:
        return cached
    if m.algebra != t or m.side != LEFT:
        raise AlgebraMismatch("expected a left module over the triangular algebra")
    p = m.p
    er = m.act(t.idempotent_r())
    es = m.act(t.idempotent_s())
    a_cols = column_space_basis(er)
    b_cols = column_space_basis(es)
    dr, du = t.r.dim, t.u.dim

    def restrict(cols: FpMatrix, global_idx: int) -> FpMatrix:
        moved = m.action[global_idx] @ cols
        coords = solve(cols, moved)
        assert coords is not None, "idempotent slice must be invariant"
        return coords

    a_action = [restrict(a_cols, i) for i in range(dr)]
    b_action = [restrict(b_cols, dr + du + k) for k in range(t.s.dim)]
    a_mod = ModuleRep(t.r, LEFT, a_cols.cols, a_action, label=f"{m.label}|R")
    b_mod = ModuleRep(t.s, LEFT, b_cols.cols, b_action, label=f"{m.label}|S")
    da = a_mod.dim
    phi = np.zeros((b_mod.dim, du * da), dtype=np.int64)
    for j in range(du):
        moved = m.action[dr + j] @ a_cols
        coords = solve(b_cols, moved)
        assert coords is not None, "U-action must land in the S-slice"
        phi[:, j * da : (j + 1) * da] = coords.array()
    comma = CommaObject(t.u, a_mod, b_mod, FpMatrix(p, phi), label=m.label)
    wit_rows = []
    if a_cols.cols:
        ca = solve(a_cols, er)
        assert ca is not None
        wit_rows.append(ca)
    if b_cols.cols:
        cb = solve(b_cols, es)
        assert cb is not None
        wit_rows.append(cb)
    witness_mat = vstack(wit_rows) if wit_rows else FpMatrix.zeros(p, 0, m.dim)
    witness = ModuleMap(m, to_T_module(comma, t), witness_mat)
    result = FromTResult(comma, witness)
    _FROM_T_CACHE[key] = result
    return result


def right_t_regular(t: TriangularAlgebra) -> ModuleRep:
    return regular_module(t, RIGHT)


class RightTModule:
    """Right T-module as a triple (X, Y, psi: Y (x)_S U -> X).

    psi is stored on the full tensor space in y-major order (column
    index = y_index * dim U + u_index).
    """

    __slots__ = ("bimodule", "X", "Y", "psi", "label")

    def __init__(
        self, bimodule: Bimodule, x: ModuleRep, y: ModuleRep, psi: FpMatrix, label: str = ""
    ) -> None:
        if x.algebra != bimodule.r_algebra or x.side != RIGHT:
            raise AlgebraMismatch("X component must be a right module over R")
        if y.algebra != bimodule.s_algebra or y.side != RIGHT:
            raise AlgebraMismatch("Y component must be a right module over S")
        if psi.rows != x.dim or psi.cols != y.dim * bimodule.dim:
            raise ValueError("psi must be dim X x (dim Y * dim U)")
        self.bimodule = bimodule
        self.X = x
        self.Y = y
        self.psi = psi
        self.label = label

    @property
    def p(self) -> int:
        return self.bimodule.p


def validate_right_t(rt: RightTModule) -> list[dict]:
    from .modules import bimodule_as_left_module, validate_module

    violations = []
    for name, comp in (("X", rt.X), ("Y", rt.Y)):
        for v in validate_module(comp):
            violations.append({"kind": f"component-{name}", "detail": v})
    u = rt.bimodule
    gens = balancing_generators(rt.Y, bimodule_as_left_module(u))
    if gens.cols and not (rt.psi @ gens).is_zero():
        violations.append({"kind": "psi-balance"})
    iy = FpMatrix.identity(rt.p, rt.Y.dim)
    for i in range(u.r_algebra.dim):
        if rt.psi @ kron(iy, u.right_action[i]) != rt.X.action[i] @ rt.psi:
            violations.append({"kind": "psi-linearity", "basis": i})
    return violations


def right_t_to_module(rt: RightTModule, t: Optional[TriangularAlgebra] = None) -> ModuleRep:
    """The right T-module on X + Y with (x, y).(r, u, s) = (xr + psi(y (x) u), ys)."""
    bad = validate_right_t(rt)
    if bad:
        raise ValueError(f"invalid right T-module: {bad[0]}")
    t = t or triangular_for(rt.bimodule)
    u = rt.bimodule
    dx, dy = rt.X.dim, rt.Y.dim
    p = rt.p
    action = []
    for i in range(t.r.dim):
        action.append(block_diag([rt.X.action[i], FpMatrix.zeros(p, dy, dy)], p=p))
    for j in range(u.dim):
        mat = np.zeros((dx + dy, dx + dy), dtype=np.int64)
        for yi in range(dy):
            mat[:dx, dx + yi] = rt.psi.array()[:, yi * u.dim + j]
        action.append(FpMatrix(p, mat))
    for k in range(t.s.dim):
        action.append(block_diag([FpMatrix.zeros(p, dx, dx), rt.Y.action[k]], p=p))
    return ModuleRep(t, RIGHT, dx + dy, action, label=rt.label or "right-T")


# -- Hom computations ----------------------------------------------------------


_HOM_COMMA_CACHE: dict = {}


def hom_comma(x: CommaObject, y: CommaObject) -> list[CommaMap]:
    """Basis of the morphism space: joint intertwining plus the square.

    Memoized; callers must not mutate the returned list.
    """
    key = (x, y)
    cached = _HOM_COMMA_CACHE.get(key)
    if cached is not None:
        return cached
    if x.bimodule != y.bimodule:
        raise AlgebraMismatch("comma objects over different data")
    p = x.p
    nf = y.A.dim * x.A.dim
    ng = y.B.dim * x.B.dim
    iu = FpMatrix.identity(p, x.bimodule.dim)

    def unpack(vec: np.ndarray) -> tuple[FpMatrix, FpMatrix]:
        f = FpMatrix(p, vec[:nf].reshape(y.A.dim, x.A.dim))
        g = FpMatrix(p, vec[nf:].reshape(y.B.dim, x.B.dim))
        return f, g

    def residual(col: FpMatrix) -> FpMatrix:
        f, g = unpack(col.array()[:, 0])
        rows = []
        for i in range(x.A.algebra.dim):
            rows.append((y.A.action[i] @ f - f @ x.A.action[i]).array().reshape(-1))
        for i in range(x.B.algebra.dim):
            rows.append((y.B.action[i] @ g - g @ x.B.action[i]).array().reshape(-1))
        rows.append((g @ x.phi - y.phi @ kron(iu, f)).array().reshape(-1))
        flat = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        return FpMatrix(p, flat.reshape(-1, 1))

    total_rows = (
        x.A.algebra.dim * y.A.dim * x.A.dim
        + x.B.algebra.dim * y.B.dim * x.B.dim
        + y.B.dim * x.bimodule.dim * x.A.dim
    )
    system = matrix_of_linear_map(p, nf + ng, total_rows, residual)
    basis = kernel_basis(system)
    maps = []
    for k in range(basis.cols):
        f, g = unpack(basis.array()[:, k])
        maps.append(CommaMap(x, y, ModuleMap(x.A, y.A, f), ModuleMap(x.B, y.B, g)))
    _HOM_COMMA_CACHE[key] = maps
    return maps


def hom_comma_dim(x: CommaObject, y: CommaObject) -> int:
    return len(hom_comma(x, y))


def comma_is_isomorphic(x: CommaObject, y: CommaObject, cap: int = 16):
    """Exhaustive search for a comma isomorphism (both components invertible)."""
    from .modules import IsoResult

    if x.A.dim != y.A.dim or x.B.dim != y.B.dim:
        return (False, None)
    basis = hom_comma(x, y)
    h = len(basis)
    if x.total_dim == 0:
        return (True, basis)
    if h == 0:
        return (False, None)
    if h > cap:
        raise IsoSearchCapExceeded(f"comma hom dimension {h} exceeds cap {cap}")
    p = x.p
    for coeffs in enumerate_vectors(p, h):
        f = FpMatrix.zeros(p, y.A.dim, x.A.dim)
        g = FpMatrix.zeros(p, y.B.dim, x.B.dim)
        for c, b in zip(coeffs, basis):
            if c:
                f = f + b.f.matrix.scale(c)
                g = g + b.g.matrix.scale(c)
        if rank(f) == x.A.dim and rank(g) == x.B.dim:
            return (True, CommaMap(x, y, ModuleMap(x.A, y.A, f), ModuleMap(x.B, y.B, g)))
    return (False, None)


# -- the adjunct map and shape tests ------------------------------------------


class TildePhi(NamedTuple):
    map: ModuleMap  # A -> Hom_S(U, B) as left R-modules
    hom: HomModule


def tilde_phi(c: CommaObject) -> TildePhi:
    """The adjunct of phi: tilde_phi(a)(u) = phi(u (x) a)."""
    u = c.bimodule
    hm = hom_module(u, c.B)
    p = c.p
    da = c.A.dim
    if not hm.basis:
        return TildePhi(ModuleMap(c.A, hm.module, FpMatrix.zeros(p, 0, da)), hm)
    stacked = hstack([FpMatrix(p, f.matrix.array().reshape(-1, 1)) for f in hm.basis])
    cols = []
    for j in range(da):
        fj = np.zeros((c.B.dim, u.dim), dtype=np.int64)
        for i in range(u.dim):
            fj[:, i] = c.phi.array()[:, i * da + j]
        coords = solve(stacked, FpMatrix(p, fj.reshape(-1, 1)))
        assert coords is not None, "phi components must be S-linear"
        cols.append(coords)
    mat = hstack(cols) if cols else FpMatrix.zeros(p, hm.module.dim, 0)
    return TildePhi(ModuleMap(c.A, hm.module, mat), hm)


def phi_descends_to_iso(c: CommaObject) -> bool:
    """True when phi induces an isomorphism U (x)_R A -> B."""
    q_dim = tensor_over(c.bimodule, c.A).module.dim
    return q_dim == c.B.dim and rank(c.phi) == q_dim


def psi_descends_to_iso(rt: RightTModule) -> bool:
    from .modules import bimodule_as_left_module

    proj, _ = balanced_tensor(rt.Y, bimodule_as_left_module(rt.bimodule))
    return proj.rows == rt.X.dim and rank(rt.psi) == rt.X.dim


def tilde_phi_is_epi(c: CommaObject) -> bool:
    tp = tilde_phi(c)
    return rank(tp.map.matrix) == tp.map.target.dim


# -- the five Hom formulas ------------------------------------------------------


def hom_formula_applicable(kind: int, source: CommaObject, target: CommaObject, iso_cap: int = 16) -> bool:
    if kind == 1:
        return target.B.dim == 0
    if kind == 2:
        return source.A.dim == 0
    if kind == 3:
        return phi_descends_to_iso(source)
    if kind == 4:
        tp = tilde_phi(target)
        return tp.map.target.dim == target.A.dim and rank(tp.map.matrix) == target.A.dim
    if kind == 5:
        if source.B.dim != 0:
            return False
        reg = regular_module(source.bimodule.r_algebra, LEFT)
        return is_isomorphic(source.A, reg, cap=iso_cap).isomorphic
    raise ValueError(f"kind must be 1..5, got {kind}")


def hom_formula(kind: int, source: CommaObject, target: CommaObject) -> int:
    """Predicted Hom dimension from one-sided data, per shape.

    1: target (C, 0)            -> dim Hom_R(A, C)
    2: source (0, B)            -> dim Hom_S(B, D)
    3: source (A, U (x) A)      -> dim Hom_R(A, C)
    4: target (Hom_S(U, D), D)  -> dim Hom_S(B, D)
    5: source (R, 0), R regular -> dim ker tilde_phi of the target
    """
    if not hom_formula_applicable(kind, source, target):
        raise ValueError(f"shape {kind} does not apply to this pair")
    if kind in (1, 3):
        return len(hom_space(source.A, target.A))
    if kind in (2, 4):
        return len(hom_space(source.B, target.B))
    tp = tilde_phi(target)
    return kernel_basis(tp.map.matrix).cols


# -- tensor over T ---------------------------------------------------------------


class TensorTResult(NamedTuple):
    dim: int
    projection: FpMatrix  # from (X (x) A) + (Y (x) B) onto the result
    h_generators: FpMatrix


def tensor_T(rt: RightTModule, c: CommaObject) -> TensorTResult:
    """((X (x)_R A) + (Y (x)_S B)) / H, with H spanned by
    psi(y (x) u) (x) a - y (x) phi(u (x) a) over basis triples."""
    if rt.bimodule != c.bimodule:
        raise AlgebraMismatch("mismatched triangular data")
    p = c.p
    u = c.bimodule
    px, _ = balanced_tensor(rt.X, c.A)
    py, _ = balanced_tensor(rt.Y, c.B)
    dxa, dyb = px.rows, py.rows
    da, db = c.A.dim, c.B.dim
    gens = []
    for yi in range(rt.Y.dim):
        for uj in range(u.dim):
            xvec = rt.psi.array()[:, yi * u.dim + uj]
            for am in range(da):
                v1 = np.zeros(rt.X.dim * da, dtype=np.int64)
                for xl in range(rt.X.dim):
                    v1[xl * da + am] = xvec[xl]
                bvec = c.phi.array()[:, uj * da + am]
                v2 = np.zeros(rt.Y.dim * db, dtype=np.int64)
                for bl in range(db):
                    v2[yi * db + bl] = bvec[bl]
                top = px @ FpMatrix(p, v1.reshape(-1, 1))
                bottom = py @ FpMatrix(p, v2.reshape(-1, 1))
                gens.append(np.concatenate([top.array()[:, 0], (-bottom).array()[:, 0]]) % p)
    hmat = (
        FpMatrix(p, np.stack(gens, axis=1)) if gens else FpMatrix.zeros(p, dxa + dyb, 0)
    )
    proj, _ = quotient_space(p, dxa + dyb, hmat)
    return TensorTResult(proj.rows, proj, hmat)


def tensor_T_bruteforce(rt: RightTModule, c: CommaObject) -> int:
    """Independent span computation on the full tensor spaces.

    Stacks all balancing relations of both components and all H
    generators as raw columns and takes the codimension, without going
    through the quotient-space machinery.
    """
    from .modules import bimodule_as_left_module, bimodule_as_right_module

    p = c.p
    u = c.bimodule
    da, db = c.A.dim, c.B.dim
    dx, dy = rt.X.dim, rt.Y.dim
    nxa, nyb = dx * da, dy * db
    full = nxa + nyb
    cols = []
    bx = balancing_generators(rt.X, c.A)
    for j in range(bx.cols):
        v = np.zeros(full, dtype=np.int64)
        v[:nxa] = bx.array()[:, j]
        cols.append(v)
    by = balancing_generators(rt.Y, c.B)
    for j in range(by.cols):
        v = np.zeros(full, dtype=np.int64)
        v[nxa:] = by.array()[:, j]
        cols.append(v)
    for yi in range(dy):
        for uj in range(u.dim):
            xvec = rt.psi.array()[:, yi * u.dim + uj]
            for am in range(da):
                v = np.zeros(full, dtype=np.int64)
                for xl in range(dx):
                    v[xl * da + am] += xvec[xl]
                bvec = c.phi.array()[:, uj * da + am]
                for bl in range(db):
                    v[nxa + yi * db + bl] -= bvec[bl]
                cols.append(v % p)
    if not cols:
        return full
    rel = FpMatrix(p, np.stack(cols, axis=1))
    return full - rank(rel)


def tensor_T_via_algebra(rt: RightTModule, c: CommaObject, t: Optional[TriangularAlgebra] = None) -> int:
    """Dimension of the honest balanced tensor product over the algebra T."""
    t = t or triangular_for(c.bimodule)
    proj, _ = balanced_tensor(right_t_to_module(rt, t), to_T_module(c, t))
    return proj.rows


def tensor_shape_predictions(rt: RightTModule, c: CommaObject, iso_cap: int = 16) -> list[tuple[int, int]]:
    """(shape, predicted dimension) for each special shape that applies."""
    from .modules import bimodule_as_left_module

    preds = []
    u = c.bimodule
    if rt.Y.dim == 0:
        proj, _ = balanced_tensor(rt.X, c.A)
        preds.append((1, proj.rows))
    if c.A.dim == 0:
        proj, _ = balanced_tensor(rt.Y, c.B)
        preds.append((2, proj.rows))
    if phi_descends_to_iso(c):
        proj, _ = balanced_tensor(rt.X, c.A)
        preds.append((3, proj.rows))
    if psi_descends_to_iso(rt):
        proj, _ = balanced_tensor(rt.Y, c.B)
        preds.append((4, proj.rows))
    if rt.X.dim == 0:
        reg = regular_module(u.s_algebra, RIGHT)
        if is_isomorphic(rt.Y, reg, cap=iso_cap).isomorphic:
            preds.append((5, c.B.dim - rank(c.phi)))
    return preds


# -- the families U, B, J --------------------------------------------------------


FAMILY_U = "U"
FAMILY_B = "B"
FAMILY_J = "J"


def family_membership(c: CommaObject, kind: str, cfam, dfam) -> bool:
    """Membership in the comma families built from a class of R-modules
    and a class of S-modules.

    U: A in C and B in D.
    B: phi injective on U (x) A, A in C, B / im(phi) in D.
    J: tilde_phi surjective, ker tilde_phi in C, B in D.
    """
    if kind == FAMILY_U:
        return cfam.contains(c.A) and dfam.contains(c.B)
    if kind == FAMILY_B:
        q_dim = tensor_over(c.bimodule, c.A).module.dim
        if rank(c.phi) != q_dim:
            return False
        if not cfam.contains(c.A):
            return False
        img = column_space_basis(c.phi)
        coker, _ = quotient_module(c.B, img, label="B/im(phi)")
        return dfam.contains(coker)
    if kind == FAMILY_J:
        tp = tilde_phi(c)
        if rank(tp.map.matrix) != tp.map.target.dim:
            return False
        if not dfam.contains(c.B):
            return False
        ker = image_kernel_cokernel(tp.map).kernel
        return cfam.contains(ker)
    raise ValueError(f"family kind must be one of U, B, J: {kind!r}")


# -- presentations of p(A, B) ------------------------------------------------------


def sigma_for_p(
    t: TriangularAlgebra, a: ModuleRep, sigma_a: Presentation, b: ModuleRep, sigma_b: Presentation
) -> Presentation:
    """Block-diagonal T-presentation of (0, B) + (A, FA) from component ones.

    The first block presents (0, B) through (0, Q1) -> (0, Q0); the
    second presents (A, FA) through (P1, FP1) -> (P0, FP0), using that
    the tensor functor preserves cokernels.
    """
    u = t.u
    if sigma_a.target != a or sigma_b.target != b:
        raise ValueError("presentations must present the given modules")
    tq1 = to_T_module(comma_from_components(u, b=sigma_b.sigma.source, label="(0,Q1)"), t)
    tq0 = to_T_module(comma_from_components(u, b=sigma_b.sigma.target, label="(0,Q0)"), t)
    tp1 = to_T_module(canonical_tensor_comma(u, sigma_a.sigma.source, label="(P1,FP1)"), t)
    tp0 = to_T_module(canonical_tensor_comma(u, sigma_a.sigma.target, label="(P0,FP0)"), t)
    p1 = direct_sum([tq1, tp1], algebra=t, side=LEFT)
    p0 = direct_sum([tq0, tp0], algebra=t, side=LEFT)
    f_sigma_a = tensor_map(u, sigma_a.sigma)
    sigma_mat = block_diag(
        [sigma_b.sigma.matrix, block_diag([sigma_a.sigma.matrix, f_sigma_a.matrix])]
    )
    target = direct_sum(
        [
            to_T_module(comma_from_components(u, b=b, label=f"(0,{b.label})"), t),
            to_T_module(canonical_tensor_comma(u, a, label=f"({a.label},F{a.label})"), t),
        ],
        algebra=t,
        side=LEFT,
    )
    f_witness_a = tensor_map(u, sigma_a.witness)
    witness_mat = block_diag(
        [sigma_b.witness.matrix, block_diag([sigma_a.witness.matrix, f_witness_a.matrix])]
    )
    return Presentation(
        sigma=ModuleMap(p1.module, p0.module, sigma_mat),
        target=target.module.relabel(f"(0,{b.label})+({a.label},F{a.label})"),
        witness=ModuleMap(p0.module, target.module, witness_mat),
    )


# -- universe builder ---------------------------------------------------------------


def comma_universe(
    u: Bimodule,
    r_universe: Sequence[ModuleRep],
    s_universe: Sequence[ModuleRep],
    max_total_dim: int = 4,
    iso_cap: int = 16,
) -> list[CommaObject]:
    """All comma objects over pairs from the component universes, every
    valid phi, deduplicated up to comma isomorphism.

    Deterministic order: component universes in the given order, phi
    candidates by lexicographic coefficients over the S-linear basis.
    """
    out: list[CommaObject] = []
    p = u.p
    for a in r_universe:
        for b in s_universe:
            if a.dim + b.dim > max_total_dim:
                continue
            tensor = tensor_over(u, a)
            descended = hom_space(tensor.module, b)
            for coeffs in enumerate_vectors(p, len(descended)):
                mat = FpMatrix.zeros(p, b.dim, tensor.projection.rows)
                for cf, h in zip(coeffs, descended):
                    if cf:
                        mat = mat + h.matrix.scale(cf)
                phi = mat @ tensor.projection
                cand = CommaObject(u, a, b, phi, label=f"({a.label},{b.label})#{len(out)}")
                if any(
                    cand.A.dim == seen.A.dim
                    and cand.B.dim == seen.B.dim
                    and comma_is_isomorphic(cand, seen, cap=iso_cap)[0]
                    for seen in out
                ):
                    continue
                out.append(cand)
    return out
