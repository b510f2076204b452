"""Implicit Sylvester matrices and the structured operations on them.

A SylvMat never materialises its entries: it is the pair of generator
polynomials plus the orientation.  For orientation 'y' the matrix is the
classical Sylvester matrix of (g1, g2) with respect to y, an n x n matrix
over K[x] with n = deg_y g1 + deg_y g2; its first deg_y(g2) columns are the
vectors vec_y(y^s * g1) and the remaining deg_y(g1) columns vec_y(y^s * g2),
shifts s decreasing.  Orientation 'x' exchanges the variable roles.

Throughout, the orientation variable is called "inner" (it fixes the
dimension) and the other one "outer" (matrix entries live in K[outer]).
"""

from __future__ import annotations

import numpy as np

from ._dense import SingularMatrixError, gauss_inverse
from .bipoly import BiPoly, IdealBasis, bimul, unvec, vec
from .upoly import FixedDivisor, UPoly, xgcd


class NotColumnReducedError(ValueError):
    pass


class SylvMat:
    __slots__ = ("wrt", "g1", "g2", "m1", "m2", "n", "c1", "c2", "_cache")

    def __init__(self, wrt: str, g1: BiPoly, g2: BiPoly):
        if wrt not in ("x", "y"):
            raise ValueError("orientation must be 'x' or 'y'")
        if g1.is_zero or g2.is_zero:
            raise ValueError("generators must be nonzero")
        self.wrt = wrt
        self.g1 = g1
        self.g2 = g2
        self.m1 = g1.deg(wrt)
        self.m2 = g2.deg(wrt)
        self.n = self.m1 + self.m2
        outer = self.outer
        self.c1 = g1.deg(outer)  # degree of the first m2 columns
        self.c2 = g2.deg(outer)  # degree of the last m1 columns
        self._cache = {}

    @property
    def outer(self) -> str:
        return "y" if self.wrt == "x" else "x"

    @property
    def ctx(self):
        return self.g1.ctx

    @property
    def column_degrees(self) -> list[int]:
        return [self.c1] * self.m2 + [self.c2] * self.m1

    @property
    def degree(self) -> int:
        return max(self.c1, self.c2)

    def __repr__(self):
        return f"SylvMat(wrt={self.wrt!r}, n={self.n}, coldeg=({self.c1},{self.c2}))"

    def reversed_matrix(self) -> "SylvMat":
        """Generators reversed in the outer variable at the column degrees;
        its constant matrix is this matrix's column leading matrix."""
        if "rev" not in self._cache:
            self._cache["rev"] = SylvMat(
                self.wrt, self.g1.rev(self.outer, self.c1), self.g2.rev(self.outer, self.c2)
            )
        return self._cache["rev"]

    def constant_matrix(self) -> np.ndarray:
        """S(0): the outer-variable constant coefficient, as a scalar matrix."""
        p0 = self.g1.upoly_coeff(self.outer, 0)
        q0 = self.g2.upoly_coeff(self.outer, 0)
        n = self.n
        M = np.zeros((n, n), dtype=np.int64)
        for j in range(self.m2):
            s = self.m2 - 1 - j
            for i in range(n):
                M[i, j] = p0.coeff(n - 1 - i - s)
        for j in range(self.m1):
            s = self.m1 - 1 - j
            for i in range(n):
                M[i, self.m2 + j] = q0.coeff(n - 1 - i - s)
        return M


def build_Sy(basis: IdealBasis) -> SylvMat:
    if "Sy" not in basis._cache:
        basis._cache["Sy"] = SylvMat("y", basis.a, basis.b)
    return basis._cache["Sy"]


def build_Sx(basis: IdealBasis) -> SylvMat:
    if "Sx" not in basis._cache:
        basis._cache["Sx"] = SylvMat("x", basis.a, basis.b)
    return basis._cache["Sx"]


def build_Tx(basis: IdealBasis, delta: int) -> SylvMat:
    """Sylvester matrix in x large enough to divide vectors of length delta+1.

    For delta >= n_x one generator is multiplied by x^m, m = delta - n_x + 1,
    choosing the one whose y-leading coefficient is divisible by x (b when
    neither is); the result stays column reduced.
    """
    Sx = build_Sx(basis)
    if not is_column_reduced(Sx):
        raise NotColumnReducedError("S_x is not column reduced")
    if delta < basis.nx:
        return Sx
    m = delta - basis.nx + 1
    key = ("Tx", m)
    if key not in basis._cache:
        s = basis.a.lead_coeff("y")
        if s.coeff(0) == 0:  # x | s, so x does not divide the y-lead of b
            basis._cache[key] = SylvMat("x", basis.a.mul_monomial(m, 0), basis.b)
        else:
            basis._cache[key] = SylvMat("x", basis.a, basis.b.mul_monomial(m, 0))
    return basis._cache[key]


def is_column_reduced(S: SylvMat) -> bool:
    """Leading-coefficient criterion: the outer-variable leading coefficients
    of the generators are coprime and at least one has full inner degree."""
    if "reduced" in S._cache:
        return S._cache["reduced"]
    s = S.g1.lead_coeff(S.outer)
    t = S.g2.lead_coeff(S.outer)
    ok = s.deg == S.m1 or t.deg == S.m2
    if ok:
        g, _, _ = xgcd(s, t)
        ok = g.deg == 0
    S._cache["reduced"] = ok
    return ok


def dense_form(S: SylvMat) -> list[list[UPoly]]:
    """Explicit n x n materialisation (testing/oracle bridge)."""
    n = S.n
    cols: list[list[UPoly]] = []
    for gen, count in ((S.g1, S.m2), (S.g2, S.m1)):
        for j in range(count):
            shift = count - 1 - j
            shifted = gen.mul_monomial(shift, 0) if S.wrt == "x" else gen.mul_monomial(0, shift)
            cols.append(vec(shifted, S.wrt, n))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matvec(S: SylvMat, w: list[UPoly]) -> list[UPoly]:
    """S @ w via two bivariate products, never materialising S."""
    if len(w) != S.n:
        raise ValueError(f"vector length {len(w)} does not match dimension {S.n}")
    zero = BiPoly.zero(S.ctx)
    A = unvec(w[: S.m2], S.wrt) if S.m2 else zero
    B = unvec(w[S.m2 :], S.wrt) if S.m1 else zero
    total = bimul(A, S.g1) + bimul(B, S.g2)
    return vec(total, S.wrt, S.n)


def matvec_window(S: SylvMat, w: list[UPoly], l: int) -> list[UPoly]:
    """(S @ w) mod outer^l, multiplying against outer-truncated generators;
    the truncation keeps deep solve nodes proportional to their window."""
    zero = BiPoly.zero(S.ctx)
    key = ("trunc", l)
    if key not in S._cache:
        S._cache[key] = (S.g1.trunc_deg(S.outer, l), S.g2.trunc_deg(S.outer, l))
    g1t, g2t = S._cache[key]
    A = unvec(w[: S.m2], S.wrt) if S.m2 else zero
    B = unvec(w[S.m2 :], S.wrt) if S.m1 else zero
    total = (bimul(A, g1t) + bimul(B, g2t)).trunc_deg(S.outer, l)
    return vec(total, S.wrt, S.n)


def matvec_T(S: SylvMat, ell: list[UPoly], out_len: int) -> list[UPoly]:
    """Transpose of matvec on coefficient spaces: the two products become
    middle products (outer-variable correlations against the generators)."""
    if len(ell) != S.n:
        raise ValueError(f"vector length {len(ell)} does not match dimension {S.n}")
    lam = _ascending_bipoly(S, ell)
    P1 = bimul(S.g1.rev(S.outer, S.c1), lam)
    P2 = bimul(S.g2.rev(S.outer, S.c2), lam)
    return _gather_T(S, P1, P2, off1=S.c1, off2=S.c2, out_len=out_len)


def _matvec_semiT(S: SylvMat, u: list[UPoly], out_len: int) -> list[UPoly]:
    """(sum_k S_k^T outer^k) @ u: transposed layers, ordinary convolution."""
    lam = _ascending_bipoly(S, u)
    P1 = bimul(S.g1, lam)
    P2 = bimul(S.g2, lam)
    return _gather_T(S, P1, P2, off1=0, off2=0, out_len=out_len)


def _ascending_bipoly(S: SylvMat, ell: list[UPoly]) -> BiPoly:
    """Lambda = sum_i ell[i] * inner^i (note: ascending, unlike vec/unvec)."""
    ctx = S.ctx
    n = len(ell)
    width = max((e.deg for e in ell), default=-1) + 1
    if width == 0:
        return BiPoly.zero(ctx)
    if S.wrt == "y":
        g = np.zeros((width, n), dtype=np.int64)
        for i, e in enumerate(ell):
            g[: len(e.c), i] = e.c
    else:
        g = np.zeros((n, width), dtype=np.int64)
        for i, e in enumerate(ell):
            g[i, : len(e.c)] = e.c
    return BiPoly(ctx, g)


def _gather_T(S, P1, P2, off1, off2, out_len) -> list[UPoly]:
    ctx = S.ctx
    out: list[UPoly] = []
    for j in range(S.m2):
        row = P1.upoly_coeff(S.wrt, S.m1 + j)
        out.append(UPoly(ctx, row.padded(off1 + out_len)[off1 : off1 + out_len]))
    for j in range(S.m1):
        row = P2.upoly_coeff(S.wrt, S.m2 + j)
        out.append(UPoly(ctx, row.padded(off2 + out_len)[off2 : off2 + out_len]))
    return out


# ---------------------------------------------------------------------------
# truncated inverse application (x-adic Hensel solves against S(0))


class _BaseSolver:
    """Solves S(0) z = r through the scalar Sylvester system: with p, q the
    outer-constant generator slices, z encodes (A, B) with A p + B q = R and
    deg A < m2, deg B < m1.  Nonsingularity of S(0) forces gcd(p, q) = 1 and
    full formal degree for p or q, so the Bezout route below is total."""

    def __init__(self, S: SylvMat):
        ctx = S.ctx
        p0 = S.g1.upoly_coeff(S.outer, 0)
        q0 = S.g2.upoly_coeff(S.outer, 0)
        if p0.is_zero and q0.is_zero:
            raise SingularMatrixError("constant coefficient matrix is singular")
        g, u0, v0 = xgcd(p0, q0)
        if g.deg != 0:
            raise SingularMatrixError("constant coefficient matrix is singular")
        if q0.deg == S.m2:
            self.route_a = True
            self.div = FixedDivisor(q0)
        elif p0.deg == S.m1:
            self.route_a = False
            self.div = FixedDivisor(p0)
        else:
            raise SingularMatrixError("constant coefficient matrix is singular")
        self.S = S
        self.ctx = ctx
        self.p0, self.q0, self.u0, self.v0 = p0, q0, u0, v0

    def solve(self, r: np.ndarray) -> np.ndarray:
        S = self.S
        R = UPoly(self.ctx, r[::-1])
        if self.route_a:
            A = self.div.rem(R * self.u0)
            B = self.div.exact_div(R - A * self.p0)
        else:
            B = self.div.rem(R * self.v0)
            A = self.div.exact_div(R - B * self.q0)
        out = np.zeros(S.n, dtype=np.int64)
        for j in range(S.m2):
            out[j] = A.coeff(S.m2 - 1 - j)
        for j in range(S.m1):
            out[S.m2 + j] = B.coeff(S.m1 - 1 - j)
        return out


def trunc_inv_apply(S: SylvMat, v: list[UPoly], l: int) -> list[UPoly]:
    """u with S u = v (mod outer^l); requires S(0) nonsingular."""
    if len(v) != S.n:
        raise ValueError(f"vector length {len(v)} does not match dimension {S.n}")
    if l <= 0:
        raise ValueError("truncation order must be positive")
    if "solver" not in S._cache:
        S._cache["solver"] = _BaseSolver(S)
    solver = S._cache["solver"]
    return _solve_series(S, solver.solve, matvec_window, [e.trunc(l) for e in v], l)


def _solve_series(S, base_solve, mv, v, l):
    ctx = S.ctx
    if l == 1:
        z = base_solve(np.array([e.coeff(0) for e in v], dtype=np.int64))
        return [UPoly.const(ctx, int(c)) for c in z]
    h = l // 2
    u_lo = _solve_series(S, base_solve, mv, [e.trunc(h) for e in v], h)
    prod = mv(S, u_lo, l)
    r = [(v[i] - prod[i]).trunc(l).trunc_low(h) for i in range(S.n)]
    u_hi = _solve_series(S, base_solve, mv, r, l - h)
    return [u_lo[i] + u_hi[i].shift(h) for i in range(S.n)]


class _BaseSolverT:
    """Dense inverse of S(0), applied transposed (precomputed parameter)."""

    def __init__(self, S: SylvMat):
        self.ctx = S.ctx
        self.Minv = gauss_inverse(S.ctx, S.constant_matrix())

    def solve(self, r: np.ndarray) -> np.ndarray:
        # z = S(0)^{-T} r = sum_j r_j * row_j(S(0)^{-1})
        ctx = self.ctx
        z = np.zeros(len(r), dtype=np.int64)
        for j in range(len(r)):
            if r[j]:
                z = ctx.vadd(z, ctx.vmul(self.Minv[j], np.int64(r[j])))
        return z


def trunc_inv_apply_T(S: SylvMat, ell: list[UPoly], l: int) -> list[UPoly]:
    """Transpose of trunc_inv_apply as a linear map on the coefficient
    window of width l: reverse, solve against the transposed layers,
    reverse back."""
    if len(ell) != S.n:
        raise ValueError(f"vector length {len(ell)} does not match dimension {S.n}")
    if "solverT" not in S._cache:
        S._cache["solverT"] = _BaseSolverT(S)
    solver = S._cache["solverT"]
    rev_in = [UPoly(S.ctx, e.padded(l)[::-1]) for e in ell]
    u = _solve_series(S, solver.solve, _matvec_semiT, rev_in, l)
    return [UPoly(S.ctx, e.padded(l)[::-1]) for e in u]
