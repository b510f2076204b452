"""Matrix division with remainder, y-degree reduction, the normal form
modulo <a, b>, quotient multiplication, and the transposed normal form.

The division v = S w + v_hat picks the unique remainder with S^{-1} v_hat
strictly proper.  It is computed through the reversal trick: reversing the
generators at their column degrees turns the quotient into a truncated
power-series solve against a Sylvester matrix with invertible constant
term.  Unequal column degrees are balanced by an implicit diag(t^delta, 1)
scaling; only the quotient split changes.

The normal form phi(f) reduces deg_y below n_y with a division against an
enlarged x-Sylvester matrix, then reduces deg_x below d against S_y.  For
fixed degree windows (delta, eta) the whole map is a linear program whose
stages are reindexings, structured products, and truncated solves;
transposing them stage by stage (middle products, transposed truncated
solves with the precomputed inverses as parameters) yields the bivariate
power projections ell(phi(x^i y^j)).
"""

from __future__ import annotations

import random

import numpy as np

from .bipoly import BiPoly, IdealBasis, bimul, unvec, unvec_y, vec, vec_x, vec_y
from .sylvester import (
    NotColumnReducedError,
    SylvMat,
    build_Sx,
    build_Sy,
    build_Tx,
    is_column_reduced,
    matvec,
    matvec_T,
    trunc_inv_apply,
    trunc_inv_apply_T,
)
from .upoly import UPoly


def _require_reduced(S: SylvMat, name: str) -> None:
    if not is_column_reduced(S):
        raise NotColumnReducedError(f"{name} is not column reduced")


# ---------------------------------------------------------------------------
# division with remainder


def _divide(S: SylvMat, v: list[UPoly], lv: int):
    """Core division with a fixed input-degree bound lv >= deg v.

    Returns (w, vhat) with v = S w + vhat and S^{-1} vhat strictly proper;
    the result does not depend on the choice of lv.
    """
    ctx = S.ctx
    zero = UPoly.zero(ctx)
    d = S.degree
    delta = abs(S.c1 - S.c2)
    l = lv + delta
    if l < d:
        return [zero] * S.n, list(v)
    Srev = S.reversed_matrix()
    prec = l - d + 1
    rv = [UPoly(ctx, e.padded(lv + 1)[::-1]) for e in v]
    u = trunc_inv_apply(Srev, rv, prec)
    w = [UPoly(ctx, e.padded(prec)[::-1]) for e in u]
    if delta:
        # the block of larger column degree carries the implicit t^delta
        hi = range(S.m2) if S.c1 > S.c2 else range(S.m2, S.n)
        for i in hi:
            w[i] = w[i].trunc_low(delta)
    Sw = matvec(S, w)
    vhat = [v[i] - Sw[i] for i in range(S.n)]
    return w, vhat


def matrix_divrem(S: SylvMat, v: list[UPoly]):
    """Unique (w, vhat) with v = S w + vhat and S^{-1} vhat strictly proper.

    deg vhat < max column degree of S; re-dividing vhat gives a zero
    quotient.  Requires S column reduced.
    """
    if len(v) != S.n:
        raise ValueError(f"vector length {len(v)} does not match dimension {S.n}")
    _require_reduced(S, "divisor matrix")
    lv = max((e.deg for e in v), default=-1)
    if lv < 0:
        return [UPoly.zero(S.ctx)] * S.n, list(v)
    return _divide(S, v, lv)


# ---------------------------------------------------------------------------
# normal form


def reduce_ydeg(basis: IdealBasis, f: BiPoly, with_witness: bool = False):
    """f' with deg_y f' < e, deg_x f' <= max(n_x - 1, deg_x f), f - f' in I.

    The witness (T_x, w) replays the membership: v_x(f) = T_x w + v_x(f').
    """
    _require_reduced(build_Sx(basis), "S_x")
    if f.deg_y < basis.e:
        return (f, None, None) if with_witness else f
    Tx = build_Tx(basis, max(f.deg_x, 0))
    v = vec_x(f, Tx.n)
    w, vhat = matrix_divrem(Tx, v)
    fp = unvec(vhat, "x", Tx.n)
    return (fp, Tx, w) if with_witness else fp


def normal_form(basis: IdealBasis, f: BiPoly) -> BiPoly:
    """The canonical representative of f + I in K[x,y]_{<(d, n_y)}.

    Requires both Sylvester matrices column reduced; linear in f, zero on
    the ideal, and idempotent.
    """
    Sy = build_Sy(basis)
    _require_reduced(Sy, "S_y")
    _require_reduced(build_Sx(basis), "S_x")
    if f.is_zero:
        return f
    if f.deg_y >= basis.ny:
        f = reduce_ydeg(basis, f)
    v = vec_y(f, basis.ny)
    _, vhat = _divide(Sy, v, max((e.deg for e in v), default=-1))
    return unvec_y(vhat, basis.ny)


def mul_mod(basis: IdealBasis, f: BiPoly, g: BiPoly) -> BiPoly:
    """phi(f * g)."""
    return normal_form(basis, bimul(f, g))


def pow_mod(basis: IdealBasis, f: BiPoly, e: int) -> BiPoly:
    acc = normal_form(basis, BiPoly.one(basis.ctx))
    base = normal_form(basis, f)
    while e:
        if e & 1:
            acc = mul_mod(basis, acc, base)
        base = mul_mod(basis, base, base)
        e >>= 1
    return acc


# ---------------------------------------------------------------------------
# the embedding space K[x,y]_{<(d, n_y)} and linear forms on it


def embed(basis: IdealBasis, f: BiPoly) -> np.ndarray:
    """Coefficients of f on {y^{ny-1}, y^{ny-1}x, ..., y^{ny-2}, ..., x^{d-1}}."""
    if f.deg_x >= basis.d or f.deg_y >= basis.ny:
        raise ValueError("polynomial is outside the embedding space")
    grid = f.padded(basis.d, basis.ny)
    return grid[:, ::-1].T.reshape(-1).copy()


def unembed(basis: IdealBasis, vec_codes: np.ndarray) -> BiPoly:
    grid = np.asarray(vec_codes, dtype=np.int64).reshape(basis.ny, basis.d).T[:, ::-1]
    return BiPoly(basis.ctx, grid)


class LinearForm:
    """Linear form on K[x,y]_{<(d, n_y)}, given on the embedding basis."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: IdealBasis, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (basis.d * basis.ny,):
            raise ValueError(f"linear form needs {basis.d * basis.ny} coefficients")
        self.basis = basis
        self.coeffs = coeffs

    @classmethod
    def random(cls, basis: IdealBasis, rng: random.Random):
        return cls(basis, basis.ctx.rand_array(rng, basis.d * basis.ny))

    @classmethod
    def coordinate(cls, basis: IdealBasis, i: int, j: int):
        """Dual basis form picking the coefficient of x^i y^j."""
        c = np.zeros(basis.d * basis.ny, dtype=np.int64)
        c[(basis.ny - 1 - j) * basis.d + i] = 1
        return cls(basis, c)

    def apply_embedded(self, emb: np.ndarray) -> int:
        ctx = self.basis.ctx
        acc = 0
        prods = ctx.vmul(self.coeffs, emb)
        for v in prods:
            acc = ctx.add(acc, int(v))
        return acc

    def apply(self, f: BiPoly) -> int:
        return self.apply_embedded(embed(self.basis, f))


# ---------------------------------------------------------------------------
# fixed-window linear program for phi and its transpose


class _DivisionProgram:
    """The division against S restricted to inputs of entry degree <= lin,
    as a linear map between coefficient windows, with its transpose."""

    def __init__(self, S: SylvMat, lin: int):
        _require_reduced(S, "divisor matrix")
        self.S = S
        self.lin = lin
        self.V = lin + 1
        self.d = S.degree
        self.delta = abs(S.c1 - S.c2)
        self.l = lin + self.delta
        self.active = self.l >= self.d
        if self.active:
            self.W = self.l - self.d + 1
            self.Srev = S.reversed_matrix()
            self.hi = (
                range(S.m2) if S.c1 > S.c2 else range(S.m2, S.n) if S.c2 > S.c1 else range(0)
            )

    def forward(self, v: list[UPoly]) -> list[UPoly]:
        if not self.active:
            return list(v)
        _, vhat = _divide(self.S, v, self.lin)
        return vhat

    def transpose(self, lam: list[UPoly]) -> list[UPoly]:
        """Dual windows of width d -> dual windows of width lin + 1."""
        ctx = self.S.ctx
        padded = [UPoly(ctx, e.padded(min(self.d, self.V))) for e in lam]
        if not self.active:
            return padded
        # Q^T (S^T lambda), stage by stage in reverse order
        mu = matvec_T(self.S, padded, self.W)
        # transpose of the quotient split: high block multiplied by t^delta
        # (zero when the window is narrower than the shift)
        if self.delta:
            keep = max(self.W - self.delta, 0)
            mu = [
                (UPoly(ctx, e.padded(keep)).shift(self.delta) if keep else UPoly.zero(ctx))
                if i in self.hi
                else e
                for i, e in enumerate(mu)
            ]
        # transpose of the output reversal (window W)
        mu = [UPoly(ctx, e.padded(self.W)[::-1]) for e in mu]
        # transpose of the truncated solve (window W)
        mu = trunc_inv_apply_T(self.Srev, mu, self.W)
        # transpose of the resize V -> W, then of the input reversal (window V)
        mu = [UPoly(ctx, e.padded(self.V)[::-1]) for e in mu]
        return [padded[i] - mu[i] for i in range(self.S.n)]


class NormalFormProgram:
    """phi restricted to K[x,y]_{<=(delta, eta)} as a fixed linear program.

    forward() agrees with normal_form on that space; transpose() computes
    ell o phi on the monomial basis {x^i y^j : i <= delta, j <= eta}.
    """

    def __init__(self, basis: IdealBasis, delta: int, eta: int):
        _require_reduced(build_Sy(basis), "S_y")
        _require_reduced(build_Sx(basis), "S_x")
        self.basis = basis
        self.delta = delta
        self.eta = eta
        self.two_stage = eta >= basis.ny
        if self.two_stage:
            self.Tx = build_Tx(basis, delta)
            self.div1 = _DivisionProgram(self.Tx, eta)
            lin2 = max(self.Tx.n - 1, delta)
            self.div2 = _DivisionProgram(build_Sy(basis), lin2)
        else:
            self.Tx = None
            self.div1 = None
            self.div2 = _DivisionProgram(build_Sy(basis), delta)

    def forward(self, f: BiPoly) -> BiPoly:
        if f.deg_x > self.delta or f.deg_y > self.eta:
            raise ValueError("input outside the program's degree window")
        if self.two_stage:
            v = vec(f, "x", self.Tx.n)
            f = unvec(self.div1.forward(v), "x", self.Tx.n)
        v = vec(f, "y", self.basis.ny)
        return unvec_y(self.div2.forward(v), self.basis.ny)

    def transpose(self, ell: LinearForm) -> np.ndarray:
        basis = self.basis
        ctx = basis.ctx
        d, ny = basis.d, basis.ny
        lam = [UPoly(ctx, ell.coeffs[i * d : (i + 1) * d]) for i in range(ny)]
        mu = self.div2.transpose(lam)
        out = np.zeros((self.eta + 1) * (self.delta + 1), dtype=np.int64)
        if not self.two_stage:
            for j in range(self.eta + 1):
                row = mu[ny - 1 - j]
                for i in range(self.delta + 1):
                    out[j * (self.delta + 1) + i] = row.coeff(i)
            return out
        # reindex transpose between the y-division and the x-division
        nT = self.Tx.n
        e_win = self.div1.d  # output window of the first division
        lam1 = []
        for i1 in range(nT):
            coeffs = np.zeros(e_win, dtype=np.int64)
            for t in range(e_win):
                src = mu[ny - 1 - t]
                coeffs[t] = src.coeff(nT - 1 - i1)
            lam1.append(UPoly(ctx, coeffs))
        mu1 = self.div1.transpose(lam1)
        for i in range(self.delta + 1):
            row = mu1[nT - 1 - i]
            for j in range(self.eta + 1):
                out[j * (self.delta + 1) + i] = row.coeff(j)
        return out


def transposed_normal_form(basis: IdealBasis, ell: LinearForm, delta: int, eta: int) -> np.ndarray:
    """The projections ell(phi(x^i y^j)) for 0 <= i <= delta, 0 <= j <= eta,
    flattened with i fastest (the basis 1, x, ..., x^delta, y, xy, ...)."""
    return NormalFormProgram(basis, delta, eta).transpose(ell)
