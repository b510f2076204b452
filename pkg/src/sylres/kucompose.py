"""Reduction of a univariate polynomial modulo the ideal through the
six-step composition pipeline: inverse Kronecker substitution, a tower of
reduced powers of x, bivariate grid evaluation, multivariate multipoint
evaluation, grid interpolation, and a final normal form.

The multivariate multipoint evaluation is the naive per-point scheme; the
asymptotically fast evaluation this pipeline was designed around is out of
scope, so the pipeline here is a correctness vehicle: compose_rem(f) must
equal normal_form(f) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipoly import BiPoly, IdealBasis
from .normalform import mul_mod, normal_form
from .upoly import UPoly, interpolate


class FieldTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class KUParams:
    """Radix d_eps, input degree bound delta, number of variables l
    (smallest l with d_eps**l >= delta)."""

    d_eps: int
    delta: int
    l: int

    @classmethod
    def choose(cls, delta: int, d_eps: int | None = None) -> "KUParams":
        if delta < 3:
            raise ValueError("degree bound must be at least 3 for the pipeline")
        if d_eps is None:
            d_eps = max(2, int(np.ceil(delta ** (1 / 3))))
        if not 2 <= d_eps < delta:
            raise ValueError(f"need 2 <= d_eps < delta, got d_eps={d_eps}, delta={delta}")
        l, power = 1, d_eps
        while power < delta:
            l += 1
            power *= d_eps
        return cls(d_eps=d_eps, delta=delta, l=l)

    def grid_sizes(self, basis: IdealBasis) -> tuple[int, int]:
        dp = self.l * (self.d_eps - 1) * (basis.d - 1)
        ep = self.l * (self.d_eps - 1) * (basis.ny - 1)
        return dp, ep

    def check_cardinality(self, basis: IdealBasis) -> None:
        need = self.l * (self.d_eps - 1) * max(basis.d - 1, basis.ny - 1)
        if basis.ctx.q <= need:
            raise FieldTooSmallError(
                f"field of size {basis.ctx.q} too small for the evaluation grids; "
                f"need more than {need} elements"
            )


def inv_kronecker(f: UPoly, params: KUParams) -> np.ndarray:
    """x^k -> z_0^{k_0} ... z_{l-1}^{k_{l-1}} with (k_i) the base-d_eps digits
    of k (least significant first); returns the (d_eps,)*l coefficient grid."""
    if f.deg >= params.delta:
        raise ValueError(f"degree {f.deg} exceeds the bound {params.delta}")
    grid = np.zeros((params.d_eps,) * params.l, dtype=np.int64)
    for k in range(f.deg + 1):
        c = f.coeff(k)
        if c == 0:
            continue
        idx = []
        kk = k
        for _ in range(params.l):
            idx.append(kk % params.d_eps)
            kk //= params.d_eps
        grid[tuple(idx)] = c
    return grid


def kronecker_restore(ctx, grid: np.ndarray, params: KUParams) -> UPoly:
    """Substitute z_i = x^(d_eps**i): the inverse of inv_kronecker."""
    coeffs = np.zeros(params.d_eps**params.l, dtype=np.int64)
    for idx in np.ndindex(grid.shape):
        c = int(grid[idx])
        if c == 0:
            continue
        k = sum(ki * params.d_eps**i for i, ki in enumerate(idx))
        coeffs[k] = ctx.add(int(coeffs[k]), c)
    return UPoly(ctx, coeffs)


def power_tower(basis: IdealBasis, params: KUParams) -> list[BiPoly]:
    """chi_i = phi(x^(d_eps**i)) for i = 0 .. l-1."""
    chis = [normal_form(basis, BiPoly.x(basis.ctx))]
    for _ in range(params.l - 1):
        prev = chis[-1]
        acc = normal_form(basis, BiPoly.one(basis.ctx))
        base, e = prev, params.d_eps
        while e:
            if e & 1:
                acc = mul_mod(basis, acc, base)
            e >>= 1
            if e:
                base = mul_mod(basis, base, base)
        chis.append(acc)
    return chis


def grid_eval(ctx, polys: list[BiPoly], K1: np.ndarray, K2: np.ndarray) -> np.ndarray:
    """Values polys[i](K1[j], K2[k]) as an array of shape (len(polys), |K1|, |K2|)."""
    K1 = np.asarray(K1, dtype=np.int64)
    K2 = np.asarray(K2, dtype=np.int64)
    out = np.zeros((len(polys), len(K1), len(K2)), dtype=np.int64)
    for i, f in enumerate(polys):
        if f.is_zero:
            continue
        # Horner in x across K1 (columns stay y-coefficients), then in y across K2
        V = np.zeros((len(K1), f.deg_y + 1), dtype=np.int64)
        for r in range(f.deg_x, -1, -1):
            V = ctx.vadd(ctx.vmul(V, K1[:, None]), f.g[r][None, :])
        W = np.zeros((len(K1), len(K2)), dtype=np.int64)
        for c in range(f.deg_y, -1, -1):
            W = ctx.vadd(ctx.vmul(W, K2[None, :]), V[:, c][:, None])
        out[i] = W
    return out


def grid_interp(ctx, values: np.ndarray, K1: np.ndarray, K2: np.ndarray) -> BiPoly:
    """Bivariate interpolation on the grid K1 x K2 (inverse of grid_eval for
    bidegree < (|K1|, |K2|))."""
    K1 = np.asarray(K1, dtype=np.int64)
    K2 = np.asarray(K2, dtype=np.int64)
    n1, n2 = values.shape
    # interpolate along y for each x-node, then along x coefficientwise
    ycoeffs = np.zeros((n1, n2), dtype=np.int64)
    for j in range(n1):
        ycoeffs[j] = interpolate(ctx, K2, values[j]).padded(n2)
    g = np.zeros((n1, n2), dtype=np.int64)
    for c in range(n2):
        g[:, c] = interpolate(ctx, K1, ycoeffs[:, c]).padded(n1)
    return BiPoly(ctx, g)


def mv_multipoint_eval(ctx, grid: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Evaluate the l-variate coefficient grid at each row of points (naive
    nested Horner, vectorised across the points)."""
    points = np.asarray(points, dtype=np.int64)
    npts, l = points.shape if points.ndim == 2 else (len(points), 1)
    if points.ndim == 1:
        points = points[:, None]
    if grid.ndim != l:
        raise ValueError("point arity does not match the grid")
    vals = np.broadcast_to(grid[..., None], grid.shape + (npts,)).copy()
    for axis in range(l - 1, -1, -1):
        z = points[:, axis]
        acc = vals[..., -1, :]
        for t in range(grid.shape[axis] - 2, -1, -1):
            acc = ctx.vadd(ctx.vmul(acc, z), vals[..., t, :])
        vals = acc
    return vals


def compose_rem(
    basis: IdealBasis, f: UPoly, params: KUParams | None = None, d_eps: int | None = None
) -> BiPoly:
    """phi(f(x)): the normal form of a univariate f of degree < delta,
    computed by the composition pipeline.  Equals normal_form exactly."""
    ctx = basis.ctx
    if params is None:
        bound = max(f.deg + 1, 3)
        params = KUParams.choose(bound, d_eps=d_eps)
    params.check_cardinality(basis)
    if f.is_zero:
        return BiPoly.zero(ctx)

    grid = inv_kronecker(f, params)  # step 1
    chis = power_tower(basis, params)  # step 2

    dp, ep = params.grid_sizes(basis)
    K1 = np.arange(dp + 1, dtype=np.int64)  # fixed enumeration of the field
    K2 = np.arange(ep + 1, dtype=np.int64)
    mu = grid_eval(ctx, chis, K1, K2)  # step 3

    pts = mu.reshape(params.l, -1).T  # step 4
    vals = mv_multipoint_eval(ctx, grid, pts).reshape(len(K1), len(K2))

    composite = grid_interp(ctx, vals, K1, K2)  # step 5
    return normal_form(basis, composite)  # step 6
