"""Short-time (windowed) offset linear canonical transform.

For every window position u on a translation grid, the coefficient slice
S(., u) is the QOLCT of the modified signal f(x) * conj(phi(x - u)).  The
translation grid subsamples the spatial grid with an integer stride and
its nodes sit on integer multiples of the grid step, so every window
translation is an exact sample shift (no interpolation).

Three computation routes produce identical values (within roundoff):

* ``direct``      -- per-u kernel quadrature (the oracle; no FFT).
* ``via_qolct``   -- per-u fast QOLCT of the modified signal, batched
                     over window positions.
* ``via_qft``     -- reduction to the two-sided QFT: chirp-modulate the
                     modified signal, transform, read off the rescaled
                     frequency grid w/b, and apply the closed-form
                     output prefactors.

Identity-style checks (energy, Moyal, reconstruction) integrate over all
translations and therefore require stride 1.  Coefficient fields are
dense: (nw1, nw2, nu1, nu2, 4) float64, which at n=64 and stride 1 is
about 540 MB; forward and reconstruction stream over u-batches so peak
temporaries stay small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import ParameterError, ShapeError
from .grid import Axis, GridSignal2D, inner_product, l2_norm
from .qft import QftPlan, qft_forward
from .qolct import (OlctParams, QolctPlan, qolct_forward, qolct_inverse,
                    qolct_forward_batch, qolct_inverse_batch)
from .quaternion import qconj, qmul, unit_exp

__all__ = [
    "StqolctPlan",
    "StqolctField",
    "MoyalResult",
    "modified_signal",
    "stqolct_forward",
    "stqolct_energy",
    "coefficient_slice",
    "moyal_check",
    "stqolct_reconstruct",
]

_ROUTES = ("direct", "via_qolct", "via_qft")


def _u_axis(ax: Axis, stride: int) -> Axis:
    # Nodes at integer multiples of the spatial step (cell edges), so
    # every translation is sample-aligned; u = 0 is always on the grid.
    return Axis(ax.n // stride, -(ax.n // 2) * ax.step, stride * ax.step)


@dataclass
class StqolctPlan:
    """Window, stride, and the underlying QOLCT plan."""

    qolct: QolctPlan
    window: GridSignal2D
    stride: int
    u1: Axis
    u2: Axis

    @classmethod
    def create(cls, params1, params2, ax1, ax2, window, stride=1):
        if window.ax1 != ax1 or window.ax2 != ax2:
            raise ShapeError("window must be sampled on the signal grid")
        if l2_norm(window) == 0.0:
            raise ParameterError("window must have nonzero norm")
        if not (isinstance(stride, int) and stride >= 1):
            raise ParameterError(f"stride must be a positive integer, got {stride!r}")
        if ax1.n % stride or ax2.n % stride:
            raise ParameterError(
                f"stride {stride} must divide the sample counts ({ax1.n}, {ax2.n})"
            )
        qplan = QolctPlan.for_axes(params1, params2, ax1, ax2)
        return cls(qplan, window.copy(), stride, _u_axis(ax1, stride), _u_axis(ax2, stride))

    @property
    def ax1(self):
        return self.qolct.ax1

    @property
    def ax2(self):
        return self.qolct.ax2

    def shift_counts(self, i1, i2):
        """Sample shifts of the window for translation-grid index (i1, i2)."""
        return (i1 * self.stride - self.ax1.n // 2,
                i2 * self.stride - self.ax2.n // 2)


@dataclass
class StqolctField:
    """Dense coefficient stack indexed (w1, w2, u1, u2)."""

    w1: Axis
    w2: Axis
    u1: Axis
    u2: Axis
    params1: OlctParams
    params2: OlctParams
    data: np.ndarray = dataclass_field(repr=False)
    plan: StqolctPlan | None = None

    def __post_init__(self):
        expected = (self.w1.n, self.w2.n, self.u1.n, self.u2.n, 4)
        if self.data.shape != expected:
            raise ShapeError(f"field shape {self.data.shape}, expected {expected}")

    @property
    def cell_volume(self):
        return self.w1.step * self.w2.step * self.u1.step * self.u2.step


def _shift_data(data, m1, m2):
    n1, n2 = data.shape[:2]
    out = np.zeros_like(data)
    src1 = slice(max(0, -m1), min(n1, n1 - m1))
    src2 = slice(max(0, -m2), min(n2, n2 - m2))
    if src1.start < src1.stop and src2.start < src2.stop:
        out[max(0, m1):min(n1, n1 + m1), max(0, m2):min(n2, n2 + m2)] = data[src1, src2]
    return out


def modified_signal(f: GridSignal2D, window: GridSignal2D, u) -> GridSignal2D:
    """f(x) * conj(window(x - u)) for a grid-aligned translation u."""
    from .grid import translate_window

    if not f.same_axes(window):
        raise ShapeError("signal and window are sampled on different grids")
    shifted = translate_window(window, u)
    return GridSignal2D(f.ax1, f.ax2, qmul(f.data, qconj(shifted.data)))


def _check_route(route):
    if route not in _ROUTES:
        raise ParameterError(f"route must be one of {_ROUTES}, got {route!r}")


def _u_pairs(plan):
    return [(i1, i2) for i1 in range(plan.u1.n) for i2 in range(plan.u2.n)]


def _window_shift_batch(plan, pairs):
    wdata = plan.window.data
    batch = np.empty((len(pairs),) + wdata.shape)
    for k, (i1, i2) in enumerate(pairs):
        m1, m2 = plan.shift_counts(i1, i2)
        batch[k] = _shift_data(wdata, m1, m2)
    return batch


def _batch_size(plan):
    cells = plan.ax1.n * plan.ax2.n
    return int(min(256, max(8, (1 << 21) // max(cells, 1))))


def _via_qft_single(g: GridSignal2D, qplan: QolctPlan, qft_plan: QftPlan):
    # Reduction to the QFT: chirp in x, transform, rescale the frequency
    # argument to w/b, then the closed-form output phases.
    p1, p2 = qplan.params1, qplan.params2
    x1, x2 = qplan.ax1.coords, qplan.ax2.coords
    c1 = unit_exp("i", (p1.a * x1 * x1 / 2.0 + x1 * p1.p) / p1.b)
    c2 = unit_exp("j", (p2.a * x2 * x2 / 2.0 + x2 * p2.p) / p2.b)
    h = GridSignal2D(qplan.ax1, qplan.ax2,
                     qmul(c1[:, None, :], qmul(g.data, c2[None, :, :])))
    spectrum = qft_forward(h, qft_plan, mode="fast").data
    if p1.b < 0:
        spectrum = spectrum[::-1, :, :]
    if p2.b < 0:
        spectrum = spectrum[:, ::-1, :]
    w1v, w2v = qplan.w1.coords, qplan.w2.coords
    amp1 = 1.0 / math.sqrt(2.0 * math.pi * abs(p1.b))
    amp2 = 1.0 / math.sqrt(2.0 * math.pi * abs(p2.b))
    g1 = amp1 * unit_exp("i", -w1v * (p1.d * p1.p - p1.b * p1.q) / p1.b
                         + p1.d * (w1v * w1v + p1.p * p1.p) / (2.0 * p1.b)
                         - math.copysign(math.pi / 4.0, p1.b))
    g2 = amp2 * unit_exp("j", -w2v * (p2.d * p2.p - p2.b * p2.q) / p2.b
                         + p2.d * (w2v * w2v + p2.p * p2.p) / (2.0 * p2.b)
                         - math.copysign(math.pi / 4.0, p2.b))
    return qmul(g1[:, None, :], qmul(spectrum, g2[None, :, :]))


def stqolct_forward(f: GridSignal2D, plan: StqolctPlan, route="via_qolct") -> StqolctField:
    """Coefficient field S(w, u) over the full translation grid."""
    _check_route(route)
    if f.ax1 != plan.ax1 or f.ax2 != plan.ax2:
        raise ShapeError("signal axes do not match the plan's spatial axes")
    qplan = plan.qolct
    nw1, nw2 = qplan.w1.n, qplan.w2.n
    nu1, nu2 = plan.u1.n, plan.u2.n
    out = np.empty((nw1, nw2, nu1, nu2, 4))
    pairs = _u_pairs(plan)
    if route == "direct":
        for i1, i2 in pairs:
            m1, m2 = plan.shift_counts(i1, i2)
            g = GridSignal2D(plan.ax1, plan.ax2,
                             qmul(f.data, qconj(_shift_data(plan.window.data, m1, m2))))
            out[:, :, i1, i2, :] = qolct_forward(g, qplan, mode="direct").data
    elif route == "via_qft":
        qft_plan = QftPlan.for_axes(plan.ax1, plan.ax2)
        for i1, i2 in pairs:
            m1, m2 = plan.shift_counts(i1, i2)
            g = GridSignal2D(plan.ax1, plan.ax2,
                             qmul(f.data, qconj(_shift_data(plan.window.data, m1, m2))))
            out[:, :, i1, i2, :] = _via_qft_single(g, qplan, qft_plan)
    else:
        flat = out.reshape(nw1, nw2, nu1 * nu2, 4)
        step = _batch_size(plan)
        for start in range(0, len(pairs), step):
            sub = pairs[start:start + step]
            wbatch = _window_shift_batch(plan, sub)
            gbatch = qmul(f.data[None], qconj(wbatch))
            sbatch = qolct_forward_batch(gbatch, qplan)
            flat[:, :, start:start + len(sub), :] = np.moveaxis(sbatch, 0, 2)
    return StqolctField(qplan.w1, qplan.w2, plan.u1, plan.u2,
                        qplan.params1, qplan.params2, out, plan)


def stqolct_energy(field: StqolctField) -> float:
    """Quadrature sum of |S(w, u)|^2 over all four axes.

    With stride 1 this matches the signal/window energy product
    ||phi||^2 ||f||^2 up to boundary truncation of the window sum.
    """
    return float(np.sum(field.data * field.data)) * field.cell_volume


def coefficient_slice(field: StqolctField, i1, i2) -> GridSignal2D:
    """S(., u) at translation-grid index (i1, i2) as a frequency-domain signal."""
    return GridSignal2D(field.w1, field.w2, field.data[:, :, i1, i2, :].copy())


@dataclass
class MoyalResult:
    """Both sides of the windowed-transform inner product identity.

    ``lhs`` is the 4D quadrature inner product of the two coefficient
    fields.  The two products of signal and window inner products do not
    commute, so both orderings are reported; their scalar parts coincide
    with each other but, for general quaternion inputs, not necessarily
    with the scalar part of lhs.  Matching-pair specializations
    (phi == psi and/or f == g) are the asserted cases.
    """

    lhs: np.ndarray
    rhs: np.ndarray
    rhs_reversed: np.ndarray


def moyal_check(f, g, phi, psi, qplan: QolctPlan, route="via_qolct") -> MoyalResult:
    plan_f = StqolctPlan.create(qplan.params1, qplan.params2,
                                qplan.ax1, qplan.ax2, phi, stride=1)
    plan_g = StqolctPlan.create(qplan.params1, qplan.params2,
                                qplan.ax1, qplan.ax2, psi, stride=1)
    sf = stqolct_forward(f, plan_f, route)
    sg = stqolct_forward(g, plan_g, route)
    acc = np.zeros(4)
    for i1 in range(sf.u1.n):
        acc += np.sum(qmul(sf.data[:, :, i1], qconj(sg.data[:, :, i1])), axis=(0, 1, 2))
    lhs = acc * sf.cell_volume
    ip_fg = inner_product(f, g)
    ip_pp = inner_product(phi, psi)
    return MoyalResult(lhs=lhs, rhs=qmul(ip_fg, ip_pp), rhs_reversed=qmul(ip_pp, ip_fg))


def stqolct_reconstruct(field: StqolctField, mode="fast") -> GridSignal2D:
    """Resynthesize the signal from a stride-1 coefficient field.

    Applies the conjugate kernels to every coefficient slice, weights by
    the translated window, and averages over translations with the
    window's squared norm.
    """
    if mode not in ("direct", "fast"):
        raise ParameterError(f"mode must be 'direct' or 'fast', got {mode!r}")
    plan = field.plan
    if plan is None:
        raise ParameterError(
            "field carries no plan; reconstruction needs the window and spatial grid"
        )
    if plan.stride != 1:
        raise ParameterError("reconstruction requires a stride-1 translation grid")
    qplan = plan.qolct
    norm_sq = l2_norm(plan.window) ** 2
    n1, n2 = plan.ax1.n, plan.ax2.n
    nu1, nu2 = field.u1.n, field.u2.n
    acc = np.zeros((n1, n2, 4))
    pairs = _u_pairs(plan)
    if mode == "direct":
        for i1, i2 in pairs:
            g = qolct_inverse(coefficient_slice(field, i1, i2), qplan, mode="direct")
            m1, m2 = plan.shift_counts(i1, i2)
            acc += qmul(g.data, _shift_data(plan.window.data, m1, m2))
    else:
        flat = field.data.reshape(field.w1.n, field.w2.n, nu1 * nu2, 4)
        step = _batch_size(plan)
        for start in range(0, len(pairs), step):
            sub = pairs[start:start + step]
            sbatch = np.ascontiguousarray(
                np.moveaxis(flat[:, :, start:start + len(sub), :], 2, 0))
            ginv = qolct_inverse_batch(sbatch, qplan)
            wbatch = _window_shift_batch(plan, sub)
            acc += np.sum(qmul(ginv, wbatch), axis=0)
    data = acc * (field.u1.step * field.u2.step / norm_sq)
    return GridSignal2D(plan.ax1, plan.ax2, data)
