"""Quantitative uncertainty-principle checks for the windowed transform.

Every check returns an InequalityResult with both sides of its
inequality, the signed margin, and a pass flag; the verification harness
serializes these as JSON records.  Concentration machinery works on
per-cell energy maps so the same greedy support construction serves the
spatial grid and the u-integrated frequency marginal of a coefficient
field.

Grids are half-bin centered, so no frequency sample sits at w = 0 and
the |w|^(-alpha) and ln|w| weights are finite at every node; the checks
verify this rather than excluding cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError
from .grid import GridSignal2D, l2_norm
from .qolct import qolct_forward
from .specialfn import digamma, gamma
from .stqolct import StqolctField, StqolctPlan, modified_signal, stqolct_forward

__all__ = [
    "CellSet",
    "EnergyMap",
    "InequalityResult",
    "HardyFit",
    "BeurlingIntegral",
    "signal_energy_map",
    "field_w_energy_map",
    "epsilon_concentration",
    "essential_support",
    "donoho_stark_check",
    "pitt_constant",
    "pitt_check",
    "log_up_constant",
    "log_up_check",
    "hardy_decay_fit",
    "beurling_integral",
]

# relative slack for float comparisons of cumulative energies
_ENERGY_SLACK = 1e-12


@dataclass(frozen=True)
class EnergyMap:
    """Per-cell energy density |.|^2 on a named 2D grid."""

    domain: str
    values: np.ndarray
    cell_area: float

    @property
    def total(self):
        return float(np.sum(self.values)) * self.cell_area


@dataclass(frozen=True)
class CellSet:
    """A set of grid cells; measure = count * cell_area."""

    domain: str
    shape: tuple
    cell_area: float
    indices: np.ndarray  # (k, 2) int array, row-major sorted

    @property
    def count(self):
        return len(self.indices)

    @property
    def measure(self):
        return self.count * self.cell_area


@dataclass
class InequalityResult:
    name: str
    params: dict
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: bool

    def as_record(self):
        return {
            "name": self.name,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def signal_energy_map(f: GridSignal2D) -> EnergyMap:
    return EnergyMap("space", np.sum(f.data * f.data, axis=-1), f.cell_area)


def field_w_energy_map(field: StqolctField) -> EnergyMap:
    """u-integrated energy marginal over the frequency grid."""
    du = field.u1.step * field.u2.step
    values = np.zeros((field.w1.n, field.w2.n))
    for i1 in range(field.u1.n):
        values += np.sum(field.data[:, :, i1] ** 2, axis=(2, 3))
    return EnergyMap("frequency", values * du, field.w1.step * field.w2.step)


def _as_energy_map(obj) -> EnergyMap:
    if isinstance(obj, EnergyMap):
        return obj
    if isinstance(obj, GridSignal2D):
        return signal_energy_map(obj)
    raise ParameterError(f"expected a signal or energy map, got {type(obj).__name__}")


def epsilon_concentration(obj, cells: CellSet) -> float:
    """Smallest eps for which the energy outside ``cells`` is eps^2 of the total."""
    emap = _as_energy_map(obj)
    if emap.values.shape != cells.shape:
        raise ShapeError(f"cell set shape {cells.shape} does not match grid "
                         f"{emap.values.shape}")
    total = float(np.sum(emap.values))
    if total <= 0.0:
        raise ParameterError("concentration of a zero signal is undefined")
    if cells.count:
        inside = float(np.sum(emap.values[cells.indices[:, 0], cells.indices[:, 1]]))
    else:
        inside = 0.0
    out = max(total - inside, 0.0)
    return math.sqrt(min(out / total, 1.0))


def essential_support(obj, eps: float) -> CellSet:
    """Minimal-measure cell set on which the energy is eps-concentrated.

    Cells are taken in descending energy order until the excluded energy
    drops to eps^2 of the total; for this objective the greedy prefix is
    exactly the optimum.
    """
    if not 0.0 <= eps <= 1.0:
        raise ParameterError(f"eps must lie in [0, 1], got {eps}")
    emap = _as_energy_map(obj)
    vals = emap.values.ravel()
    total = float(np.sum(vals))
    if total <= 0.0:
        raise ParameterError("essential support of a zero signal is undefined")
    order = np.argsort(-vals, kind="stable")
    csum = np.cumsum(vals[order])
    target = eps * eps * csum[-1] + _ENERGY_SLACK * csum[-1]
    if csum[-1] <= target:
        count = 0
    else:
        excluded = csum[-1] - csum
        count = int(np.argmax(excluded <= target)) + 1
    chosen = np.sort(order[:count])
    indices = np.column_stack(np.unravel_index(chosen, emap.values.shape))
    return CellSet(emap.domain, emap.values.shape, emap.cell_area, indices)


def _require_stride1(plan):
    if plan.stride != 1:
        raise ParameterError("this check integrates over all translations and "
                             "requires a stride-1 plan")


def donoho_stark_check(f: GridSignal2D, plan: StqolctPlan, eps_m: float, eps_n: float,
                       route="via_qolct", field: StqolctField | None = None,
                       ) -> InequalityResult:
    """Support-area product bound |M||N| >= 2*pi*|b1*b2|*(1 - eps_M - eps_N)^2."""
    if eps_m < 0 or eps_n < 0 or eps_m + eps_n >= 1.0:
        raise ParameterError(
            f"need eps_m, eps_n >= 0 with eps_m + eps_n < 1, got {eps_m}, {eps_n}")
    _require_stride1(plan)
    if field is None:
        field = stqolct_forward(f, plan, route)
    m_set = essential_support(f, eps_m)
    n_set = essential_support(field_w_energy_map(field), eps_n)
    b1b2 = abs(plan.qolct.params1.b * plan.qolct.params2.b)
    lhs = m_set.measure * n_set.measure
    rhs = 2.0 * math.pi * b1b2 * (1.0 - eps_m - eps_n) ** 2
    tol = 1e-9
    return InequalityResult(
        name="donoho-stark",
        params={"eps_m": eps_m, "eps_n": eps_n, "cells_m": m_set.count,
                "cells_n": n_set.count},
        lhs=lhs, rhs=rhs, margin=lhs - rhs, tolerance=tol,
        passed=bool(lhs - rhs >= -tol * abs(rhs)),
    )


def pitt_constant(alpha: float) -> float:
    """(4*pi^2 / 2^alpha) * [Gamma((2-alpha)/4) / Gamma((2+alpha)/4)]^2."""
    if not 0.0 <= alpha < 2.0:
        raise ParameterError(f"alpha must lie in [0, 2), got {alpha}")
    ratio = gamma((2.0 - alpha) / 4.0) / gamma((2.0 + alpha) / 4.0)
    return 4.0 * math.pi**2 / 2.0**alpha * ratio * ratio


def _frequency_radii(plan):
    r = np.hypot(plan.qolct.w1.coords[:, None], plan.qolct.w2.coords[None, :])
    if r.min() <= 0.0:
        raise ParameterError("frequency grid contains a zero sample; use a "
                             "half-bin centered grid with even n")
    return r


def _pitt_lhs(marginal: EnergyMap, w_radii, alpha):
    return float(np.sum(w_radii ** (-alpha) * marginal.values)) * marginal.cell_area


def _pitt_rhs(f, plan, alpha):
    x_r = np.hypot(plan.ax1.coords[:, None], plan.ax2.coords[None, :])
    weighted = float(np.sum(x_r**alpha * np.sum(f.data * f.data, axis=-1))) \
        * f.cell_area
    b1b2 = abs(plan.qolct.params1.b * plan.qolct.params2.b)
    win_sq = l2_norm(plan.window) ** 2
    return pitt_constant(alpha) / (4.0 * math.pi**2 * b1b2**alpha) * win_sq * weighted


def pitt_check(f: GridSignal2D, plan: StqolctPlan, alpha: float, route="via_qolct",
               field: StqolctField | None = None,
               marginal: EnergyMap | None = None) -> InequalityResult:
    """Weighted-norm inequality: |w|^(-alpha) coefficient energy vs |x|^alpha signal energy."""
    if not 0.0 <= alpha < 2.0:
        raise ParameterError(f"alpha must lie in [0, 2), got {alpha}")
    _require_stride1(plan)
    if marginal is None:
        if field is None:
            field = stqolct_forward(f, plan, route)
        marginal = field_w_energy_map(field)
    w_radii = _frequency_radii(plan)
    lhs = _pitt_lhs(marginal, w_radii, alpha)
    rhs = _pitt_rhs(f, plan, alpha)
    tol = 1e-6
    return InequalityResult(
        name="pitt",
        params={"alpha": alpha},
        lhs=lhs, rhs=rhs, margin=rhs - lhs, tolerance=tol,
        passed=bool(lhs <= rhs * (1.0 + tol)),
    )


def log_up_constant() -> float:
    """ln 2 + digamma(1/2), the additive constant of the logarithmic bound."""
    return math.log(2.0) + digamma(0.5)


def log_up_check(f: GridSignal2D, plan: StqolctPlan, route="via_qolct",
                 field: StqolctField | None = None,
                 marginal: EnergyMap | None = None, h: float = 1e-3):
    """Logarithmic uncertainty bound, two variants.

    Returns (literal, derivative): ``literal`` evaluates the printed
    inequality as stated; ``derivative`` evaluates the one-sided
    difference quotient of the weighted-norm functional at alpha = h,
    which must be <= 0 up to tolerance because alpha = 0 is an equality.
    The derivative variant is the gated one.
    """
    _require_stride1(plan)
    if marginal is None:
        if field is None:
            field = stqolct_forward(f, plan, route)
        marginal = field_w_energy_map(field)
    w_radii = _frequency_radii(plan)
    x_radii = np.hypot(plan.ax1.coords[:, None], plan.ax2.coords[None, :])
    sig_energy = np.sum(f.data * f.data, axis=-1)
    win_sq = l2_norm(plan.window) ** 2
    b1b2 = abs(plan.qolct.params1.b * plan.qolct.params2.b)
    four_pi_sq = 4.0 * math.pi**2

    lhs_lit = (float(np.sum(np.log(w_radii) * marginal.values)) * marginal.cell_area
               + win_sq / four_pi_sq
               * float(np.sum(np.log(x_radii) * sig_energy)) * f.cell_area)
    rhs_lit = ((log_up_constant() + math.log(b1b2)) / four_pi_sq
               * win_sq * float(np.sum(sig_energy)) * f.cell_area)
    literal = InequalityResult(
        name="log-up-literal",
        params={},
        lhs=lhs_lit, rhs=rhs_lit, margin=lhs_lit - rhs_lit, tolerance=0.0,
        passed=bool(lhs_lit >= rhs_lit),
    )

    quotient = (_pitt_lhs(marginal, w_radii, h) - _pitt_rhs(f, plan, h)) / h
    tol = 1e-6
    derivative = InequalityResult(
        name="log-up-derivative",
        params={"h": h},
        lhs=quotient, rhs=0.0, margin=-quotient, tolerance=tol,
        passed=bool(quotient <= tol),
    )
    return literal, derivative


@dataclass(frozen=True)
class HardyFit:
    """Gaussian-decay fit of a magnitude field: ln m ~ const - beta*|w|^2."""

    beta: float
    r2: float
    slope: float
    count: int


def hardy_decay_fit(magnitude, w1_coords, w2_coords, radius,
                    offset=(0.0, 0.0), scale=(1.0, 1.0)) -> HardyFit:
    """Least-squares decay-rate fit on the rescaled argument (w - offset)/scale.

    Fits ln(magnitude) against |w'|^2 over the disk |w'| <= radius.  A low
    r2 means the magnitude is not Gaussian-shaped there and beta carries
    no meaning; callers should treat such fits as "no Gaussian decay"
    rather than asserting on beta.
    """
    magnitude = np.asarray(magnitude, dtype=float)
    w1p = (np.asarray(w1_coords, dtype=float) - offset[0]) / scale[0]
    w2p = (np.asarray(w2_coords, dtype=float) - offset[1]) / scale[1]
    rsq = w1p[:, None] ** 2 + w2p[None, :] ** 2
    if magnitude.shape != rsq.shape:
        raise ShapeError(f"magnitude shape {magnitude.shape} does not match the "
                         f"frequency grid {rsq.shape}")
    mask = rsq <= radius * radius
    if mask.sum() < 3:
        raise ParameterError(f"fit region |w'| <= {radius} holds fewer than 3 samples")
    m = magnitude[mask]
    if np.any(m <= 0.0):
        raise ParameterError("fit region contains nonpositive magnitudes")
    x = rsq[mask]
    y = np.log(m)
    x_c = x - x.mean()
    var = float(np.sum(x_c * x_c))
    if var == 0.0:
        raise ParameterError("fit region has no radial spread")
    slope = float(np.sum(x_c * y)) / var
    resid = y - (y.mean() + slope * x_c)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid * resid))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return HardyFit(beta=abs(slope), r2=r2, slope=slope, count=int(mask.sum()))


@dataclass(frozen=True)
class BeurlingIntegral:
    """Value of the growth-weighted double integral plus a saturation flag."""

    value: float
    saturated: bool


def _log_magnitude(data):
    """log of the pointwise quaternion modulus, safe against |.|^2 overflow."""
    peak = np.max(np.abs(data), axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = data / peak[..., None]
        out = np.log(peak) + 0.5 * np.log(np.sum(scaled * scaled, axis=-1))
    return np.where(peak > 0, out, -np.inf)


def beurling_integral(f: GridSignal2D, plan: StqolctPlan, d: float,
                      u=(0.0, 0.0)) -> BeurlingIntegral:
    """Diagnostic double integral with kernel e^(|x||w|) / (1+|x|+|w|)^d.

    Evaluated at one window translation u (default 0).  All terms are
    accumulated in log space; if any term (or the total) exceeds the
    double range the result saturates to inf and the flag is set, rather
    than raising.  Finiteness of this integral characterizes signals
    non-constructively, so the value is recorded as a statistic, not
    gated as a pass/fail check.
    """
    if d < 0:
        raise ParameterError(f"d must be nonnegative, got {d}")
    g = modified_signal(f, plan.window, u)
    coeff = qolct_forward(g, plan.qolct, mode="fast")
    x_r = np.hypot(plan.ax1.coords[:, None], plan.ax2.coords[None, :]).ravel()
    w_r = np.hypot(plan.qolct.w1.coords[:, None], plan.qolct.w2.coords[None, :]).ravel()
    log_weight = math.log(f.cell_area) + math.log(coeff.cell_area)
    log_a = _log_magnitude(g.data).ravel()
    log_b = _log_magnitude(coeff.data).ravel()
    max_term = -np.inf
    chunks = []
    chunk_rows = max(1, (1 << 20) // max(len(w_r), 1))
    for start in range(0, len(x_r), chunk_rows):
        stop = min(start + chunk_rows, len(x_r))
        terms = (log_a[start:stop, None] + log_b[None, :]
                 + np.outer(x_r[start:stop], w_r)
                 - d * np.log1p(x_r[start:stop, None] + w_r[None, :])
                 + log_weight)
        m = float(terms.max()) if terms.size else -np.inf
        max_term = max(max_term, m)
        if np.isfinite(m):
            chunks.append(m + math.log(float(np.sum(np.exp(terms - m)))))
    if not chunks:
        return BeurlingIntegral(0.0, False)
    top = max(chunks)
    log_total = top + math.log(sum(math.exp(c - top) for c in chunks))
    saturated = bool(max_term > 709.0 or log_total > 709.0)
    with np.errstate(over="ignore"):
        value = float(np.exp(log_total))
    return BeurlingIntegral(value, saturated)
