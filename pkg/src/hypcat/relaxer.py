"""Direct discrete minimization of the hanging-chain potential.

A :class:`DiscreteChain` is a polyline of chart points with fixed
endpoints and fixed total length. :func:`relax` runs projected gradient
descent on the midpoint-rule energy, re-projecting onto the length
constraint after every step; converged chains are an independent
variational oracle for the unit-speed solutions of
:mod:`hypcat.catenary`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import charts
from .catenary import CatenaryType, catenary_kappa, weight_partials
from .charts import ChartId, ChartJet2, ChartPoint
from .errors import DomainError
from .lorentz import inner1


@dataclass
class DiscreteChain:
    """Fixed-endpoint, fixed-length polyline in the geodesic-orthogonal chart."""

    ctype: CatenaryType
    r: float
    nodes: np.ndarray  # (n+1, 2) chart points; first and last are immutable
    target_length: float
    lambda_est: float | None = None

    def copy_with(self, nodes):
        return DiscreteChain(self.ctype, self.r, nodes, self.target_length,
                             self.lambda_est)


@dataclass
class RelaxOptions:
    max_iter: int = 200_000
    step_size: float | None = None  # default 1e-2 * r
    grad_tol: float = 1e-8
    keep_energy_trace: bool = False  # record energy after each accepted step


@dataclass
class RelaxReport:
    iterations: int
    final_energy: float
    grad_norm: float
    max_kappa_residual: float
    status: str  # Converged | MaxIter | Infeasible
    taut: bool = False
    energy_trace: list | None = None


def _segment_data(chain):
    """Midpoints, deltas and midpoint-rule segment lengths."""
    nodes = chain.nodes
    mids = 0.5 * (nodes[:-1] + nodes[1:])
    delta = nodes[1:] - nodes[:-1]
    ch = np.cosh(mids[:, 0] / chain.r)
    lens = np.sqrt(delta[:, 0] ** 2 + (ch * delta[:, 1]) ** 2)
    return mids, delta, lens


def chain_length(chain):
    """Total chart-metric length, midpoint rule per segment."""
    _, _, lens = _segment_data(chain)
    return float(lens.sum())


def chain_energy(chain, lam=0.0):
    """Midpoint-rule value of the weighted length functional."""
    mids, _, lens = _segment_data(chain)
    f, _, _ = weight_partials(chain.ctype, mids[:, 0], mids[:, 1], chain.r)
    w = f + lam
    if np.any(w <= 0.0):
        raise DomainError("nonpositive weight at a segment midpoint")
    return float((w * lens).sum())


def _gradients(chain, lam=0.0):
    """Analytic gradients of energy and length w.r.t. all nodes.

    Endpoint rows are zeroed (fixed nodes). Raises DomainError when a
    midpoint weight is not positive.
    """
    r = chain.r
    mids, delta, lens = _segment_data(chain)
    f, fu, fv = weight_partials(chain.ctype, mids[:, 0], mids[:, 1], r)
    w = f + lam
    if np.any(w <= 0.0):
        raise DomainError("nonpositive weight at a segment midpoint")
    ch = np.cosh(mids[:, 0] / r)
    G = ch * ch
    G_u = np.sinh(2.0 * mids[:, 0] / r) / r
    du, dv = delta[:, 0], delta[:, 1]

    # dL/d(node) per segment: midpoint metric term +/- chord term
    mid_u = 0.5 * G_u * dv * dv / (2.0 * lens)
    chord_u = du / lens
    chord_v = G * dv / lens
    dL_left = np.stack([mid_u - chord_u, -chord_v], axis=1)
    dL_right = np.stack([mid_u + chord_u, chord_v], axis=1)

    def assemble(weight_seg, dw_u, dw_v):
        g = np.zeros_like(chain.nodes)
        g[:-1] += weight_seg[:, None] * dL_left
        g[1:] += weight_seg[:, None] * dL_right
        half = 0.5 * lens
        g[:-1, 0] += dw_u * half
        g[1:, 0] += dw_u * half
        g[:-1, 1] += dw_v * half
        g[1:, 1] += dw_v * half
        g[0] = 0.0
        g[-1] = 0.0
        return g

    grad_e = assemble(w, fu, fv)
    grad_len = assemble(np.ones_like(w), np.zeros_like(w), np.zeros_like(w))
    return grad_e, grad_len


def _drop_tangential(nodes, grad):
    """Remove the component of a node gradient along the polyline direction."""
    out = grad.copy()
    t = nodes[2:] - nodes[:-2]
    n2 = (t * t).sum(axis=1)
    n2 = np.where(n2 > 0.0, n2, 1.0)
    coef = (grad[1:-1] * t).sum(axis=1) / n2
    out[1:-1] -= coef[:, None] * t
    return out


def geodesic_distance(a, b, r):
    """Exact geodesic distance between two chart points (u, v)."""
    pa = charts.psi(a[0], a[1], r)
    pb = charts.psi(b[0], b[1], r)
    c = -float(inner1(pa, pb)) / (r * r)
    return r * math.acosh(max(c, 1.0))


def _respace(chain):
    """Move nodes along the chain to equal chart-metric spacing.

    Positions are re-read from a cubic interpolant of the nodes over
    cumulative arc length, so re-spacing an already smooth, already
    uniform chain is a near-identity (a piecewise-linear re-read would
    shorten the chain a little on every pass and set a noise floor for
    the descent).
    """
    from scipy.interpolate import CubicSpline

    _, _, lens = _segment_data(chain)
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    total = cum[-1]
    targets = np.linspace(0.0, total, len(chain.nodes))
    spline = CubicSpline(cum, chain.nodes, axis=0)
    nodes = spline(targets)
    nodes[0] = chain.nodes[0]
    nodes[-1] = chain.nodes[-1]
    return chain.copy_with(nodes)


def _rescale_to_length(chain, tol=1e-13, max_newton=16):
    """Newton correction on a global bulge-scale parameter.

    Nodes are written as chord + scale*(nodes - chord) with the chord the
    uniform chart-linear interpolation of the endpoints; the scale is
    corrected until the midpoint-rule length matches the target.
    """
    nodes0 = chain.nodes
    m = len(nodes0)
    t = np.linspace(0.0, 1.0, m)[:, None]
    chord = nodes0[0] + t * (nodes0[-1] - nodes0[0])
    dev = nodes0 - chord
    scale = 1.0
    tol = tol * max(1.0, chain.target_length)

    def length_at(s):
        return chain_length(chain.copy_with(chord + s * dev))

    val = length_at(scale) - chain.target_length
    for _ in range(max_newton):
        if abs(val) <= tol:
            break
        # analytic d(length)/d(scale): pair the length gradient with the
        # deviation field (zero at the fixed endpoints)
        _, grad_len = _gradients(chain.copy_with(chord + scale * dev))
        slope = float((grad_len * dev).sum())
        if slope <= 0.0:
            raise DomainError("cannot correct chain length: flat scale response")
        scale -= val / slope
        val = length_at(scale) - chain.target_length
    if abs(val) > 1e-8:
        raise DomainError("length projection did not converge")
    return chain.copy_with(chord + scale * dev)


def _project(chain):
    return _rescale_to_length(_respace(chain))


def initial_chain(ctype, endpoint_a, endpoint_b, slack, n_segments, r,
                  target_length=None):
    """Feasible starting chain: chart-linear interpolation plus a sine bulge.

    The bulge points in the direction of decreasing weight (the sag
    side) and its amplitude is solved so the midpoint-rule length equals
    (1 + slack) times the endpoint geodesic distance (or the explicit
    target_length). Falls back to the opposite side when sagging would
    cross the reference plane. Targets at or below the endpoint distance
    return the straight chain; relax flags those taut or infeasible.
    """
    if n_segments < 2:
        raise ValueError("need at least 2 segments")
    if slack < 0.0:
        raise ValueError("slack must be nonnegative")
    dist = geodesic_distance(endpoint_a, endpoint_b, r)
    target = (1.0 + slack) * dist if target_length is None else float(target_length)
    t = np.linspace(0.0, 1.0, n_segments + 1)[:, None]
    base = np.asarray(endpoint_a, dtype=float) + t * (
        np.asarray(endpoint_b, dtype=float) - np.asarray(endpoint_a, dtype=float)
    )
    chain = DiscreteChain(ctype, r, base.copy(), target)
    if target <= dist:
        return chain

    mid = 0.5 * (np.asarray(endpoint_a) + np.asarray(endpoint_b))
    _, fu, _ = weight_partials(ctype, mid[0], mid[1], r)
    sag = -1.0 if float(fu) >= 0.0 else 1.0
    bump = np.sin(np.pi * t)

    def with_amp(amp):
        nodes = base.copy()
        nodes[:, 0] += amp * bump[:, 0]
        return chain.copy_with(nodes)

    def length_gap(amp):
        return chain_length(with_amp(amp)) - target

    from scipy.optimize import brentq

    for direction in (sag, -sag):
        hi = 0.1 * r
        ok = None
        for _ in range(40):
            cand = with_amp(direction * hi)
            f, _, _ = weight_partials(ctype, cand.nodes[:, 0], cand.nodes[:, 1], r)
            if np.any(f <= 0.0):
                break
            if length_gap(direction * hi) > 0.0:
                ok = hi
                break
            hi *= 1.5
        if ok is None:
            continue
        amp = brentq(lambda a: length_gap(direction * a), 0.0, ok, xtol=1e-14)
        return _project(with_amp(direction * amp))
    raise DomainError("could not build a feasible bulged starting chain")


def relax(chain0, opts=None):
    """Projected gradient descent on the chain energy at fixed length.

    Interior nodes move along the constraint-projected analytic
    gradient; each accepted step is followed by re-spacing to equal
    segment lengths plus a Newton length correction. Backtracking halves
    the step whenever the projected energy fails to decrease or the
    weight turns nonpositive. Terminates when the projected gradient
    norm drops below ``opts.grad_tol`` (status Converged) or the
    iteration budget runs out (status MaxIter). Infeasible targets
    (shorter than the endpoint distance) return status Infeasible.
    """
    opts = opts or RelaxOptions()
    r = chain0.r
    step0 = opts.step_size if opts.step_size is not None else 1e-2 * r
    dist = geodesic_distance(chain0.nodes[0], chain0.nodes[-1], r)
    if chain0.target_length < dist * (1.0 - 1e-12):
        report = RelaxReport(0, math.nan, math.nan, math.nan, "Infeasible")
        return chain0, report
    if chain0.target_length <= dist * (1.0 + 1e-8):
        return _relax_taut(chain0, opts, step0)

    chain = _project(chain0.copy_with(chain0.nodes.copy()))
    energy = chain_energy(chain)
    trace = [energy] if opts.keep_energy_trace else None
    step = step0
    grad_norm = math.inf
    status = "MaxIter"
    lam_hat = 0.0
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        grad_e, grad_len = _gradients(chain)
        # node-sliding directions are owned by the re-spacing retraction,
        # so both the descent direction and the stationarity measure live
        # in the per-node normal complement
        grad_e = _drop_tangential(chain.nodes, grad_e)
        grad_len = _drop_tangential(chain.nodes, grad_len)
        gl2 = float((grad_len * grad_len).sum())
        if gl2 > 0.0:
            lam_hat = -float((grad_e * grad_len).sum()) / gl2
            proj = grad_e + lam_hat * grad_len
        else:
            proj = grad_e
        grad_norm = float(np.sqrt((proj * proj).sum()))
        if grad_norm <= opts.grad_tol:
            status = "Converged"
            break

        # monotone non-increase of energy across accepted steps, modulo
        # floating-point resolution of the energy sum: once the predicted
        # decrease step*|g|^2 drops below that resolution the comparison
        # carries no information and the (contractive) step is taken as is
        noise = 64.0 * np.finfo(float).eps * max(1.0, abs(energy))
        accepted = False
        while step > 1e-14 * step0:
            trial = chain.copy_with(chain.nodes - step * proj)
            try:
                trial = _project(trial)
                e_new = chain_energy(trial)
            except DomainError:
                step *= 0.5
                continue
            if step * grad_norm * grad_norm <= noise or e_new <= energy + noise:
                chain, energy = trial, min(e_new, energy)
                if trace is not None:
                    trace.append(e_new)
                accepted = True
                step = min(step * 1.1, 5.0 * step0)
                break
            step *= 0.5
        if not accepted:
            # no admissible step at floating-point resolution
            status = "MaxIter"
            break

    chain.lambda_est = lam_hat
    return _finish(chain, iterations, energy, grad_norm, status, taut=False,
                   trace=trace)


def _relax_taut(chain0, opts, step0):
    """Zero-slack case: the admissible set is the length-minimizing
    polyline, so descend on the length itself (the catenary law is not
    expected to hold; the report carries the taut flag)."""
    chain = _respace(chain0.copy_with(chain0.nodes.copy()))
    length = chain_length(chain)
    step = step0
    grad_norm = math.inf
    status = "MaxIter"
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        _, grad_len = _gradients(chain)
        grad_norm = float(np.sqrt((grad_len * grad_len).sum()))
        if grad_norm <= opts.grad_tol:
            status = "Converged"
            break
        noise = 64.0 * np.finfo(float).eps * max(1.0, abs(length))
        accepted = False
        while step > 1e-14 * step0:
            trial = _respace(chain.copy_with(chain.nodes - step * grad_len))
            try:
                l_new = chain_length(trial)
            except DomainError:
                step *= 0.5
                continue
            if step * grad_norm * grad_norm <= noise or l_new <= length + noise:
                chain, length = trial, min(l_new, length)
                accepted = True
                step = min(step * 1.1, 5.0 * step0)
                break
            step *= 0.5
        if not accepted:
            status = "MaxIter"
            break
    chain.lambda_est = 0.0
    energy = chain_energy(chain)
    return _finish(chain, iterations, energy, grad_norm, status, taut=True)


def _finish(chain, iterations, energy, grad_norm, status, taut, trace=None):
    residuals = []
    for i in range(1, len(chain.nodes) - 1):
        try:
            residuals.append(abs(discrete_kappa_residual(chain, i)))
        except DomainError:
            residuals.append(math.inf)
    report = RelaxReport(
        iterations=iterations,
        final_energy=energy,
        grad_norm=grad_norm,
        max_kappa_residual=max(residuals) if residuals else math.nan,
        status=status,
        taut=taut,
        energy_trace=trace,
    )
    return chain, report


def fit_lambda(chain):
    """Least-squares multiplier from the curvature law across interior nodes."""
    num = 0.0
    den = 0.0
    for i in range(1, len(chain.nodes) - 1):
        jet = _stencil_jet(chain, i)
        kap = charts.kappa_semigeo(jet)
        u, v = chain.nodes[i]
        f, fu, fv = weight_partials(chain.ctype, u, v, chain.r)
        ch = math.cosh(u / chain.r)
        speed = math.sqrt(jet.du ** 2 + ch * ch * jet.dv ** 2)
        law_num = (jet.dv * fu * ch - jet.du * fv / ch) / speed
        # law: kap * (f + lam) = law_num  ->  LS over lam
        num += kap * (law_num - kap * f)
        den += kap * kap
    if den == 0.0:
        return 0.0
    return float(num / den)


def _stencil_jet(chain, i):
    """2-jet at interior node i from the arc-length three-point stencil."""
    if not (1 <= i <= len(chain.nodes) - 2):
        raise ValueError("interior node index required")
    _, _, lens = _segment_data(chain)
    h1, h2 = float(lens[i - 1]), float(lens[i])
    if h1 <= 0.0 or h2 <= 0.0:
        raise DomainError("degenerate stencil: repeated nodes")
    fm, f0, fp = chain.nodes[i - 1], chain.nodes[i], chain.nodes[i + 1]
    denom = h1 * h2 * (h1 + h2)
    d1 = (h1 * h1 * fp - h2 * h2 * fm + (h2 * h2 - h1 * h1) * f0) / denom
    d2 = 2.0 * (h1 * fp + h2 * fm - (h1 + h2) * f0) / denom
    pt = ChartPoint(ChartId.SEMI_GEODESIC, float(f0[0]), float(f0[1]), chain.r)
    return ChartJet2(pt, float(d1[0]), float(d1[1]), float(d2[0]), float(d2[1]))


def discrete_kappa_residual(chain, i, lam=None):
    """Curvature-law defect at interior node i (finite-difference jet).

    Uses the chain's converged multiplier estimate when available, a
    least-squares fit otherwise.
    """
    jet = _stencil_jet(chain, i)
    if lam is None:
        lam = chain.lambda_est if chain.lambda_est is not None else fit_lambda(chain)
    kap = charts.kappa_semigeo(jet)
    target = catenary_kappa(
        chain.ctype, chain.nodes[i, 0], chain.nodes[i, 1],
        jet.du, jet.dv, chain.r, lam,
    )
    return float(kap - target)
