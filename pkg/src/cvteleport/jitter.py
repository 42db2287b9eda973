"""Residual phase-lock jitter and its effect on the output noise.

Four servo loops can each sit slightly off quadrature: the relative phase
at the entangling beamsplitter (theta_e), the sender's two homodyne locks
(theta_ax, theta_ap) and the receiver's displacement phase (theta_b). At
fixed angles the chain stays Gaussian, so the exact output follows from a
small coefficient table over the unit-variance inputs; averaging over slow
zero-mean Gaussian jitter of the angles gives the quadratic expansion used
in the noise budget. Angles are radians internally; use
PhaseJitter.from_degrees at the interface.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .epr import SqueezingParams
from .teleporter import EfficiencyBudget, GainSettings, _sender_arm

SQRT2 = math.sqrt(2.0)

# quadratic expansion error grows as theta^4 past roughly this rms
SMALL_ANGLE_LIMIT = 0.2


@dataclass(frozen=True)
class PhaseJitter:
    """RMS lock-angle fluctuations, radians."""

    theta_e_rms: float = 0.0
    theta_ax_rms: float = 0.0
    theta_ap_rms: float = 0.0
    theta_b_rms: float = 0.0

    def __post_init__(self):
        for name in ("theta_e_rms", "theta_ax_rms", "theta_ap_rms", "theta_b_rms"):
            value = getattr(self, name)
            if value < 0.0:
                raise ValueError(f"{name} must be >= 0, got {value!r}")
            if value > SMALL_ANGLE_LIMIT:
                warnings.warn(
                    f"{name} = {value:.3f} rad exceeds the small-angle regime "
                    f"({SMALL_ANGLE_LIMIT} rad); the quadratic average degrades",
                    stacklevel=3,
                )

    @classmethod
    def from_degrees(cls, theta_e: float = 0.0, theta_ax: float = 0.0,
                     theta_ap: float = 0.0, theta_b: float = 0.0):
        return cls(math.radians(theta_e), math.radians(theta_ax),
                   math.radians(theta_ap), math.radians(theta_b))


def _coefficient_rows(squeezing, theta_e, theta_ax, theta_ap, theta_b):
    # broadcastable coefficient expressions of sqrt(2)*x_out and sqrt(2)*p_out
    # over (x1_0, p1_0, x2_0, p2_0, x_in, p_in); unit-gain lossless chain
    em = math.exp(-squeezing.r_minus)
    ep = math.exp(squeezing.r_plus)
    ce, se = np.cos(theta_e), np.sin(theta_e)
    cax, sax = np.cos(theta_ax), np.sin(theta_ax)
    cap, sap = np.cos(theta_ap), np.sin(theta_ap)
    cb, sb = np.cos(theta_b), np.sin(theta_b)
    x_row = (
        (cb - cax) * ep,
        (sb - sax) * em,
        (ce * (cb + cax) - se * (sb + sax)) * em,
        (se * (cb + cax) + ce * (sb + sax)) * ep,
        SQRT2 * cax,
        SQRT2 * sax,
    )
    p_row = (
        -(sb + sap) * ep,
        (cb + cap) * em,
        (se * (cap - cb) + ce * (sap - sb)) * em,
        (se * (sap - sb) + ce * (cb - cap)) * ep,
        SQRT2 * cap,
        -SQRT2 * sap,
    )
    return x_row, p_row


def output_coefficients(squeezing: SqueezingParams, theta_e: float = 0.0,
                        theta_ax: float = 0.0, theta_ap: float = 0.0,
                        theta_b: float = 0.0) -> np.ndarray:
    """Exact coefficient table at fixed lock angles.

    Returns a (2, 6) array: rows are sqrt(2)*x_out and sqrt(2)*p_out,
    columns the unit-variance inputs (x1_0, p1_0, x2_0, p2_0, x_in, p_in).
    """
    x_row, p_row = _coefficient_rows(squeezing, theta_e, theta_ax, theta_ap, theta_b)
    return np.array([x_row, p_row], dtype=float)


def variance_at_angles(squeezing: SqueezingParams, theta_e=0.0, theta_ax=0.0,
                       theta_ap=0.0, theta_b=0.0, quad: str = "x"):
    """Exact output variance at fixed lock angles; broadcasts over angle arrays."""
    x_row, p_row = _coefficient_rows(squeezing, theta_e, theta_ax, theta_ap, theta_b)
    row = x_row if quad == "x" else p_row
    if quad not in ("x", "p"):
        raise ValueError(f"quad must be 'x' or 'p', got {quad!r}")
    total = sum(c * c for c in row)
    return 0.5 * total


def _jitter_weight(jitter: PhaseJitter, quad: str) -> float:
    # quadratic weight transferred from the squeezed to the anti-squeezed
    # term; the entangling-beamsplitter phase only disturbs x (beam 2's
    # squeezed quadrature feeds the x correlation) and carries 4x the weight
    # of the receiver phase
    if quad == "x":
        return (0.5 * jitter.theta_ax_rms ** 2 + 0.5 * jitter.theta_b_rms ** 2
                + 2.0 * jitter.theta_e_rms ** 2)
    if quad == "p":
        return 0.5 * jitter.theta_ap_rms ** 2 + 0.5 * jitter.theta_b_rms ** 2
    raise ValueError(f"quad must be 'x' or 'p', got {quad!r}")


def victor_variance_jitter(squeezing: SqueezingParams, jitter: PhaseJitter,
                           quad: str = "x") -> float:
    """Jitter-averaged output variance, ideal chain at unit gain.

    Quadratic in the rms angles: weight w moves from the squeezed term onto
    the anti-squeezed one, sigma = 1 + (2 - w) sigma_minus + w sigma_plus.
    """
    w = _jitter_weight(jitter, quad)
    return 1.0 + (2.0 - w) * squeezing.sigma_minus + w * squeezing.sigma_plus


def victor_lo_scan(squeezing: SqueezingParams, jitter: PhaseJitter, theta_v):
    """Verifier variance at local-oscillator angle theta_v (radians).

    Interpolates between the x and p values as cos^2/sin^2; broadcasts over
    theta_v arrays. Flat when the two quadratures match (no jitter, or
    jitter hitting both equally).
    """
    sx = victor_variance_jitter(squeezing, jitter, "x")
    sp = victor_variance_jitter(squeezing, jitter, "p")
    tv = np.asarray(theta_v, dtype=float)
    out = sx * np.cos(tv) ** 2 + sp * np.sin(tv) ** 2
    return float(out) if out.ndim == 0 else out


def victor_variance_lossy_jitter(squeezing: SqueezingParams,
                                 budget: EfficiencyBudget,
                                 gains: GainSettings | None = None,
                                 jitter: PhaseJitter | None = None,
                                 quad: str = "x") -> float:
    """Approximate combination of the loss budget with lock jitter.

    The jitter average transfers fraction w/2 of the squeezed-quadrature
    weight of the lossy-chain variance onto the anti-squeezed one. This is
    exact in both limits (zero jitter, or ideal chain at unit gain); in
    between it neglects jitter acting on the loss-port vacua, a correction
    of second order on top of second order. Not a closed form from the
    noise-budget derivation itself; the Monte Carlo chain is the reference
    for the combined case.
    """
    if gains is None:
        gains = GainSettings()
    if jitter is None:
        jitter = PhaseJitter()
    g = gains.g_x if quad == "x" else gains.g_p
    xi_a, eta_a = _sender_arm(budget, quad)
    if xi_a == 0.0 or eta_a == 0.0:
        raise ValueError(f"sender {quad} arm has zero efficiency, variance diverges")
    epr = budget.r_b * budget.xi4 * budget.xi5 * budget.eta_v
    sig = g * budget.xi1
    base = (1.0 - epr * epr - sig * sig
            + 2.0 * g * g / (xi_a * xi_a * eta_a * eta_a))
    c_minus = 0.5 * (sig + epr) ** 2
    c_plus = 0.5 * (sig - epr) ** 2
    shift = 0.5 * _jitter_weight(jitter, quad) * c_minus
    return (base + (c_minus - shift) * squeezing.sigma_minus
            + (c_plus + shift) * squeezing.sigma_plus)
