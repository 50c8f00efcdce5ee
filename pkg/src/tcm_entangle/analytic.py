"""Closed-form time-dependent amplitudes for both initial-state families.

This is the second, independent computation path; it never touches the
numerical propagator.  All formulas are exact on resonance
(omega_0 = omega_a + omega_b) with dimensionless time T = g*t and
lam = omega_0/g entering phases only.

PSI family (support {|eg00>, |ge00>, |gg11>}, two-excitation sector):

    x1 = (Lam/4) [theta+ (L+ - L- e^{i kappa T}) + 2 Xi theta-]
    x2 = (Lam/4) [theta+ (L+ - L- e^{i kappa T}) - 2 Xi theta-]
    x3 = (Lam theta+ / kappa) (1 - e^{i kappa T})

with kappa = sqrt(8 + eps^2), L+- = eps/kappa +- 1,
theta+- = cos(a) +- sin(a), Lam = e^{-i kappa L+ T / 2} and
Xi = e^{i (3 L+ - 2) kappa T / 2}.

PHI family (support {|ee00>, |gg00>, |ge11>, |eg11>, |gg22>}):

    x1 = (Gam/4) (M+ - (eps/eta) M- + 2 e^{i (eps+eta) T / 2})
    x2 = e^{i lam T} sin(a)
    x3 = x4 = Gam M- / eta
    x5 = (Gam/4) (M+ - (eps/eta) M- - 2 e^{i (eps+eta) T / 2})

with eta = sqrt(16 + eps^2), M+- = 1 +- e^{i eta T} and
Gam = cos(a) e^{-i (2 lam + eps + eta) T / 2}.

Both sets agree with exact propagation to machine precision for every
(alpha, eps, T); see the oracle-equivalence tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Basis, Family, derive_constants


@dataclass(frozen=True)
class CoefficientSet:
    """Closed-form amplitudes at one time, with the inputs they came from.

    ``xs`` holds (x1, x2, x3) for PSI and (x1, ..., x5) for PHI, with
    x3 == x4 for PHI by construction.
    """

    family: Family
    xs: tuple[complex, ...]
    alpha: float
    epsilon: float
    lam: float
    T: float


def _check_domain(alpha: float, epsilon: float):
    if not 0.0 <= alpha <= math.pi / 2:
        raise ValueError(f"alpha must lie in [0, pi/2], got {alpha}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")


def psi_amplitudes(alpha: float, epsilon: float, T):
    """(x1, x2, x3) for the PSI family; T may be a scalar or array."""
    _check_domain(alpha, epsilon)
    T = np.asarray(T, dtype=float)
    d = derive_constants(epsilon, alpha)
    k = d.kappa
    lam_phase = np.exp(-0.5j * k * d.L_plus * T)
    xi = np.exp(0.5j * (3.0 * d.L_plus - 2.0) * k * T)
    eikt = np.exp(1j * k * T)
    core = d.theta_plus * (d.L_plus - d.L_minus * eikt)
    x1 = lam_phase / 4.0 * (core + 2.0 * xi * d.theta_minus)
    x2 = lam_phase / 4.0 * (core - 2.0 * xi * d.theta_minus)
    x3 = lam_phase * d.theta_plus / k * (1.0 - eikt)
    return x1, x2, x3


def phi_amplitudes(alpha: float, epsilon: float, lam: float, T):
    """(x1, x2, x3, x4, x5) for the PHI family; T may be scalar or array."""
    _check_domain(alpha, epsilon)
    T = np.asarray(T, dtype=float)
    eta = derive_constants(epsilon, alpha).eta
    gam = math.cos(alpha) * np.exp(-0.5j * (2.0 * lam + epsilon + eta) * T)
    eieta = np.exp(1j * eta * T)
    m_plus, m_minus = 1.0 + eieta, 1.0 - eieta
    half_split = np.exp(0.5j * (epsilon + eta) * T)
    sym = m_plus - (epsilon / eta) * m_minus
    x1 = gam / 4.0 * (sym + 2.0 * half_split)
    x2 = np.exp(1j * lam * T) * math.sin(alpha)
    x3 = gam * m_minus / eta
    x5 = gam / 4.0 * (sym - 2.0 * half_split)
    return x1, x2, x3, x3, x5


def psi_coefficients(alpha: float, epsilon: float, T: float) -> CoefficientSet:
    """Closed-form PSI amplitudes at a single dimensionless time."""
    x1, x2, x3 = psi_amplitudes(alpha, epsilon, T)
    return CoefficientSet(family=Family.PSI, xs=(complex(x1), complex(x2), complex(x3)),
                          alpha=alpha, epsilon=epsilon, lam=0.0, T=T)


def phi_coefficients(alpha: float, epsilon: float, lam: float, T: float) -> CoefficientSet:
    """Closed-form PHI amplitudes at a single dimensionless time."""
    xs = phi_amplitudes(alpha, epsilon, lam, T)
    return CoefficientSet(family=Family.PHI, xs=tuple(complex(x) for x in xs),
                          alpha=alpha, epsilon=epsilon, lam=lam, T=T)


def assemble_state(coefs: CoefficientSet, basis: Basis) -> np.ndarray:
    """Place the closed-form amplitudes on their basis kets.

    PSI: x1|eg00> + x2|ge00> + x3|gg11>.
    PHI: x1|ee00> + x2|gg00> + x3|ge11> + x4|eg11> + x5|gg22>.
    """
    if basis.n_max < 1 or (coefs.family is Family.PHI and basis.n_max < 2):
        raise ValueError(f"basis n_max={basis.n_max} too small for {coefs.family.value}")
    psi = np.zeros(basis.size, dtype=complex)
    if coefs.family is Family.PSI:
        x1, x2, x3 = coefs.xs
        psi[basis.index("e", "g", 0, 0)] = x1
        psi[basis.index("g", "e", 0, 0)] = x2
        psi[basis.index("g", "g", 1, 1)] = x3
    else:
        x1, x2, x3, x4, x5 = coefs.xs
        psi[basis.index("e", "e", 0, 0)] = x1
        psi[basis.index("g", "g", 0, 0)] = x2
        psi[basis.index("g", "e", 1, 1)] = x3
        psi[basis.index("e", "g", 1, 1)] = x4
        psi[basis.index("g", "g", 2, 2)] = x5
    return psi
