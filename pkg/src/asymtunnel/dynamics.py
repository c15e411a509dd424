"""Time evolution in the biorthogonal representation.

A ket is expanded on right eigenvectors with coefficients ``c_L`` and a bra on
left eigenvectors with coefficients ``c_R``. The ket coefficients pick up pure
phases, the bra coefficients mix (the bra evolves with ``H^dagger``, which the
left vectors do not diagonalize). Norms ``<psi(t)|psi(t)>`` are therefore
time dependent, and physical probabilities are obtained after dividing the
ket and bra by the square root of that norm.

Closed-form probabilities (``prob_ab`` and friends) take ``beta`` and the
phase ``omega * t`` and broadcast over arrays. ``propagate_numeric`` and the
``numeric_*`` helpers rebuild the same quantities from a matrix exponential of
the Hamiltonian without touching the eigensystem; they serve as the oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._validation import check_square, check_vector
from .errors import NonPositiveNorm
from .model import ModelParams, Site, hamiltonian_2x2, number_operator
from .spectral import BiorthogonalSystem, eigensystem_analytic

__all__ = [
    "SITE_A",
    "SITE_B",
    "CoefficientState",
    "DensityMatrix",
    "SiteState",
    "amplitude",
    "decompose",
    "density_matrix",
    "evolve",
    "evolve_cL",
    "evolve_cR",
    "norm_a",
    "norm_b",
    "norm_factor",
    "numeric_norm_factor",
    "numeric_occupation",
    "numeric_probability",
    "occupation",
    "ode_residual_cR",
    "prob_aa",
    "prob_ab",
    "prob_ba",
    "prob_bb",
    "probability",
    "probability_ratio",
    "propagate_bra_numeric",
    "propagate_numeric",
    "ratio",
]

NORM_FLOOR = 1e-12
# Relative size of Im<psi|psi> tolerated before the norm is declared complex.
NORM_IMAG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SiteState:
    """A state vector in the (|10>, |01>) single-excitation basis."""

    components: np.ndarray

    def __post_init__(self):
        comps = check_vector(self.components, 2)
        if not np.any(comps != 0):
            raise ValueError("site state needs at least one nonzero component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def at(cls, site) -> "SiteState":
        vec = np.zeros(2, dtype=complex)
        vec[Site(site).index] = 1.0
        return cls(vec)


SITE_A = SiteState.at(Site.A)
SITE_B = SiteState.at(Site.B)


def _as_site_state(state) -> SiteState:
    if isinstance(state, SiteState):
        return state
    if isinstance(state, (str, Site)):
        return SiteState.at(state)
    return SiteState(state)


@dataclass(frozen=True, eq=False)
class CoefficientState:
    """Ket coefficients ``c_L`` and bra coefficients ``c_R`` at ``time``."""

    c_L: np.ndarray
    c_R: np.ndarray
    time: float = 0.0

    def pairing(self) -> complex:
        """``sum_s c_L^s c_R^s``, i.e. the unnormalized ``<psi|psi>``."""
        return complex(np.sum(self.c_L * self.c_R))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray
    normalized: bool

    @property
    def coherence(self) -> float:
        return float(abs(self.entries[0, 1]))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def expectation(self, operator) -> complex:
        return complex(np.trace(np.asarray(operator) @ self.entries))


# ---------------------------------------------------------------------------
# closed forms, functions of (beta, omega*t)


def norm_a(beta, wt):
    """``<psi_A(t)|psi_A(t)> = cos^2 + beta sin^2``."""
    return np.cos(wt) ** 2 + beta * np.sin(wt) ** 2


def norm_b(beta, wt):
    return np.cos(wt) ** 2 + np.sin(wt) ** 2 / beta


def prob_ab(beta, wt):
    s2 = beta * np.sin(wt) ** 2
    return s2 / (np.cos(wt) ** 2 + s2)


def prob_aa(beta, wt):
    c2 = np.cos(wt) ** 2
    return c2 / (c2 + beta * np.sin(wt) ** 2)


def prob_ba(beta, wt):
    s2 = np.sin(wt) ** 2 / beta
    return s2 / (np.cos(wt) ** 2 + s2)


def prob_bb(beta, wt):
    c2 = np.cos(wt) ** 2
    return c2 / (c2 + np.sin(wt) ** 2 / beta)


def ratio(beta, wt):
    """``P_AB / P_BA`` in simplified form, finite where both probabilities vanish."""
    c2, s2 = np.cos(wt) ** 2, np.sin(wt) ** 2
    return beta**2 * (c2 + s2 / beta) / (c2 + beta * s2)


def probability_ratio(params: ModelParams, t: float) -> float:
    return float(ratio(params.beta, params.omega * t))


# ---------------------------------------------------------------------------
# biorthogonal pipeline


def decompose(state, system: BiorthogonalSystem) -> CoefficientState:
    """Expansion coefficients of a site state at time 0.

    ``c_L^s = <<E^s|psi>`` and ``c_R^s = <psi|E^s>>``.
    """
    psi = _as_site_state(state).components
    c_L = system.left @ psi
    c_R = psi.conj() @ system.right
    return CoefficientState(c_L, c_R, 0.0)


def evolve_cL(state: CoefficientState, params: ModelParams, t: float) -> np.ndarray:
    """Advance the ket coefficients by ``t``: ``c_L^(+-) -> c_L^(+-) exp(-+ i omega t)``."""
    phase = cmath.exp(-1j * params.omega * t)
    return state.c_L * np.array([phase, phase.conjugate()])


def evolve_cR(state: CoefficientState, params: ModelParams, t: float) -> np.ndarray:
    """Advance the bra coefficients by ``t`` using the closed-form solution.

    ``c_R^(+-)(t) = +-(i / 2 beta) ((1 + beta^2) c^(+-) - (1 - beta^2) c^(-+)) sin(wt) + c^(+-) cos(wt)``

    The coefficients must refer to :func:`eigensystem_analytic` for ``params``.
    """
    beta = params.beta
    wt = params.omega * t
    cp, cm = state.c_R
    s, c = math.sin(wt), math.cos(wt)
    k = 1j / (2.0 * beta)
    plus = k * ((1.0 + beta**2) * cp - (1.0 - beta**2) * cm) * s + cp * c
    minus = -k * ((1.0 + beta**2) * cm - (1.0 - beta**2) * cp) * s + cm * c
    return np.array([plus, minus], dtype=complex)


def evolve(state: CoefficientState, params: ModelParams, t: float) -> CoefficientState:
    return CoefficientState(evolve_cL(state, params, t), evolve_cR(state, params, t), state.time + t)


def ode_residual_cR(
    state: CoefficientState, params: ModelParams, t: float = 0.0, h: float = 1e-6
) -> np.ndarray:
    """Residuals of the coupled first-order equations obeyed by ``c_R``.

    The time derivative of :func:`evolve_cR` is taken by central differences
    with step ``h`` at offset ``t`` from ``state``; the two returned numbers are

    ``(c+' + c-') - i |g| (1+alpha) beta^(-3/2) (c+ - c-)`` and
    ``(c+' - c-') - i |g| (1-alpha) beta^(3/2) (c+ + c-)``.

    A self-test for the closed form, not used in production paths.
    """
    ahead = evolve_cR(state, params, t + h)
    behind = evolve_cR(state, params, t - h)
    now = evolve_cR(state, params, t)
    dp, dm = (ahead - behind) / (2.0 * h)
    cp, cm = now
    g, a, b = abs(params.g), params.alpha, params.beta
    r_sum = (dp + dm) - 1j * g * (1.0 + a) * b**-1.5 * (cp - cm)
    r_diff = (dp - dm) - 1j * g * (1.0 - a) * b**1.5 * (cp + cm)
    return np.array([r_sum, r_diff])


def _checked_norm(value: complex) -> complex:
    if value.real <= NORM_FLOOR:
        raise NonPositiveNorm(f"norm factor {value!r} is not positive")
    if abs(value.imag) > NORM_IMAG_TOL * max(1.0, abs(value)):
        raise NonPositiveNorm(f"norm factor {value!r} has a non-negligible imaginary part")
    return value


def norm_factor(state_at_t: CoefficientState) -> complex:
    """``<psi(t)|psi(t)> = sum_s c_L^s(t) c_R^s(t)``, returned as a complex number.

    Raises :class:`NonPositiveNorm` when the real part is below ``1e-12`` or
    the imaginary part is not negligible.
    """
    return _checked_norm(state_at_t.pairing())


def amplitude(source, target, params: ModelParams, t: float, normalized: bool = True) -> complex:
    """Transition amplitude ``<target|source(t)>``, optionally renormalized.

    The normalized amplitude divides by ``sqrt(<target|target>)`` and
    ``sqrt(<source(t)|source(t)>)``.
    """
    system = eigensystem_analytic(params)
    start = decompose(source, system)
    d = decompose(target, system)
    c_L_t = evolve_cL(start, params, t)
    amp = complex(np.sum(d.c_R * c_L_t))
    if not normalized:
        return amp
    psi_norm = norm_factor(evolve(start, params, t)).real
    phi_norm = norm_factor(d).real
    return amp / (math.sqrt(phi_norm) * math.sqrt(psi_norm))


def probability(source, target, params: ModelParams, t: float, normalized: bool = True) -> float:
    return abs(amplitude(source, target, params, t, normalized)) ** 2


def density_matrix(
    state: CoefficientState, system: BiorthogonalSystem, normalized: bool = True
) -> DensityMatrix:
    """``rho = sum_{r,s} c_L^r c_R^s |E^r>> <<E^s|`` in the site basis."""
    ket = system.right @ state.c_L
    bra = state.c_R @ system.left
    rho = np.outer(ket, bra)
    if normalized:
        rho = rho / norm_factor(state).real
    return DensityMatrix(rho, normalized)


def occupation(source, site, params: ModelParams, t: float) -> float:
    """Expected occupation of ``site`` in the renormalized state evolved from ``source``."""
    system = eigensystem_analytic(params)
    state = evolve(decompose(source, system), params, t)
    rho = density_matrix(state, system, normalized=True)
    return rho.expectation(number_operator(site)).real


# ---------------------------------------------------------------------------
# matrix-exponential oracle


def propagate_numeric(hamiltonian, initial, t: float) -> np.ndarray:
    """Ket propagation ``exp(-i H t) psi(0)``."""
    h = check_square(hamiltonian)
    psi = check_vector(getattr(initial, "components", initial), h.shape[0])
    return scipy.linalg.expm(-1j * t * h) @ psi


def propagate_bra_numeric(hamiltonian, initial, t: float) -> np.ndarray:
    """Bra propagation ``<psi(0)| exp(+i H^dagger t)`` as a row vector."""
    h = check_square(hamiltonian)
    psi = check_vector(getattr(initial, "components", initial), h.shape[0])
    return psi.conj() @ scipy.linalg.expm(1j * t * h.conj().T)


def numeric_norm_factor(params: ModelParams, source, t: float) -> complex:
    h = hamiltonian_2x2(params)
    src = _as_site_state(source)
    return complex(propagate_bra_numeric(h, src, t) @ propagate_numeric(h, src, t))


def numeric_probability(
    params: ModelParams, source, target, t: float, normalized: bool = True
) -> float:
    h = hamiltonian_2x2(params)
    src, dst = _as_site_state(source), _as_site_state(target)
    ket = propagate_numeric(h, src, t)
    amp = dst.components.conj() @ ket
    prob = abs(amp) ** 2
    if not normalized:
        return prob
    bra = propagate_bra_numeric(h, src, t)
    psi_norm = _checked_norm(complex(bra @ ket)).real
    phi_norm = float(np.vdot(dst.components, dst.components).real)
    return prob / (psi_norm * phi_norm)


def numeric_occupation(params: ModelParams, source, site, t: float) -> float:
    h = hamiltonian_2x2(params)
    src = _as_site_state(source)
    ket = propagate_numeric(h, src, t)
    bra = propagate_bra_numeric(h, src, t)
    psi_norm = _checked_norm(complex(bra @ ket)).real
    return float((bra @ number_operator(site) @ ket).real / psi_norm)
