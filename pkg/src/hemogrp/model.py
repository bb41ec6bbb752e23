"""Physical model for blood flow in a compliant vessel.

Pressure law, characteristic speed, quasi-Riemann invariants, the
flux / coupling-term decomposition of the governing system, and the
spatial stiffness profiles k(x).  Units are CGS (cm, s, g) throughout.

All operations are pure and accept scalars or numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "StiffnessProfile",
    "ConstantProfile",
    "SineRampProfile",
    "SinusoidalProfile",
    "LinearProfile",
    "profile_from_name",
    "pressure",
    "wave_speed",
    "area_from_wavespeed",
    "invariants",
    "state_from_invariants",
    "flux",
    "coupling_terms",
    "primitive_slopes",
]


@dataclass(frozen=True)
class ModelParams:
    """Vessel/fluid constants.

    rho: blood density (g/cm^3), Ae: equilibrium cross-section (cm^2),
    m: pressure exponent.  m is restricted to (0, 2) \\ {2/3}: the
    closed-form fan coefficients divide by (m - 2) and (3m - 2).
    """

    rho: float = 1.05
    Ae: float = 1.0
    m: float = 0.5

    def __post_init__(self) -> None:
        if self.rho <= 0.0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if self.Ae <= 0.0:
            raise ValueError(f"Ae must be positive, got {self.Ae}")
        if not (0.0 < self.m < 2.0) or abs(self.m - 2.0 / 3.0) < 1e-12:
            raise ValueError(
                f"pressure exponent must lie in (0, 2) and differ from 2/3, got {self.m}"
            )


def _check_positive(name, value):
    if np.any(np.asarray(value) <= 0.0):
        raise ValueError(f"{name} must be positive")


def pressure(A, k, params: ModelParams):
    """Transmural pressure p = k ((A/Ae)^m - 1)."""
    _check_positive("area", A)
    _check_positive("stiffness", k)
    return k * ((np.asarray(A) / params.Ae) ** params.m - 1.0)


def wave_speed(A, k, params: ModelParams):
    """Characteristic speed c = sqrt((m k / rho) (A/Ae)^m)."""
    _check_positive("area", A)
    _check_positive("stiffness", k)
    return _wave_speed(A, k, params)


def _wave_speed(A, k, params: ModelParams):
    # unchecked kernel form
    return np.sqrt((params.m * k / params.rho) * (np.asarray(A) / params.Ae) ** params.m)


def area_from_wavespeed(c, k, params: ModelParams):
    """Exact inverse of :func:`wave_speed` for c > 0."""
    if np.any(np.asarray(c) <= 0.0):
        raise ValueError("wave speed must be positive")
    return _area_from_wavespeed(c, k, params)


def _area_from_wavespeed(c, k, params: ModelParams):
    return params.Ae * (params.rho * np.asarray(c) ** 2 / (params.m * k)) ** (1.0 / params.m)


def invariants(A, u, k, params: ModelParams):
    """Quasi-invariant pair (phi, psi) = u -/+ (2/m) c."""
    c = wave_speed(A, k, params)
    w = (2.0 / params.m) * c
    return u - w, u + w


def state_from_invariants(phi, psi, k, params: ModelParams):
    """Recover (A, u) from the invariant pair; requires psi > phi."""
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    if np.any(psi - phi <= 0.0):
        raise ValueError("psi must exceed phi (vacuum-like state)")
    c = params.m * (psi - phi) / 4.0
    A = _area_from_wavespeed(c, k, params)
    u = 0.5 * (phi + psi)
    return A, u


def flux(A, u, k, params: ModelParams):
    """Flux vector (A u, A u^2 + (m k / (rho (m+1))) A^(m+1) / Ae^m)."""
    _check_positive("area", A)
    A = np.asarray(A, dtype=float)
    m = params.m
    f1 = A * u
    f2 = A * u * u + (m * k / (params.rho * (m + 1.0))) * A ** (m + 1.0) / params.Ae ** m
    return f1, f2


def coupling_terms(A, u, x, profile: "StiffnessProfile", params: ModelParams):
    """Nonconservative-coupling data at (x, A, u).

    Returns (L22, dGdx, B1, B2): the nonzero entry of the coupling matrix,
    the derivative (0, k'(x)) of the coupled coefficient vector, and the
    right-hand sides of the quasi-diagonal characteristic form.
    """
    _check_positive("area", A)
    A = np.asarray(A, dtype=float)
    m = params.m
    k = profile.k(x)
    kp = profile.kprime(x)
    L22 = A ** (m + 1.0) / (params.rho * (m + 1.0) * params.Ae ** m) - A / params.rho
    c = _wave_speed(A, k, params)
    B1 = kp / (m * k) * (m * k / params.rho - u * c)
    B2 = kp / (m * k) * (m * k / params.rho + u * c)
    return L22, (np.zeros_like(np.asarray(kp, dtype=float)), kp), B1, B2


def primitive_slopes(A, u, sA, sq):
    """Convert conserved slopes (A', q') to (A', u') at state (A, u)."""
    return sA, (sq - u * sA) / A


class StiffnessProfile:
    """Spatial stiffness coefficient k(x) with analytic derivative.

    Segment membership is left-closed/right-open; an evaluation point
    landing exactly on a break point takes the left segment's derivative.
    """

    kind = "abstract"

    def k(self, x):
        raise NotImplementedError

    def kprime(self, x):
        raise NotImplementedError

    @property
    def is_constant(self) -> bool:
        return False


class ConstantProfile(StiffnessProfile):
    kind = "constant"

    def __init__(self, value: float):
        if value <= 0.0:
            raise ValueError("stiffness must be positive")
        self.value = float(value)

    def k(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.value)

    def kprime(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    @property
    def is_constant(self) -> bool:
        return True


class SineRampProfile(StiffnessProfile):
    """Plateau k_left, quarter-sine ramp on [x0, x1], plateau k_left (1 - drop).

    With the defaults this is the k(x) of the stenosis-like test cases:
    6.0 for x < 0.6, 6 (1 - 0.5 sin(2.5 pi (x - 0.6))) on [0.6, 0.8),
    3.0 beyond.
    """

    kind = "sine-ramp"

    def __init__(self, x0: float = 0.6, x1: float = 0.8, k_left: float = 6.0,
                 drop: float = 0.5):
        if x1 <= x0:
            raise ValueError("ramp interval must have positive width")
        if k_left <= 0.0 or not 0.0 <= drop < 1.0:
            raise ValueError("need k_left > 0 and drop in [0, 1)")
        self.x0, self.x1 = float(x0), float(x1)
        self.k_left = float(k_left)
        self.drop = float(drop)
        self._omega = 0.5 * np.pi / (self.x1 - self.x0)

    def k(self, x):
        x = np.asarray(x, dtype=float)
        ramp = self.k_left * (1.0 - self.drop * np.sin(self._omega * (x - self.x0)))
        out = np.where(x < self.x0, self.k_left, ramp)
        return np.where(x >= self.x1, self.k_left * (1.0 - self.drop), out)

    def kprime(self, x):
        x = np.asarray(x, dtype=float)
        ramp = -self.k_left * self.drop * self._omega * np.cos(self._omega * (x - self.x0))
        # exact break points take the left segment's derivative
        inside = (x > self.x0) & (x <= self.x1)
        return np.where(inside, ramp, 0.0)


class SinusoidalProfile(StiffnessProfile):
    """k(x) = base + amplitude sin(2 pi x / wavelength)."""

    kind = "sinusoidal"

    def __init__(self, base: float, amplitude: float = 1.2, wavelength: float = 1.0):
        if base - abs(amplitude) <= 0.0:
            raise ValueError("profile must stay positive")
        self.base = float(base)
        self.amplitude = float(amplitude)
        self.wavelength = float(wavelength)
        self._omega = 2.0 * np.pi / self.wavelength

    def k(self, x):
        return self.base + self.amplitude * np.sin(self._omega * np.asarray(x, dtype=float))

    def kprime(self, x):
        return self.amplitude * self._omega * np.cos(self._omega * np.asarray(x, dtype=float))


class LinearProfile(StiffnessProfile):
    """k(x) = k0 + slope (x - x_ref); single custom-piecewise segment."""

    kind = "custom-piecewise"

    def __init__(self, k0: float, slope: float, x_ref: float = 0.0):
        if k0 <= 0.0:
            raise ValueError("stiffness must be positive")
        self.k0 = float(k0)
        self.slope = float(slope)
        self.x_ref = float(x_ref)

    def k(self, x):
        return self.k0 + self.slope * (np.asarray(x, dtype=float) - self.x_ref)

    def kprime(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.slope)


def profile_from_name(name: str, **kwargs) -> StiffnessProfile:
    """Build a profile from its registry name (used by the run config)."""
    table = {
        "constant": ConstantProfile,
        "sine-ramp": SineRampProfile,
        "sinusoidal": SinusoidalProfile,
    }
    try:
        cls = table[name]
    except KeyError:
        raise ValueError(
            f"unknown stiffness profile {name!r}; expected one of {sorted(table)}"
        ) from None
    return cls(**kwargs)
