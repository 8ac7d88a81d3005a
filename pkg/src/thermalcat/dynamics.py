# The MIT License (MIT)
#
# Copyright (c) 2025 ThermalCat Authors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
"""Closed-form time evolution of stiff trap eigenstates after a sudden
release into a weak trap or free space.

The released eigenstate is the scaling solution

    Psi_n(x, t) = H_n(x / |s|) exp(i M sdot x^2 / (2 hbar s))
                  exp(-i (n + 1/2) arg s) / sqrt(sqrt(pi) |s| 2^n n!)

of the complex width s(t), which solves the classical oscillator equation
of the trap and starts with s = sigma0, sdot = i hbar / (M sigma0) at the
release time tau. A momentum boost at t = 0 displaces this solution along
the classical trajectory (x_c, p_c) and multiplies it with the phase
exp(i (p_c (x - x_c) + p_c x_c / 2) / hbar).
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from thermalcat.conf import tcat
from thermalcat.exceptions import ContractViolationError
from thermalcat.oscillator import (
    angular_frequency,
    derive_scales,
    ground_state_width,
    hermite,
    log_normalization,
)


@dataclass(frozen=True)
class TrapSchedule:
    """Piecewise-constant spring constant of the trap after the release.

    Args
    ----
    tau: float
        Release time from the stiff trap.
    k: float
        Spring constant the mirror is released into.
    switches: tuple
        Pairs (t_i, k_i), from time t_i on the spring constant is k_i. The
        times have to be strictly increasing and larger than tau.
    """

    tau: float
    k: float
    switches: tuple = ()

    def __post_init__(self):
        last_time = self.tau
        for switch_time, spring_constant in self.switches:
            if not switch_time > last_time:
                raise ValueError(
                    "Switch times have to be strictly increasing and after the release, got {}!".format(
                        self.switches
                    )
                )
            if spring_constant < 0:
                raise ValueError(
                    "Spring constants can not be negative, got {}!".format(
                        spring_constant
                    )
                )
            last_time = switch_time

    def segments(self, params):
        """Return the list of segments (t_start, t_end, omega)."""
        starts = [self.tau] + [switch[0] for switch in self.switches]
        springs = [self.k] + [switch[1] for switch in self.switches]
        ends = starts[1:] + [np.inf]
        return [
            (t_start, t_end, float(angular_frequency(params, spring)))
            for t_start, t_end, spring in zip(starts, ends, springs)
        ]


@dataclass(frozen=True)
class ComplexWidth:
    """Complex width s(t), its time derivative and the continuous argument
    of s at the time t."""

    t: float
    s: complex
    sdot: complex
    phase: float

    @property
    def width(self):
        """Position spread |s|."""
        return abs(self.s)

    def wronskian(self):
        """Im(s* sdot), conserved and equal to hbar / M."""
        return (np.conj(self.s) * self.sdot).imag


def _advance_width(s0, sdot0, omega, duration):
    """Advance the complex width in a trap with constant frequency.

    Returns s, sdot and the increase of the argument of s. The argument
    increases monotonically, by exactly pi per half period, which fixes
    the branch of the principal value.
    """

    if omega == 0:
        s = s0 + sdot0 * duration
        sdot = sdot0
        half_periods = 0
    else:
        cos_term = np.cos(omega * duration)
        sin_term = np.sin(omega * duration)
        s = s0 * cos_term + sdot0 * sin_term / omega
        sdot = -s0 * omega * sin_term + sdot0 * cos_term
        half_periods = np.floor(omega * duration / np.pi)

    principal = np.angle(s / s0)
    branch = np.round((half_periods * np.pi + 0.5 * np.pi - principal) / (2.0 * np.pi))
    return complex(s), complex(sdot), float(principal + 2.0 * np.pi * branch)


def _advance_classical(x0, p0, mass, omega, duration):
    """Advance a classical particle in a trap with constant frequency."""
    if omega == 0:
        return x0 + p0 * duration / mass, p0
    cos_term = np.cos(omega * duration)
    sin_term = np.sin(omega * duration)
    return (
        x0 * cos_term + p0 * sin_term / (mass * omega),
        p0 * cos_term - mass * omega * x0 * sin_term,
    )


def _initial_width(sigma0, params):
    """Complex width and its derivative at the release."""
    return complex(sigma0), 1j * params.hbar / (params.M * sigma0)


def complex_width(t, sigma0, omega, tau, params):
    """Complex width at time t after a release at tau into a trap with
    angular frequency omega (omega = 0 is the free case)."""

    if t < tau:
        raise ContractViolationError(
            "The complex width is defined for t >= tau, got t={} and tau={}!".format(
                t, tau
            )
        )
    s0, sdot0 = _initial_width(sigma0, params)
    s, sdot, phase = _advance_width(s0, sdot0, omega, t - tau)
    return ComplexWidth(t=t, s=s, sdot=sdot, phase=phase)


def complex_width_schedule(t, params, schedule):
    """Complex width at time t for a piecewise-constant trap schedule."""

    if t < schedule.tau:
        raise ContractViolationError(
            "The complex width is defined for t >= tau, got t={} and tau={}!".format(
                t, schedule.tau
            )
        )

    s, sdot = _initial_width(ground_state_width(params), params)
    phase = 0.0
    for t_start, t_end, omega in schedule.segments(params):
        duration = min(t, t_end) - t_start
        s, sdot, phase_increase = _advance_width(s, sdot, omega, duration)
        phase += phase_increase
        if t <= t_end:
            break
    return ComplexWidth(t=t, s=s, sdot=sdot, phase=phase)


def classical_trajectory(t, p, params, schedule):
    """Position and momentum at time t of a classical particle kicked with
    momentum p at the origin at t = 0."""

    if p == 0:
        return 0.0, 0.0
    if t < 0:
        raise ContractViolationError(
            "A boosted state only exists for t >= 0, got t={}!".format(t)
        )

    x_c, p_c = 0.0, p
    for t_start, t_end, omega in schedule.segments(params):
        if t_end <= 0:
            continue
        duration = min(t, t_end) - max(t_start, 0.0)
        x_c, p_c = _advance_classical(x_c, p_c, params.M, omega, duration)
        if t <= t_end:
            break
    return float(x_c), float(p_c)


@dataclass(frozen=True)
class ReleasedState:
    """Stiff trap eigenstate n released at tau and boosted with momentum p
    at t = 0.

    Args
    ----
    n: int
        Index of the stiff trap eigenstate.
    params: OscillatorParams
        Physical parameters, params.k is the trap the mirror is released
        into.
    tau: float
        Release time, tau <= 0 if the state is boosted.
    p: float
        Momentum boost at t = 0.
    switches: tuple
        Later changes of the weak trap, see TrapSchedule.
    """

    n: int
    params: object
    tau: float
    p: float = 0.0
    switches: tuple = ()

    def __post_init__(self):
        if self.n < 0 or self.n > tcat.hermite_max_order:
            raise ValueError("Got invalid state index {}!".format(self.n))
        if self.p != 0 and self.tau > 0:
            raise ValueError(
                "The release (tau={}) has to happen before the kick at t=0!".format(
                    self.tau
                )
            )

    @property
    def schedule(self):
        """Trap schedule after the release."""
        return TrapSchedule(tau=self.tau, k=self.params.k, switches=self.switches)

    def with_boost(self, p):
        """Return the same released state with another boost."""
        return ReleasedState(
            n=self.n, params=self.params, tau=self.tau, p=p, switches=self.switches
        )

    def check_time(self, t):
        """Raise an error if the state is not defined at time t."""
        if t < self.tau - 1e-12 * max(1.0, abs(self.tau)):
            raise ContractViolationError(
                "Released state evaluated at t={} before the release at tau={}!".format(
                    t, self.tau
                )
            )
        if self.p != 0 and t < 0:
            raise ContractViolationError(
                "Boosted state evaluated at t={} before the kick at t=0!".format(t)
            )

    def complex_width(self, t):
        """Complex width of this state at time t."""
        return complex_width_schedule(max(t, self.tau), self.params, self.schedule)

    def trajectory(self, t):
        """Classical position and momentum of the center at time t."""
        return classical_trajectory(t, self.p, self.params, self.schedule)


def released_amplitude(state, x, t):
    """Amplitude Psi_n(x, t; p) of a released and boosted eigenstate."""

    state.check_time(t)
    params = state.params
    width = state.complex_width(t)
    x_c, p_c = state.trajectory(t)

    u = np.asarray(x, dtype=float) - x_c
    y = u / width.width
    inside = np.abs(y) <= tcat.tail_guard
    u = np.where(inside, u, 0.0)
    y = np.where(inside, y, 0.0)

    exponent = (
        1j * params.M * width.sdot / (2.0 * params.hbar * width.s) * u**2
        + log_normalization(state.n, width.width)
        - 1j * (state.n + 0.5) * width.phase
        + 1j * (p_c * u + 0.5 * p_c * x_c) / params.hbar
    )
    amplitude = hermite(state.n, y) * np.exp(exponent)
    return np.where(inside, amplitude, 0.0)[()]


def density_of_released(state, x, t):
    """Probability density |Psi_n(x, t; p)|^2."""
    return np.abs(released_amplitude(state, x, t)) ** 2


def time_to_width(params, width):
    """Time after the release at which the position spread |s| of the
    released ground state reaches the given width.

    Returns None if a weak trap keeps the state narrower than width.
    """

    scales = derive_scales(params)
    if width <= scales.sigma0:
        return 0.0
    if params.is_free:
        return params.M * scales.sigma0 / params.hbar * np.sqrt(width**2 - scales.sigma0**2)

    # The width is largest after a quarter period.
    largest_width = params.hbar / (params.M * scales.sigma0 * scales.omega)
    if width > largest_width:
        return None
    return brentq(
        lambda t: complex_width(t, scales.sigma0, scales.omega, 0.0, params).width
        - width,
        0.0,
        0.25 * scales.T_weak,
    )
