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
"""Physical parameters, Hermite polynomials and the eigenfunctions of the
stiff harmonic trap."""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from thermalcat.conf import tcat
from thermalcat.exceptions import HermiteDomainError


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants and trap parameters.

    Args
    ----
    hbar: float
        Reduced Planck constant.
    kB: float
        Boltzmann constant.
    M: float
        Mass of the mirror.
    K0: float
        Spring constant of the stiff trap the mirror is cooled in.
    k: float
        Spring constant of the weak trap the mirror is released into, k=0
        means the mirror is set free.
    """

    hbar: float
    kB: float
    M: float
    K0: float
    k: float = 0.0

    def __post_init__(self):
        for name in ["hbar", "kB", "M", "K0"]:
            if not getattr(self, name) > 0:
                raise ValueError(
                    "{} has to be positive, got {}!".format(name, getattr(self, name))
                )
        if self.k < 0:
            raise ValueError("k can not be negative, got {}!".format(self.k))
        if self.k > self.K0:
            raise ValueError(
                "The weak trap (k={}) can not be stiffer than the initial trap (K0={})!".format(
                    self.k, self.K0
                )
            )

    @classmethod
    def natural(cls, M, K0, k=0.0):
        """Parameters in natural units, hbar = kB = 1."""
        hbar, kB = tcat.units.natural.get_constants()
        return cls(hbar=hbar, kB=kB, M=M, K0=K0, k=k)

    @classmethod
    def si(cls, M, K0, k=0.0):
        """Parameters in SI units."""
        hbar, kB = tcat.units.SI.get_constants()
        return cls(hbar=hbar, kB=kB, M=M, K0=K0, k=k)

    @property
    def is_free(self):
        """Return if the mirror is set free after the release."""
        return self.k == 0


@dataclass(frozen=True)
class DerivedScales:
    """Scalar quantities derived from the oscillator parameters."""

    sigma0: float
    Omega0: float
    omega: float
    ThetaE: float
    v_expand: float
    T_weak: float

    def to_dict(self):
        """Return the scales as a dictionary of floats."""
        return {
            "sigma0": self.sigma0,
            "Omega0": self.Omega0,
            "omega": self.omega,
            "ThetaE": self.ThetaE,
            "v_expand": self.v_expand,
            "T_weak": self.T_weak,
        }


def ground_state_width(params):
    """Position standard deviation scale of the stiff trap ground state."""
    return np.sqrt(params.hbar) / (params.K0 * params.M) ** 0.25


def angular_frequency(params, spring_constant):
    """Angular frequency of the mirror in a trap with the given spring
    constant."""
    return np.sqrt(spring_constant / params.M)


def derive_scales(params):
    """Compute all derived scales of the oscillator parameters."""

    sigma0 = ground_state_width(params)
    Omega0 = angular_frequency(params, params.K0)
    omega = angular_frequency(params, params.k)
    if omega > 0:
        T_weak = 2.0 * np.pi / omega
    else:
        T_weak = np.inf

    return DerivedScales(
        sigma0=float(sigma0),
        Omega0=float(Omega0),
        omega=float(omega),
        ThetaE=float(params.hbar * Omega0 / params.kB),
        v_expand=float(params.hbar / (sigma0 * params.M)),
        T_weak=float(T_weak),
    )


def _check_order(n):
    """Check that the Hermite order is valid."""
    if n < 0 or int(n) != n:
        raise HermiteDomainError("Order has to be a nonnegative integer, got {}!".format(n))
    if n > tcat.hermite_max_order:
        raise HermiteDomainError(
            "Order {} is above the limit of {}!".format(n, tcat.hermite_max_order)
        )


def hermite(n, x):
    """Physicists' Hermite polynomial H_n(x) from the three-term
    recurrence."""

    _check_order(n)
    x = np.asarray(x, dtype=float)

    h_previous = np.ones_like(x)
    if n == 0:
        return h_previous[()]
    h_current = 2.0 * x
    for i in range(1, n):
        h_previous, h_current = h_current, 2.0 * x * h_current - 2.0 * i * h_previous
    return h_current[()]


def log_normalization(n, width):
    """Logarithm of the normalization constant 1 / sqrt(sqrt(pi) width 2^n n!)
    of a Hermite function with the given width."""
    return -0.5 * (np.log(np.sqrt(np.pi) * width) + n * np.log(2.0) + gammaln(n + 1))


def eigenfunction(n, x, sigma0):
    """Normalized eigenfunction psi_n(x) of a harmonic trap with ground state
    width sigma0."""

    _check_order(n)
    if not sigma0 > 0:
        raise ValueError("sigma0 has to be positive, got {}!".format(sigma0))

    y = np.asarray(x, dtype=float) / sigma0
    inside = np.abs(y) <= tcat.tail_guard
    y_inside = np.where(inside, y, 0.0)

    # The Gaussian and the normalization are combined in the exponent, the
    # polynomial stays finite inside the tail guard.
    psi = hermite(n, y_inside) * np.exp(
        -0.5 * y_inside**2 + log_normalization(n, sigma0)
    )
    return np.where(inside, psi, 0.0)[()]
