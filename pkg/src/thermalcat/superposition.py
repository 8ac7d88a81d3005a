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
"""The photon kick: the kick factor and the normalized momentum superposition
states of released eigenstates."""

from dataclasses import dataclass

import numpy as np
from scipy.special import eval_laguerre

from thermalcat.conf import tcat
from thermalcat.dynamics import ReleasedState, released_amplitude
from thermalcat.exceptions import ContractViolationError, DegenerateSuperpositionError


@dataclass(frozen=True)
class KickSpec:
    """Momentum transfer of the photon at t = 0.

    Args
    ----
    p_gamma: float
        Momentum of each branch, p_gamma = 2 hbar kappa.
    phi: float
        Relative phase of the two branches, in [0, 2 pi).
    """

    p_gamma: float
    phi: float = np.pi

    def __post_init__(self):
        if self.p_gamma < 0:
            raise ValueError(
                "p_gamma has to be nonnegative, got {}!".format(self.p_gamma)
            )
        if not 0 <= self.phi < 2.0 * np.pi:
            raise ValueError("phi has to be in [0, 2 pi), got {}!".format(self.phi))

    def kappa(self, hbar):
        """Effective photon wave number."""
        return self.p_gamma / (2.0 * hbar)

    def with_phase(self, phi):
        """Return the same kick with another relative phase."""
        return KickSpec(p_gamma=self.p_gamma, phi=phi)


def kick_factor(x, kappa, phi):
    """Kick factor -i sin(2 kappa x - phi / 2) imprinted by the photon."""
    return -1j * np.sin(2.0 * kappa * np.asarray(x, dtype=float) - 0.5 * phi)


def displacement_overlap(n, p_gamma, width, hbar):
    """Overlap O_n = int |Psi_n(x,0)|^2 exp(-2 i p_gamma x / hbar) dx of a
    released eigenstate with position spread width at the kick.

    Above the argument limit the overlap is below floating point resolution
    and 0 is returned.
    """

    beta_squared = 2.0 * (p_gamma * width / hbar) ** 2
    if beta_squared > tcat.laguerre_argument_limit:
        return 0.0
    return float(np.exp(-0.5 * beta_squared) * eval_laguerre(n, beta_squared))


class KickedState(object):
    """Normalized momentum superposition state

        Upsilon_n = N_n [Psi_n(+p_gamma) - exp(i phi) Psi_n(-p_gamma)]

    of a released eigenstate kicked at t = 0.
    """

    def __init__(self, n, params, tau, kick, *, switches=()):
        """Set up the kicked state and compute its normalization.

        Args
        ----
        n: int
            Index of the stiff trap eigenstate.
        params: OscillatorParams
            Physical parameters.
        tau: float
            Release time, tau <= 0.
        kick: KickSpec
            Momentum and phase of the kick.
        switches: tuple
            Later changes of the weak trap, see TrapSchedule.
        """

        self.n = n
        self.params = params
        self.tau = tau
        self.kick = kick
        self.switches = switches

        self.branch_plus = ReleasedState(
            n=n, params=params, tau=tau, p=kick.p_gamma, switches=switches
        )
        self.branch_minus = self.branch_plus.with_boost(-kick.p_gamma)

        # The overlap is real by parity.
        width = self.branch_plus.with_boost(0.0).complex_width(0.0).width
        self.overlap = displacement_overlap(n, kick.p_gamma, width, params.hbar)
        self.norm_squared = 2.0 - 2.0 * np.cos(kick.phi) * self.overlap
        if self.norm_squared < tcat.degenerate_norm_tol:
            raise DegenerateSuperpositionError(
                "The superposition of state {} with p_gamma={} and phi={} is a null function!".format(
                    n, kick.p_gamma, kick.phi
                )
            )
        self.norm_const = 1.0 / np.sqrt(self.norm_squared)

    def with_phase(self, phi):
        """Return the same kicked state with another relative phase."""
        return KickedState(
            self.n,
            self.params,
            self.tau,
            self.kick.with_phase(phi),
            switches=self.switches,
        )


def kicked_amplitude(state, x, t):
    """Amplitude Upsilon_n(x, t) of a kicked state."""

    if t < 0:
        raise ContractViolationError(
            "The kicked state is defined for t >= 0, got t={}!".format(t)
        )
    return state.norm_const * (
        released_amplitude(state.branch_plus, x, t)
        - np.exp(1j * state.kick.phi) * released_amplitude(state.branch_minus, x, t)
    )


def kicked_density(state, x, t):
    """Probability density |Upsilon_n(x, t)|^2."""
    return np.abs(kicked_amplitude(state, x, t)) ** 2
