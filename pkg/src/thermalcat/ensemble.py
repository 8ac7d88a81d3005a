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
"""Thermal weighting, probability density maps, interference visibility and
the closed-form dephasing benchmark."""

import dataclasses
import warnings
from dataclasses import dataclass

import numpy as np

from thermalcat.conf import tcat
from thermalcat.dynamics import ReleasedState, density_of_released
from thermalcat.exceptions import (
    ContractViolationError,
    GridTooSmallError,
    UndefinedVisibilityError,
)
from thermalcat.oscillator import OscillatorParams, derive_scales
from thermalcat.superposition import KickedState, KickSpec, kicked_density
from thermalcat.thermalcat_types import KickMode


@dataclass(frozen=True)
class ThermalWeights:
    """Boltzmann weights p_0..p_N of the truncated thermal state."""

    theta: float
    cutoff: int
    weights: tuple
    tail_mass: float


def thermal_weights(theta, ThetaE, cutoff):
    """Normalized Boltzmann distribution over the states 0..cutoff.

    The tail mass is the probability of the untruncated distribution beyond
    the cutoff. theta = 0 is the ground state.
    """

    if theta < 0:
        raise ValueError("The temperature can not be negative, got {}!".format(theta))
    if cutoff < 0:
        raise ValueError("The cutoff can not be negative, got {}!".format(cutoff))

    if theta == 0:
        weights = np.zeros(cutoff + 1)
        weights[0] = 1.0
        return ThermalWeights(
            theta=theta, cutoff=cutoff, weights=tuple(weights), tail_mass=0.0
        )

    ratio = np.exp(-ThetaE / theta)
    weights = ratio ** np.arange(cutoff + 1)
    weights /= np.sum(weights)
    return ThermalWeights(
        theta=theta,
        cutoff=cutoff,
        weights=tuple(float(weight) for weight in weights),
        tail_mass=float(ratio ** (cutoff + 1)),
    )


@dataclass(frozen=True)
class Grid:
    """Uniform grid from start to stop with count points."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("A grid needs at least one point!")
        if self.count > 1 and not self.stop > self.start:
            raise ValueError(
                "Grid has to be strictly increasing, got [{}, {}]!".format(
                    self.start, self.stop
                )
            )
        if self.count == 1 and self.stop != self.start:
            raise ValueError("A grid with one point needs start == stop!")

    def values(self):
        """Return the grid points."""
        return np.linspace(self.start, self.stop, self.count)

    def scaled(self, factor):
        """Return the grid with all points multiplied by factor."""
        return Grid(self.start * factor, self.stop * factor, self.count)

    def to_list(self):
        """Return [start, stop, count]."""
        return [self.start, self.stop, self.count]


@dataclass(frozen=True)
class Scenario:
    """Full description of a kicked thermal mirror experiment in internal
    units (times are absolute, not in periods).

    Args
    ----
    params: OscillatorParams
        Physical parameters.
    theta: float
        Temperature, in the same units as the Einstein temperature.
    kick: KickSpec
        Momentum and phase of the kick at t = 0.
    tau: float
        Release time from the stiff trap.
    cutoff: int
        Highest stiff trap state in the thermal mixture.
    x_grid, t_grid: Grid
        Evaluation grids.
    kick_mode: KickMode
        Superposition or single boost.
    pure_state: int
        If given, only this eigenstate is populated.
    switches: tuple
        Later changes of the weak trap, see TrapSchedule.
    """

    params: OscillatorParams
    theta: float
    kick: KickSpec
    tau: float
    cutoff: int = tcat.default_cutoff
    x_grid: Grid = None
    t_grid: Grid = None
    kick_mode: KickMode = KickMode.superposition
    pure_state: int = None
    switches: tuple = ()

    def __post_init__(self):
        if self.pure_state is not None and not 0 <= self.pure_state <= self.cutoff:
            raise ValueError(
                "The pure state {} has to be within the cutoff {}!".format(
                    self.pure_state, self.cutoff
                )
            )

    @property
    def scales(self):
        """Derived scales of the parameters."""
        return derive_scales(self.params)

    def with_phase(self, phi):
        """Return the scenario with another kick phase."""
        return dataclasses.replace(self, kick=self.kick.with_phase(phi))

    def with_theta(self, theta):
        """Return the scenario at another temperature."""
        return dataclasses.replace(self, theta=theta)

    def get_weights(self):
        """Thermal weights of this scenario."""
        if self.pure_state is not None:
            weights = np.zeros(self.cutoff + 1)
            weights[self.pure_state] = 1.0
            return ThermalWeights(
                theta=self.theta,
                cutoff=self.cutoff,
                weights=tuple(weights),
                tail_mass=0.0,
            )
        return thermal_weights(self.theta, self.scales.ThetaE, self.cutoff)

    def to_dict(self):
        """Return the scenario as a dictionary of base types."""
        return {
            "params": dataclasses.asdict(self.params),
            "theta": self.theta,
            "kick": [self.kick.p_gamma, self.kick.phi],
            "tau": self.tau,
            "cutoff": self.cutoff,
            "x_grid": None if self.x_grid is None else self.x_grid.to_list(),
            "t_grid": None if self.t_grid is None else self.t_grid.to_list(),
            "kick_mode": self.kick_mode.get_file_string(),
            "pure_state": self.pure_state,
            "switches": [list(switch) for switch in self.switches],
        }

    @classmethod
    def from_dict(cls, data):
        """Create a scenario from the output of to_dict."""
        return cls(
            params=OscillatorParams(**data["params"]),
            theta=data["theta"],
            kick=KickSpec(*data["kick"]),
            tau=data["tau"],
            cutoff=data["cutoff"],
            x_grid=None if data["x_grid"] is None else Grid(*data["x_grid"]),
            t_grid=None if data["t_grid"] is None else Grid(*data["t_grid"]),
            kick_mode=KickMode.from_file_string(data["kick_mode"]),
            pure_state=data["pure_state"],
            switches=tuple(tuple(switch) for switch in data["switches"]),
        )


class ThermalEnsemble(object):
    """The weighted states of a scenario, set up once and evaluated at many
    points."""

    def __init__(self, scenario):
        """Create the states with nonvanishing weight."""

        self.scenario = scenario
        self.weights = scenario.get_weights()
        self.indices = [
            n for n, weight in enumerate(self.weights.weights) if weight > 0
        ]

        self.released = {}
        self.kicked = {}
        for n in self.indices:
            self.released[n] = ReleasedState(
                n=n,
                params=scenario.params,
                tau=scenario.tau,
                switches=scenario.switches,
            )
            if scenario.kick_mode == KickMode.superposition:
                self.kicked[n] = KickedState(
                    n,
                    scenario.params,
                    scenario.tau,
                    scenario.kick,
                    switches=scenario.switches,
                )
            else:
                self.kicked[n] = self.released[n].with_boost(scenario.kick.p_gamma)

    def component_density(self, n, x, t):
        """Unweighted density of state n, the released state before the kick."""
        if t < 0:
            return density_of_released(self.released[n], x, t)
        if self.scenario.kick_mode == KickMode.superposition:
            return kicked_density(self.kicked[n], x, t)
        return density_of_released(self.kicked[n], x, t)

    def components(self, x, t):
        """Weighted densities p_n |Upsilon_n|^2, one row per n up to the
        cutoff."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        result = np.zeros((self.weights.cutoff + 1, len(x)))
        for n in self.indices:
            result[n] = self.weights.weights[n] * self.component_density(n, x, t)
        return result

    def density(self, x, t):
        """Thermal probability density P(x, t)."""
        return np.sum(self.components(x, t), axis=0)

    def released_density(self, x, t):
        """Thermal density of the released, not yet kicked, mirror."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        result = np.zeros(len(x))
        for n in self.indices:
            result += self.weights.weights[n] * density_of_released(
                self.released[n], x, t
            )
        return result


def thermal_density(scenario, x, t):
    """Probability density P(x, t) of the kicked thermal state, for t < 0 the
    released state before the kick."""
    return ThermalEnsemble(scenario).density(x, t)


def released_thermal_density(scenario, x, t):
    """Probability density of the released thermal state without kick."""
    return ThermalEnsemble(scenario).released_density(x, t)


def thermal_components(scenario, x, t):
    """Thermally weighted densities of the individual states."""
    return ThermalEnsemble(scenario).components(x, t)


class VisibilityEvaluator(object):
    """Evaluates the visibility at the origin from the scenario with phase 0
    and with phase pi."""

    def __init__(self, scenario):
        """Set up the two ensembles."""
        if scenario.kick_mode != KickMode.superposition:
            raise ValueError("The visibility requires a superposition kick!")
        self.ensemble_zero = ThermalEnsemble(scenario.with_phase(0.0))
        self.ensemble_pi = ThermalEnsemble(scenario.with_phase(np.pi))

    def __call__(self, t):
        """Visibility at time t."""

        if t < 0:
            raise ContractViolationError(
                "The visibility is defined after the kick, got t={}!".format(t)
            )
        rho_zero = self.ensemble_zero.density([0.0], t)[0]
        rho_pi = self.ensemble_pi.density([0.0], t)[0]
        denominator = rho_zero + rho_pi
        if not denominator > tcat.visibility_denominator_tol:
            raise UndefinedVisibilityError(
                "The density at the origin vanishes at t={}!".format(t)
            )
        return float(abs(rho_zero - rho_pi) / denominator)


def visibility(scenario, t):
    """Interference visibility at the origin at time t."""
    return VisibilityEvaluator(scenario)(t)


def windowed_visibility(scenario, t, half_width, *, points=401):
    """Contrast (max - min) / (max + min) of P(x, t) over |x| <= half_width.

    This is an extension to the visibility at the origin and not used by
    default.
    """
    x = np.linspace(-half_width, half_width, points)
    density = thermal_density(scenario, x, t)
    denominator = np.max(density) + np.min(density)
    if not denominator > tcat.visibility_denominator_tol:
        raise UndefinedVisibilityError(
            "The density vanishes in the window at t={}!".format(t)
        )
    return float((np.max(density) - np.min(density)) / denominator)


def benchmark_A(theta, ThetaE, omega, t):
    """Closed-form benchmark of the dephasing of the visibility."""

    if not theta > 0:
        raise ValueError("The temperature has to be positive, got {}!".format(theta))
    if not omega > 0:
        raise ValueError("The weak trap frequency has to be positive!")
    ratio = np.exp(-ThetaE / theta)
    return (1.0 - ratio) ** 2 / (
        1.0 + ratio**2 - 2.0 * ratio * np.cos(2.0 * omega * np.asarray(t, dtype=float))
    )


def heat_capacity_ratio(x):
    """Ratio of the quantum and classical heat capacity of a harmonic
    oscillator, x = ThetaE / theta."""

    if x < 0:
        raise ValueError("x can not be negative, got {}!".format(x))
    if x == 0:
        return 1.0
    with np.errstate(over="ignore"):
        return float((x / (2.0 * np.sinh(0.5 * x))) ** 2)


def max_width(scenario):
    """Largest position spread |s(t)| of the released states over the
    t-grid."""
    if scenario.t_grid.start < scenario.tau:
        raise ContractViolationError(
            "The t-grid starts at {} before the release at {}!".format(
                scenario.t_grid.start, scenario.tau
            )
        )
    state = ReleasedState(
        n=0, params=scenario.params, tau=scenario.tau, switches=scenario.switches
    )
    return max(state.complex_width(t).width for t in scenario.t_grid.values())


def check_coverage(scenario):
    """Check that the x-grid spans the state at all times of the t-grid."""

    required = tcat.coverage_factor * max_width(scenario)
    if scenario.x_grid.start > -required or scenario.x_grid.stop < required:
        raise GridTooSmallError(
            "The x-grid [{}, {}] has to span at least +-{:.6g}!".format(
                scenario.x_grid.start, scenario.x_grid.stop, required
            )
        )
    weights = scenario.get_weights()
    if weights.tail_mass > 0.01:
        warnings.warn(
            "The truncated thermal distribution misses {:.3g} of the probability.".format(
                weights.tail_mass
            )
        )


def first_imprint_node(kick, hbar):
    """Smallest positive position at which the kick factor vanishes."""

    kappa = kick.kappa(hbar)
    if kappa == 0:
        raise ValueError("A kick without momentum does not imprint nodes!")
    order = np.floor(-0.5 * kick.phi / np.pi) + 1
    return (0.5 * kick.phi + order * np.pi) / (2.0 * kappa)


def imprint_coverage(scenario):
    """Density of the released thermal state at the first imprint node of
    the kick relative to its value at the center.

    Small values mean the state is too narrow at the kick to carry the
    interference imprint.
    """

    node = first_imprint_node(scenario.kick, scenario.params.hbar)
    density = released_thermal_density(scenario, [0.0, node], 0.0)
    return float(density[1] / density[0])
