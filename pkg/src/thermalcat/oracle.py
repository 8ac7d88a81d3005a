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
"""Grid based split-operator propagator used to validate the closed forms.

The state lives on a uniform periodic grid with a power of two number of
points. One step applies half the potential phase, the kinetic phase in
wave number space and again half the potential phase.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from thermalcat.conf import tcat
from thermalcat.dynamics import ReleasedState, released_amplitude
from thermalcat.exceptions import (
    DegenerateSuperpositionError,
    GridTooSmallError,
    NumericalFailureError,
)
from thermalcat.oscillator import derive_scales, eigenfunction
from thermalcat.superposition import KickedState, kick_factor, kicked_amplitude
from thermalcat.thermalcat_types import KickMode, ResolutionTier

logger = logging.getLogger(__name__)


@dataclass
class GridState:
    """Amplitudes on a uniform grid at a given time."""

    x: np.ndarray
    psi: np.ndarray
    t: float

    def __post_init__(self):
        count = len(self.x)
        if count < 2 or count & (count - 1):
            raise ValueError(
                "The number of grid points has to be a power of two, got {}!".format(
                    count
                )
            )

    @property
    def dx(self):
        """Grid spacing."""
        return self.x[1] - self.x[0]

    def norm(self):
        """Discrete norm sum |psi|^2 dx."""
        return float(np.sum(np.abs(self.psi) ** 2) * self.dx)

    def copy(self):
        """Return an independent copy of this state."""
        return GridState(x=self.x.copy(), psi=self.psi.copy(), t=self.t)

    def check_boundary(self):
        """Raise an error if the state reaches the edges of the grid."""
        edge = max(abs(self.psi[0]), abs(self.psi[-1]))
        if edge > tcat.oracle_boundary_tol:
            raise GridTooSmallError(
                "The state reaches the grid boundary at t={} (|psi|={:.3g})!".format(
                    self.t, edge
                )
            )


def uniform_grid(half_span, count):
    """Periodic grid on [-half_span, half_span) with count points."""
    return np.linspace(-half_span, half_span, count, endpoint=False)


def eigenstate_on_grid(n, sigma0, x, t):
    """Stiff trap eigenstate n on the grid."""
    return GridState(x=x, psi=eigenfunction(n, x, sigma0).astype(complex), t=t)


def _wave_numbers(x):
    """Angular wave numbers of the discrete Fourier transform of the grid."""
    return 2.0 * np.pi * np.fft.fftfreq(len(x), d=x[1] - x[0])


def propagate(state, spring_constant, dt, steps, params):
    """Propagate the state by steps time steps in the trap with the given
    spring constant, returns a new state."""

    potential = 0.5 * spring_constant * state.x**2
    half_potential_phase = np.exp(-0.5j * dt * potential / params.hbar)
    kinetic_phase = np.exp(
        -1j * dt * params.hbar * _wave_numbers(state.x) ** 2 / (2.0 * params.M)
    )

    psi = state.psi.copy()
    for _i in range(steps):
        psi = half_potential_phase * np.fft.ifft(
            kinetic_phase * np.fft.fft(half_potential_phase * psi)
        )

    new_state = GridState(x=state.x, psi=psi, t=state.t + steps * dt)
    new_state.check_boundary()
    return new_state


def evolve_to(state, params, schedule, t_final, dt_max):
    """Propagate the state to t_final following the trap schedule, with
    time steps not larger than dt_max."""

    for t_start, t_end, omega in schedule.segments(params):
        if t_end <= state.t:
            continue
        duration = min(t_final, t_end) - max(t_start, state.t)
        if duration > 0:
            steps = int(np.ceil(duration / dt_max - 1e-9))
            spring_constant = params.M * omega**2
            logger.debug(
                "Propagate %d steps with k=%g from t=%g", steps, spring_constant, state.t
            )
            state = propagate(state, spring_constant, duration / steps, steps, params)
        if t_final <= t_end:
            break
    state.t = t_final
    return state


def apply_boost(state, p, params):
    """Multiply the state with the plane wave exp(i p x / hbar)."""
    return GridState(
        x=state.x, psi=state.psi * np.exp(1j * p * state.x / params.hbar), t=state.t
    )


def apply_pointwise_kick(state, kappa, phi):
    """Multiply the state with the kick factor and renormalize.

    Returns the new state and the squared norm after the kick, before
    renormalization.
    """

    psi = state.psi * kick_factor(state.x, kappa, phi)
    norm_squared = float(np.sum(np.abs(psi) ** 2) * state.dx)
    if norm_squared < tcat.degenerate_norm_tol:
        raise DegenerateSuperpositionError(
            "The kicked grid state is a null function (norm^2={:.3g})!".format(
                norm_squared
            )
        )
    return GridState(x=state.x, psi=psi / np.sqrt(norm_squared), t=state.t), norm_squared


def compare(closed_form, grid_state):
    """Relative L2 distance between closed-form amplitudes and the grid
    state, after optimal alignment of one global phase.

    Args
    ----
    closed_form: np.ndarray or callable
        Amplitudes on the grid, or a callable f(x, t) returning them.
    grid_state: GridState
        The grid state.
    """

    if callable(closed_form):
        closed_form = closed_form(grid_state.x, grid_state.t)
    reference = np.asarray(closed_form, dtype=complex)
    reference_norm = np.linalg.norm(reference)
    if reference_norm == 0:
        raise ValueError("The closed form vanishes on the grid!")

    projection = np.vdot(grid_state.psi, reference)
    if abs(projection) > 0:
        phase = projection / abs(projection)
    else:
        phase = 1.0
    return float(np.linalg.norm(reference - phase * grid_state.psi) / reference_norm)


def energy(state, spring_constant, params):
    """Expectation value of the Hamiltonian of the given trap."""

    psi_k = np.fft.fft(state.psi)
    kinetic = (
        np.sum(np.abs(psi_k) ** 2 * (params.hbar * _wave_numbers(state.x)) ** 2)
        / (2.0 * params.M)
        / np.sum(np.abs(psi_k) ** 2)
    )
    potential = np.sum(np.abs(state.psi) ** 2 * 0.5 * spring_constant * state.x**2) / (
        np.sum(np.abs(state.psi) ** 2)
    )
    return float(kinetic + potential)


def convergence_exponent(errors, dts):
    """Measured order of convergence, least squares slope of log(error)
    over log(dt)."""
    return float(np.polyfit(np.log(dts), np.log(errors), 1)[0])


def halving_check(state, spring_constant, dt, steps, params):
    """L2 change of the propagated state when the time step is halved."""
    coarse = propagate(state, spring_constant, dt, steps, params)
    fine = propagate(state, spring_constant, 0.5 * dt, 2 * steps, params)
    return compare(fine.psi, coarse)


class OracleValidation(object):
    """Closed form versus grid propagation for the states of a scenario."""

    def __init__(self, scenario, *, tier=ResolutionTier.accurate, count=None, max_n=None):
        """Set up the grid and time step for the scenario.

        Args
        ----
        scenario: Scenario
            The scenario to validate.
        tier: ResolutionTier
            Resolution of grid and time steps.
        count: int
            Explicitly set the number of grid points.
        max_n: int
            Largest state index that is validated, per default
            tcat.oracle_max_n. A scenario with a pure state only validates
            that state.
        """

        self.scenario = scenario
        if scenario.pure_state is not None:
            if max_n is not None:
                warnings.warn(
                    "max_n={} is ignored, the scenario only holds the state {}.".format(
                        max_n, scenario.pure_state
                    )
                )
            self.indices = [scenario.pure_state]
        else:
            if max_n is None:
                max_n = tcat.oracle_max_n
            self.indices = list(range(min(max_n, scenario.cutoff) + 1))
        self.params = scenario.params
        self.scales = derive_scales(self.params)

        if self.params.k > 0:
            ratio = self.params.K0 / self.params.k
            if ratio > tcat.max_stiffness_ratio:
                raise NumericalFailureError(
                    "K0/k={:.3g} is too large for the grid oracle (limit {:.3g})!".format(
                        ratio, tcat.max_stiffness_ratio
                    )
                )

        default_count, steps_per_period = tier.get_grid_parameters()
        self.count = default_count if count is None else count
        self.dt = 2.0 * np.pi / self.scales.Omega0 / steps_per_period
        self.t_final = self._final_time()

        reference = ReleasedState(
            n=0, params=self.params, tau=scenario.tau, switches=scenario.switches
        )
        times = np.linspace(scenario.tau, self.t_final, 64)
        largest = max(reference.complex_width(t).width for t in times)
        half_span = (
            tcat.oracle_span_factor * largest * np.sqrt(2 * max(self.indices) + 1)
        )
        half_span += self._largest_displacement(times)
        self.x = uniform_grid(half_span, self.count)
        logger.debug(
            "Oracle grid with %d points on +-%g, dt=%g", self.count, half_span, self.dt
        )

    def _final_time(self):
        """Time of the last comparison."""
        if self.params.k > 0:
            return 0.5 * self.scales.T_weak
        if self.scenario.t_grid is not None and self.scenario.t_grid.stop > 0:
            return self.scenario.t_grid.stop
        return 2.0 * self.scales.sigma0**2 * self.params.M / self.params.hbar

    def _largest_displacement(self, times):
        """Largest classical displacement of the kicked branches."""
        p = self.scenario.kick.p_gamma
        if p == 0:
            return 0.0
        boosted = ReleasedState(
            n=0,
            params=self.params,
            tau=self.scenario.tau,
            p=p,
            switches=self.scenario.switches,
        )
        return max(abs(boosted.trajectory(t)[0]) for t in times if t >= 0)

    def closed_form(self, n):
        """Closed-form amplitude function of state n after the kick."""
        if self.scenario.kick_mode == KickMode.superposition:
            kicked = KickedState(
                n,
                self.params,
                self.scenario.tau,
                self.scenario.kick,
                switches=self.scenario.switches,
            )
            return lambda x, t: kicked_amplitude(kicked, x, t)
        boosted = ReleasedState(
            n=n,
            params=self.params,
            tau=self.scenario.tau,
            p=self.scenario.kick.p_gamma,
            switches=self.scenario.switches,
        )
        return lambda x, t: released_amplitude(boosted, x, t)

    def kick(self, state):
        """Apply the kick of the scenario to the grid state."""
        if self.scenario.kick_mode == KickMode.superposition:
            kick = self.scenario.kick
            return apply_pointwise_kick(state, kick.kappa(self.params.hbar), kick.phi)[0]
        return apply_boost(state, self.scenario.kick.p_gamma, self.params)

    def run_state(self, n, *, dt=None):
        """Propagate state n and compare at the kick and at the final time.

        Returns a dictionary with the L2 errors before the kick, directly
        after the kick and at the final time.
        """

        if dt is None:
            dt = self.dt
        released = ReleasedState(
            n=n, params=self.params, tau=self.scenario.tau, switches=self.scenario.switches
        )
        schedule = released.schedule
        closed_form = self.closed_form(n)

        state = eigenstate_on_grid(n, self.scales.sigma0, self.x, self.scenario.tau)
        state = evolve_to(state, self.params, schedule, 0.0, dt)
        errors = {
            "pre_kick": compare(lambda x, t: released_amplitude(released, x, t), state)
        }
        state = self.kick(state)
        errors["post_kick"] = compare(closed_form, state)
        state = evolve_to(state, self.params, schedule, self.t_final, dt)
        errors["later"] = compare(closed_form, state)
        return errors

    def measure_convergence(self, n=0, *, refinements=(64, 128, 256)):
        """Measure the order of the splitting from coarse time steps, given
        as steps per period of the stiff trap.

        Returns None when the splitting is exact (no trap after release).
        """

        if all(omega == 0 for _t0, _t1, omega in self._segments()):
            return None
        dts = [2.0 * np.pi / self.scales.Omega0 / steps for steps in refinements]
        errors = [self.run_state(n, dt=dt)["later"] for dt in dts]
        return convergence_exponent(errors, dts)

    def _segments(self):
        """Segments of the trap schedule."""
        return ReleasedState(
            n=0, params=self.params, tau=self.scenario.tau, switches=self.scenario.switches
        ).schedule.segments(self.params)

    def validate(self, *, with_convergence=True):
        """Validate all states, returns a report dictionary."""

        indices = self.indices

        states = {}
        passed = True
        for n in indices:
            errors = self.run_state(n)
            states[str(n)] = errors
            passed = passed and max(errors.values()) < tcat.validation_tolerance
            logger.info("Validated state %d: %s", n, errors)

        report = {
            "states": states,
            "tolerance": tcat.validation_tolerance,
            "grid_points": self.count,
            "dt": self.dt,
            "t_final": self.t_final,
            "convergence_exponent": None,
            "passed": passed,
        }
        if not passed:
            report["suggestion"] = (
                "Increase the resolution, e.g. with the accurate tier or more grid points."
            )
        if with_convergence:
            report["convergence_exponent"] = self.measure_convergence(indices[0])
        return report
