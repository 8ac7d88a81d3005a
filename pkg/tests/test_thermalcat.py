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
"""This script is used to test the physics of thermalcat."""

import json
import os

import numpy as np
import pytest
from deepdiff import DeepDiff
from scipy.integrate import trapezoid

# Define the testing paths.
testing_path = os.path.abspath(os.path.dirname(__file__))
testing_input = os.path.join(testing_path, "input-files-ref")
testing_temp = os.path.join(testing_path, "testing-tmp")

# thermalcat imports.
from thermalcat.dynamics import (
    ReleasedState,
    TrapSchedule,
    complex_width,
    complex_width_schedule,
    density_of_released,
    released_amplitude,
    time_to_width,
)
from thermalcat.ensemble import (
    Grid,
    Scenario,
    ThermalEnsemble,
    benchmark_A,
    check_coverage,
    first_imprint_node,
    heat_capacity_ratio,
    imprint_coverage,
    released_thermal_density,
    thermal_components,
    thermal_density,
    thermal_weights,
    visibility,
    windowed_visibility,
)
from thermalcat.exceptions import (
    ContractViolationError,
    DegenerateSuperpositionError,
    GridTooSmallError,
    HermiteDomainError,
    UndefinedVisibilityError,
)
from thermalcat.oracle import GridState, compare, uniform_grid
from thermalcat.oscillator import (
    OscillatorParams,
    derive_scales,
    eigenfunction,
    hermite,
)
from thermalcat.presets import get_preset
from thermalcat.superposition import (
    KickedState,
    KickSpec,
    displacement_overlap,
    kick_factor,
    kicked_amplitude,
    kicked_density,
)


def check_tmp_dir():
    """Check if the temp directory exists, if not create it."""
    os.makedirs(testing_temp, exist_ok=True)


def compare_json(data, *, base_name=None, additional_identifier=None, atol=1.0e-12):
    """Compare a dictionary with the reference JSON file.

    Args
    ----
    data: dict
        The data created by the test.
    base_name: str, optional
        Base name of the test, per default this is the current test name.
    additional_identifier: str, optional
        Additional identifier added to the base name of the test to result
        in the reference file.
    atol: float
        Absolute tolerance for numerical differences.
    """

    # Determine test name
    if base_name is None:
        compare_name = (
            os.environ.get("PYTEST_CURRENT_TEST")
            .split(":")[-1]
            .split(" ")[0]
            .split("[")[0]
        )
    else:
        compare_name = base_name
    if additional_identifier is not None:
        compare_name += "_" + additional_identifier

    ref_file = os.path.join(testing_input, compare_name + ".json")
    with open(ref_file, "r") as file:
        ref_data = json.load(file)

    diff = DeepDiff(
        ref_data,
        data,
        math_epsilon=atol,
        ignore_numeric_type_changes=True,
    )
    if diff:
        check_tmp_dir()
        out_file = os.path.join(testing_temp, compare_name + ".json")
        with open(out_file, "w") as file:
            json.dump(data, file, indent=2)
        print(diff.pretty())
        print(f"Reference: {ref_file}")
        print(f"Generated: {out_file}")
    assert not diff


def natural_params(K0=16, k=1):
    """Natural unit parameters of a mirror with mass 1."""
    return OscillatorParams.natural(M=1, K0=K0, k=k)


def preset_scenario(name, theta_in_ThetaE=None):
    """Internal scenario of a preset."""
    return get_preset(name).scenario_file.to_scenario(theta_in_ThetaE)


def quadrature_grid(width, n, x_c=0.0, points=8001):
    """Grid that covers a state of index n with the given width."""
    half_span = 12.0 * width * np.sqrt(2 * n + 1) + abs(x_c)
    return np.linspace(-half_span, half_span, points)


def overlap_by_quadrature(n, p_gamma, width, hbar):
    """Direct quadrature of the displacement overlap."""
    wave_number = 2.0 * p_gamma / hbar
    half_span = 40.0 * width
    n_points = int(max(4001, 40 * wave_number * half_span / np.pi)) | 1
    x = np.linspace(-half_span, half_span, n_points)
    density = eigenfunction(n, x, width) ** 2
    return trapezoid(density * np.cos(wave_number * x), x)


def test_hermite_values():
    """Test the Hermite polynomials for known values."""
    assert hermite(0, 1.7) == 1.0
    assert hermite(1, 2.0) == 4.0
    assert hermite(3, 2.0) == 40.0
    assert hermite(3, 2.0) == 8 * 2.0**3 - 12 * 2.0


def test_hermite_recurrence():
    """Test the consistency of the Hermite recurrence up to order 20."""
    x = np.linspace(-5, 5, 101)
    for n in range(1, 21):
        h_next = hermite(n + 1, x)
        h_current = hermite(n, x)
        h_previous = hermite(n - 1, x)
        scale = np.maximum.reduce(
            [np.abs(h_next), np.abs(2 * x * h_current), np.abs(2 * n * h_previous)]
        )
        residual = h_next - 2 * x * h_current + 2 * n * h_previous
        assert np.all(np.abs(residual) <= 1e-12 * np.maximum(scale, 1.0))


def test_hermite_domain():
    """Test that invalid orders are rejected."""
    for n in [-1, 2.5, 65]:
        with pytest.raises(HermiteDomainError):
            hermite(n, 1.0)
    with pytest.raises(HermiteDomainError):
        eigenfunction(100, 0.0, 1.0)


def test_eigenfunction_values():
    """Test the eigenfunctions at the origin."""
    sigma0 = 0.7
    assert eigenfunction(0, 0.0, sigma0) == pytest.approx(
        np.pi**-0.25 * sigma0**-0.5, rel=1e-14
    )
    assert eigenfunction(1, 0.0, sigma0) == 0.0


def test_eigenfunction_normalization():
    """Test the norm of the eigenfunction n=5 on a grid spanning 12 widths."""
    sigma0 = 0.5
    x = np.linspace(-12 * sigma0, 12 * sigma0, 4001)
    assert trapezoid(eigenfunction(5, x, sigma0) ** 2, x) == pytest.approx(
        1.0, abs=1e-10
    )


def test_eigenfunction_orthonormality():
    """Test the orthonormality of the eigenfunctions up to n=13."""
    sigma0 = 0.7
    x = np.linspace(-20 * sigma0, 20 * sigma0, 8001)
    functions = np.array([eigenfunction(n, x, sigma0) for n in range(14)])
    overlaps = trapezoid(functions[:, None, :] * functions[None, :, :], x)
    assert np.max(np.abs(overlaps - np.eye(14))) < 1e-8


def test_eigenfunction_parity_and_tails():
    """Test the parity of the eigenfunctions and the tail guard."""
    sigma0 = 0.3
    x = np.linspace(0, 5, 51)
    for n in range(14):
        np.testing.assert_allclose(
            eigenfunction(n, -x, sigma0),
            (-1) ** n * eigenfunction(n, x, sigma0),
            rtol=1e-14,
            atol=0,
        )
    assert eigenfunction(13, 41 * sigma0, sigma0) == 0.0
    assert np.all(np.isfinite(eigenfunction(60, np.array([1e3, 39.0]), 1.0)))


def test_derive_scales_natural():
    """Test the derived scales in natural units."""
    scales = derive_scales(natural_params(K0=16, k=1))
    assert scales.sigma0 == pytest.approx(0.5, rel=1e-14)
    assert scales.Omega0 == pytest.approx(4.0, rel=1e-14)
    assert scales.ThetaE == pytest.approx(4.0, rel=1e-14)
    assert scales.v_expand == pytest.approx(2.0, rel=1e-14)
    assert scales.T_weak == pytest.approx(2 * np.pi, rel=1e-14)
    assert derive_scales(natural_params(K0=16, k=0)).T_weak == np.inf


def test_derive_scales_si():
    """Test the derived scales for the mass range of the mirrors."""

    scales = derive_scales(OscillatorParams.si(M=1e-15, K0=1e6))
    assert scales.Omega0 == pytest.approx(3.16e10, rel=0.02)
    assert scales.ThetaE == pytest.approx(0.241, rel=0.01)

    params = OscillatorParams.si(M=1e-10, K0=1e6)
    scales = derive_scales(params)
    assert scales.Omega0 == pytest.approx(1.0e8, rel=0.01)
    assert scales.ThetaE == pytest.approx(7.6e-4, rel=0.01)

    # Two forms of the expansion velocity.
    assert scales.v_expand == pytest.approx(
        np.sqrt(params.hbar * np.sqrt(params.K0)) / params.M**0.75, rel=1e-12
    )
    assert scales.v_expand * scales.sigma0 * params.M == pytest.approx(
        params.hbar, rel=1e-14
    )


def test_oscillator_params_validation():
    """Test that invalid parameters are rejected."""
    with pytest.raises(ValueError):
        OscillatorParams.natural(M=0, K0=16)
    with pytest.raises(ValueError):
        OscillatorParams.natural(M=1, K0=16, k=-1)
    with pytest.raises(ValueError):
        OscillatorParams.natural(M=1, K0=16, k=17)
    # Equal spring constants are allowed for self tests.
    OscillatorParams.natural(M=1, K0=16, k=16)


def test_complex_width_examples():
    """Test the complex width for the initial, free and trapped case."""

    params = natural_params(K0=16, k=1)
    width = complex_width(-0.3, 0.5, 1.0, -0.3, params)
    assert width.s == pytest.approx(0.5)
    assert width.sdot == pytest.approx(2.0j)

    width = complex_width(0.2, 0.5, 0.0, -0.5, params)
    assert width.s == pytest.approx(0.5 + 0.7j / 0.5, rel=1e-14)

    params = OscillatorParams.natural(M=1, K0=1, k=1)
    width = complex_width(np.pi / 2, 1.0, 1.0, 0.0, params)
    assert abs(width.s - 1j) < 1e-14

    with pytest.raises(ContractViolationError):
        complex_width(-1.0, 0.5, 1.0, -0.5, params)


def test_complex_width_wronskian_and_phase():
    """Test the conserved Wronskian and the continuous phase of s."""

    params = natural_params(K0=16, k=1)
    schedule = TrapSchedule(tau=-1.0, k=1.0, switches=((0.5, 0.0), (2.0, 9.0)))
    times = np.linspace(-1.0, 8.0, 400)
    phases = []
    for t in times:
        width = complex_width_schedule(t, params, schedule)
        assert width.wronskian() == pytest.approx(params.hbar / params.M, rel=1e-12)
        assert np.exp(1j * width.phase) == pytest.approx(width.s / abs(width.s))
        phases.append(width.phase)
    # The argument of s increases continuously.
    assert np.all(np.diff(phases) > 0)
    assert np.max(np.diff(phases)) < 0.5 * np.pi


def test_trap_schedule():
    """Test piecewise constant trap schedules."""

    params = natural_params(K0=16, k=1)
    with pytest.raises(ValueError):
        TrapSchedule(tau=0.0, k=1.0, switches=((-1.0, 0.0),))
    with pytest.raises(ValueError):
        TrapSchedule(tau=0.0, k=1.0, switches=((1.0, -2.0),))

    # A switch that does not change the trap has no effect.
    plain = TrapSchedule(tau=-0.5, k=1.0)
    split = TrapSchedule(tau=-0.5, k=1.0, switches=((0.3, 1.0),))
    for t in [0.0, 0.3, 1.0, 4.0]:
        width_plain = complex_width_schedule(t, params, plain)
        width_split = complex_width_schedule(t, params, split)
        assert width_split.s == pytest.approx(width_plain.s, rel=1e-12)
        assert width_split.phase == pytest.approx(width_plain.phase, rel=1e-12)

    # Switching the stiff trap back on, the width oscillates with half the
    # period of the stiff trap.
    schedule = TrapSchedule(tau=-0.5, k=0.0, switches=((0.5, 16.0),))
    period = np.pi / derive_scales(params).Omega0
    for t in [0.6, 0.9, 1.3]:
        assert complex_width_schedule(t + period, params, schedule).width == (
            pytest.approx(complex_width_schedule(t, params, schedule).width, rel=1e-12)
        )


def test_released_amplitude_at_release():
    """Test that the released state equals the eigenfunction at the release."""
    params = natural_params(K0=16, k=1)
    sigma0 = derive_scales(params).sigma0
    x = np.linspace(-5, 5, 201)
    for n in [0, 1, 4, 13]:
        state = ReleasedState(n=n, params=params, tau=-0.7)
        np.testing.assert_allclose(
            released_amplitude(state, x, -0.7),
            eigenfunction(n, x, sigma0),
            rtol=0,
            atol=1e-12,
        )


def test_released_amplitude_free_ground_state():
    """Test the released free ground state against the closed form of a
    spreading Gaussian."""

    params = natural_params(K0=16, k=0)
    sigma0 = derive_scales(params).sigma0
    state = ReleasedState(n=0, params=params, tau=0.0)
    x = np.linspace(-6, 6, 1000)
    for t in [0.1, 0.5, 2.0]:
        sigma_t = sigma0 + 1j * t * params.hbar / (sigma0 * params.M)
        reference = 1.0 / np.sqrt(np.sqrt(np.pi) * sigma_t) * np.exp(
            -(x**2) / (2 * sigma0 * sigma_t)
        )
        np.testing.assert_allclose(
            released_amplitude(state, x, t), reference, rtol=0, atol=1e-12
        )

    # The peak of the density decreases as the state spreads.
    peaks = [density_of_released(state, 0.0, t) for t in [0.0, 0.5, 1.0, 2.0]]
    assert np.all(np.diff(peaks) < 0)
    for t, peak in zip([0.5, 2.0], peaks[1::2]):
        assert peak == pytest.approx(
            1.0 / (np.sqrt(np.pi) * abs(sigma0 + 1j * t / sigma0)), rel=1e-12
        )


def test_released_amplitude_stationary():
    """Test that an eigenstate released into the same trap is stationary."""
    params = natural_params(K0=16, k=16)
    sigma0 = derive_scales(params).sigma0
    x = np.linspace(-4, 4, 101)
    for n in [0, 3]:
        state = ReleasedState(n=n, params=params, tau=-0.2)
        for t in [0.0, 0.37, 2.5]:
            np.testing.assert_allclose(
                np.abs(released_amplitude(state, x, t)),
                np.abs(eigenfunction(n, x, sigma0)),
                rtol=0,
                atol=1e-12,
            )


def test_density_of_released():
    """Test nodes and norm of released densities."""

    params = natural_params(K0=16, k=1)
    state = ReleasedState(n=1, params=params, tau=-np.pi / 2)
    for t in [0.0, 1.0, 3.0]:
        assert density_of_released(state, 0.0, t) == 0.0

    state = ReleasedState(n=3, params=params, tau=-np.pi / 2, p=2.5)
    for t in [0.0, 0.8, np.pi, 5.0]:
        x_c = state.trajectory(t)[0]
        x = quadrature_grid(state.complex_width(t).width, 3, x_c)
        assert trapezoid(density_of_released(state, x, t), x) == pytest.approx(
            1.0, abs=1e-8
        )

    with pytest.raises(ContractViolationError):
        released_amplitude(state, 0.0, -0.1)
    with pytest.raises(ContractViolationError):
        released_amplitude(state.with_boost(0.0), 0.0, -2.0)


def test_parity_boost_identity():
    """Test Psi_n(x, t; -p) = (-1)^n Psi_n(-x, t; p) for random samples."""

    params = natural_params(K0=16, k=1)
    rng = np.random.default_rng(42)
    x = np.linspace(-8, 8, 161)
    for _i in range(40):
        n = int(rng.integers(0, 14))
        p = rng.uniform(0, 5)
        t = rng.uniform(0, 4 * np.pi)
        state = ReleasedState(n=n, params=params, tau=-rng.uniform(0.1, 3), p=p)
        difference = released_amplitude(
            state.with_boost(-p), x, t
        ) - (-1) ** n * released_amplitude(state, -x, t)
        assert np.max(np.abs(difference)) < 1e-10


def test_half_period_mirror_revival():
    """Test |Psi_n(x, t + T/2)| = |Psi_n(-x, t)| in a weak trap."""
    params = natural_params(K0=16, k=1)
    period = derive_scales(params).T_weak
    x = np.linspace(-8, 8, 161)
    for n in [0, 2, 5]:
        state = ReleasedState(n=n, params=params, tau=-period / 4, p=1.5)
        for t in [0.0, 0.4, 2.0]:
            np.testing.assert_allclose(
                np.abs(released_amplitude(state, x, t + period / 2)),
                np.abs(released_amplitude(state, -x, t)),
                rtol=0,
                atol=1e-10,
            )


def test_time_to_width():
    """Test the expansion time of the released ground state."""

    params = OscillatorParams.si(M=1e-15, K0=1e6)
    assert time_to_width(params, 500e-9) == pytest.approx(8.6e-3, rel=0.02)

    params = natural_params(K0=16, k=1)
    assert time_to_width(params, 10.0) is None
    t = time_to_width(params, 1.5)
    assert complex_width(t, 0.5, 1.0, 0.0, params).width == pytest.approx(1.5)
    assert time_to_width(natural_params(K0=16, k=0), 0.1) == 0.0


def test_kick_factor():
    """Test the values of the kick factor."""
    assert abs(kick_factor(0.0, 3.0, 0.0)) == 0.0
    assert kick_factor(0.0, 3.0, np.pi) == 1j
    x = np.linspace(-10, 10, 1001)
    assert np.all(np.abs(kick_factor(x, 1.3, 0.7)) <= 1.0)


def test_kick_spec_validation():
    """Test that invalid kicks are rejected."""
    with pytest.raises(ValueError):
        KickSpec(p_gamma=-1.0)
    with pytest.raises(ValueError):
        KickSpec(p_gamma=1.0, phi=2 * np.pi)
    assert KickSpec(p_gamma=2.0).kappa(1.0) == 1.0


def test_kicked_state_without_momentum():
    """Test that a kick without momentum and phase pi does not change the
    state and that phase 0 gives a null function."""

    params = natural_params(K0=16, k=1)
    x = np.linspace(-8, 8, 161)
    for n in [0, 3]:
        kicked = KickedState(n, params, -0.5, KickSpec(p_gamma=0.0, phi=np.pi))
        released = ReleasedState(n=n, params=params, tau=-0.5)
        for t in [0.0, 1.0]:
            np.testing.assert_allclose(
                kicked_density(kicked, x, t),
                density_of_released(released, x, t),
                rtol=0,
                atol=1e-13,
            )

    with pytest.raises(DegenerateSuperpositionError):
        KickedState(0, params, -0.5, KickSpec(p_gamma=0.0, phi=0.0))


def test_kicked_amplitude_central_node():
    """Test the node at the center for phase 0 of even states."""
    params = natural_params(K0=16, k=1)
    for n in [0, 2]:
        kicked = KickedState(n, params, -0.5, KickSpec(p_gamma=2.0, phi=0.0))
        for t in [0.0, 0.3, 2.1]:
            assert abs(kicked_amplitude(kicked, 0.0, t)) < 1e-14
    with pytest.raises(ContractViolationError):
        kicked_amplitude(kicked, 0.0, -0.1)


def test_displacement_overlap():
    """Test the Laguerre form of the overlap against quadrature."""

    for n in range(6):
        for p_gamma in [0.0, 0.3, 1.0, 2.5]:
            for width in [0.5, 1.3]:
                assert displacement_overlap(n, p_gamma, width, 1.0) == pytest.approx(
                    overlap_by_quadrature(n, p_gamma, width, 1.0), abs=1e-8
                )

    # Ground state and bounds.
    overlaps = [displacement_overlap(0, p, 0.8, 1.0) for p in np.linspace(0, 3, 31)]
    assert overlaps[7] == pytest.approx(np.exp(-((0.7 * 0.8) ** 2)), rel=1e-12)
    assert overlaps[0] == 1.0
    assert np.all(np.diff(overlaps) < 0)
    assert np.all(np.array(overlaps) > 0)

    # Beyond the Laguerre argument limit the overlap vanishes.
    assert displacement_overlap(3, 30.0, 1.0, 1.0) == 0.0
    assert displacement_overlap(5, 2e4, 1.0, 1.0) == 0.0
    assert 0.0 < abs(displacement_overlap(3, 18.0, 1.0, 1.0)) < 1e-100


def test_kicked_state_norm():
    """Test the quadrature norm of kicked states at several times."""

    params = natural_params(K0=16, k=1)
    period = derive_scales(params).T_weak
    kick = KickSpec(p_gamma=2.0, phi=np.pi)
    for n in [0, 3]:
        kicked = KickedState(n, params, -period / 20, kick)
        for t in [0.0, period / 8, period / 4, period / 2]:
            x_c = kicked.branch_plus.trajectory(t)[0]
            x = quadrature_grid(kicked.branch_plus.complex_width(t).width, n, x_c)
            assert trapezoid(kicked_density(kicked, x, t), x) == pytest.approx(
                1.0, abs=1e-8
            )

    # A large momentum separates the branches completely.
    kicked = KickedState(2, params, -0.5, KickSpec(p_gamma=40.0, phi=0.0))
    assert kicked.norm_squared == pytest.approx(2.0, abs=1e-12)
    kicked = KickedState(2, params, -0.5, KickSpec(p_gamma=2e4, phi=0.0))
    assert kicked.overlap == 0.0
    assert kicked.norm_squared == 2.0


def test_kicked_state_equals_direct_kick():
    """Test that the superposition equals the kick factor applied to the
    released state at t = 0."""

    params = natural_params(K0=81, k=1)
    x = uniform_grid(20, 8192)
    for n in [0, 3]:
        for phi in [0.0, np.pi, 1.1]:
            kick = KickSpec(p_gamma=2.5, phi=phi)
            kicked = KickedState(n, params, -np.pi / 4, kick)
            released = ReleasedState(n=n, params=params, tau=-np.pi / 4)

            direct = released_amplitude(released, x, 0.0) * kick_factor(
                x, kick.kappa(params.hbar), phi
            )
            direct /= np.sqrt(trapezoid(np.abs(direct) ** 2, x))
            closed_form = kicked_amplitude(kicked, x, 0.0)
            assert compare(closed_form, GridState(x=x, psi=direct, t=0.0)) < 1e-10

            # The density shows the imprint of the kick factor.
            np.testing.assert_allclose(
                kicked_density(kicked, x, 0.0),
                density_of_released(released, x, 0.0)
                * 4
                * kicked.norm_const**2
                * np.sin(2 * kick.kappa(params.hbar) * x - 0.5 * phi) ** 2,
                rtol=0,
                atol=1e-12,
            )


def test_kicked_density_parity_and_revival():
    """Test even densities for phases 0 and pi and the revival after half a
    period."""

    params = natural_params(K0=16, k=1)
    period = derive_scales(params).T_weak
    x = np.linspace(-10, 10, 201)
    for phi in [0.0, np.pi]:
        for n in [0, 1, 4]:
            kicked = KickedState(n, params, -period / 4, KickSpec(2.0, phi))
            for t in [0.0, 0.7, 2.2]:
                density = kicked_density(kicked, x, t)
                np.testing.assert_allclose(density, density[::-1], rtol=0, atol=1e-12)
                np.testing.assert_allclose(
                    kicked_density(kicked, x, t + period / 2),
                    density,
                    rtol=0,
                    atol=1e-8,
                )


def test_thermal_weights():
    """Test the Boltzmann weights and the tail mass."""

    weights = thermal_weights(0.0, 4.0, 13)
    assert weights.weights[0] == 1.0
    assert sum(weights.weights[1:]) == 0.0

    weights = thermal_weights(12.0, 4.0, 13)
    assert sum(weights.weights) == pytest.approx(1.0, rel=1e-14)
    assert weights.tail_mass == pytest.approx(np.exp(-14.0 / 3.0), rel=1e-12)
    assert weights.tail_mass == pytest.approx(0.0094, abs=1e-4)
    assert weights.tail_mass < 0.01
    assert weights.weights[1] / weights.weights[0] == pytest.approx(
        np.exp(-1.0 / 3.0), rel=1e-12
    )

    weights = thermal_weights(1e12, 4.0, 13)
    np.testing.assert_allclose(weights.weights, np.full(14, 1.0 / 14.0), rtol=1e-9)

    with pytest.raises(ValueError):
        thermal_weights(-1.0, 4.0, 13)


def test_heat_capacity_ratio():
    """Test the heat capacity ratio."""
    assert heat_capacity_ratio(1.0 / 3.0) == pytest.approx(0.9908, abs=1e-4)
    assert heat_capacity_ratio(0.0) == 1.0
    assert heat_capacity_ratio(1e-6) == pytest.approx(1.0, abs=1e-12)
    assert heat_capacity_ratio(10.0) == pytest.approx(4.5e-3, rel=0.02)


def test_benchmark_A():
    """Test the closed form benchmark of the dephasing."""
    ThetaE = 4.0
    omega = 2.0
    for theta in [1.0, 4.0, 12.0]:
        assert benchmark_A(theta, ThetaE, omega, 0.0) == pytest.approx(1.0, rel=1e-14)
        t = np.linspace(0, 3, 17)
        np.testing.assert_allclose(
            benchmark_A(theta, ThetaE, omega, t + np.pi / omega),
            benchmark_A(theta, ThetaE, omega, t),
            rtol=1e-12,
        )
    assert benchmark_A(12.0, ThetaE, omega, np.pi / (2 * omega)) == pytest.approx(
        0.0273, abs=1e-4
    )
    with pytest.raises(ValueError):
        benchmark_A(0.0, ThetaE, omega, 0.0)


def test_thermal_density_single_component():
    """Test that the thermal density at zero temperature is the density of
    the kicked ground state."""

    scenario = preset_scenario("fig3A", 0.0)
    kicked = KickedState(0, scenario.params, scenario.tau, scenario.kick)
    x = np.linspace(-10, 10, 201)
    for t in [0.0, 1.3]:
        np.testing.assert_allclose(
            thermal_density(scenario, x, t),
            kicked_density(kicked, x, t),
            rtol=1e-14,
            atol=0,
        )


def test_thermal_density_linearity_and_norm():
    """Test that the thermal density is the weighted sum of the kicked
    densities and normalized."""

    scenario = preset_scenario("fig3A")
    weights = scenario.get_weights().weights
    x = np.linspace(-30, 30, 6001)
    t_values = np.linspace(0, scenario.scales.T_weak, 5)

    for t in t_values[:2]:
        weighted_sum = np.zeros(len(x))
        for n, weight in enumerate(weights):
            kicked = KickedState(n, scenario.params, scenario.tau, scenario.kick)
            weighted_sum += weight * kicked_density(kicked, x, t)
        np.testing.assert_allclose(
            thermal_density(scenario, x, t), weighted_sum, rtol=1e-12, atol=1e-15
        )

    for t in t_values:
        density = thermal_density(scenario, x, t)
        assert trapezoid(density, x) == pytest.approx(1.0, abs=1e-6)
        components = thermal_components(scenario, x, t)
        assert components.shape == (14, len(x))
        np.testing.assert_allclose(
            np.sum(components, axis=0), density, rtol=1e-14, atol=0
        )


def test_released_thermal_density():
    """Test the thermal density before the kick."""

    scenario = preset_scenario("fig2B")
    x = np.linspace(-20, 20, 401)
    np.testing.assert_allclose(
        thermal_density(scenario, x, -0.2),
        released_thermal_density(scenario, x, -0.2),
        rtol=1e-14,
        atol=0,
    )
    ensemble = ThermalEnsemble(scenario)
    assert np.all(ensemble.released_density(x, 0.0) > 0)


def test_visibility_full_contrast_at_kick():
    """Test the full contrast at the kick for the trapped presets."""
    for name in ["fig3A", "fig3B", "fig3C", "fig3D"]:
        for theta in [1.0, 2.0, 3.0]:
            assert visibility(preset_scenario(name, theta), 0.0) == pytest.approx(
                1.0, abs=1e-9
            )


def test_visibility_revival():
    """Test the full revival of the visibility after half a period for all
    temperatures of the visibility presets."""

    for name in ["fig4A", "fig4B", "fig4C", "fig4D"]:
        scenario_file = get_preset(name).scenario_file
        for theta in scenario_file.theta_list:
            scenario = scenario_file.to_scenario(theta)
            assert visibility(
                scenario, 0.5 * scenario.scales.T_weak
            ) == pytest.approx(1.0, abs=1e-8)


def test_visibility_range_and_periodicity():
    """Test bounds and half period periodicity of the visibility."""

    scenario = preset_scenario("fig3C")
    period = scenario.scales.T_weak
    for t in np.linspace(0, period / 2, 9):
        value = visibility(scenario, t)
        assert 0.0 <= value <= 1.0
        assert visibility(scenario, t + period / 2) == pytest.approx(value, abs=1e-8)


def test_visibility_dephasing_with_temperature():
    """Test that the contrast washes out faster at higher temperatures."""
    scenario = preset_scenario("fig4B")
    t = scenario.scales.T_weak / 32
    values = [
        visibility(scenario.with_theta(theta * scenario.scales.ThetaE), t)
        for theta in [0.5, 1.0, 2.0, 3.0]
    ]
    assert np.all(np.diff(values) <= 0)
    assert values[-1] < values[0]


def test_visibility_minimum_near_benchmark_minimum():
    """Test that the visibility and the benchmark reach their minima close
    to each other for a kick near the turning point of the expansion."""

    for name, thetas in [("fig4B", [0.5, 1.0, 2.0, 3.0]), ("fig4D", [0.5, 1.0, 2.0])]:
        scenario_file = get_preset(name).scenario_file
        for theta in thetas:
            scenario = scenario_file.to_scenario(theta)
            scales = scenario.scales
            t = np.linspace(0, 0.5 * scales.T_weak, 51)
            values = [visibility(scenario, t_i) for t_i in t]
            benchmark = benchmark_A(scenario.theta, scales.ThetaE, scales.omega, t)
            assert abs(t[np.argmin(values)] - t[np.argmin(benchmark)]) <= (
                scales.T_weak / 8
            ), (name, theta)


def test_visibility_errors():
    """Test undefined visibilities and invalid times."""

    scenario_file = get_preset("fig1B").scenario_file.with_updates(pure_state=1)
    scenario = scenario_file.to_scenario()
    with pytest.raises(UndefinedVisibilityError):
        visibility(scenario, 0.0)
    with pytest.raises(ContractViolationError):
        visibility(preset_scenario("fig3A"), -0.1)
    with pytest.raises(ValueError):
        visibility(preset_scenario("fig1A"), 0.0)


def test_windowed_visibility():
    """Test the windowed contrast of a fully imprinted pattern."""
    scenario = preset_scenario("fig2B")
    node = first_imprint_node(scenario.kick, scenario.params.hbar)
    assert windowed_visibility(scenario, 0.0, 2 * node) > 0.99


def test_coverage_check():
    """Test the coverage check of the grids."""

    scenario = preset_scenario("fig2B")
    check_coverage(scenario)

    narrow = Scenario(
        params=scenario.params,
        theta=scenario.theta,
        kick=scenario.kick,
        tau=scenario.tau,
        x_grid=Grid(-10, 10, 101),
        t_grid=scenario.t_grid,
    )
    with pytest.raises(GridTooSmallError):
        check_coverage(narrow)

    early = Scenario(
        params=scenario.params,
        theta=scenario.theta,
        kick=scenario.kick,
        tau=scenario.tau,
        x_grid=scenario.x_grid,
        t_grid=Grid(scenario.tau - 1.0, 0.0, 11),
    )
    with pytest.raises(ContractViolationError):
        check_coverage(early)

    hot = scenario.with_theta(5 * scenario.scales.ThetaE)
    with pytest.warns(UserWarning):
        check_coverage(hot)


def test_imprint_coverage():
    """Test that the cold mirror is too narrow to carry the imprint of the
    kick and the hot mirror is not."""

    cold = preset_scenario("fig2A")
    hot = preset_scenario("fig2B")
    node = first_imprint_node(cold.kick, cold.params.hbar)
    assert node == pytest.approx(np.pi / (4 * cold.kick.kappa(1.0)))
    assert abs(kick_factor(node, cold.kick.kappa(1.0), cold.kick.phi)) < 1e-14
    assert imprint_coverage(cold) < 0.05
    assert imprint_coverage(hot) > 0.05


def test_scenario_dict_round_trip():
    """Test the transport format of scenarios."""
    for name in ["fig1C", "fig2A", "fig4D"]:
        scenario = preset_scenario(name)
        assert Scenario.from_dict(scenario.to_dict()) == scenario
