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
"""Baked scenarios that reproduce the published density and visibility
figures."""

from dataclasses import dataclass

import numpy as np

from thermalcat.ensemble import Grid
from thermalcat.scenario_file import ScenarioFile
from thermalcat.thermalcat_types import KickMode, UnitSystem


@dataclass(frozen=True)
class FigPreset:
    """A named scenario and the command that evaluates it."""

    name: str
    scenario_file: ScenarioFile
    command: str = "density"


def _pure_state_preset(K0, tau_in_T, p_gamma, kick_mode, n, x_half_span, inferred):
    """Released and kicked eigenstate in the weak trap k=1."""
    return ScenarioFile(
        units=UnitSystem.natural,
        M=1,
        K0=K0,
        k=1,
        theta_in_ThetaE=0,
        p_gamma=p_gamma,
        tau_in_T=tau_in_T,
        phi=np.pi,
        kick_mode=kick_mode,
        pure_state=n,
        x_grid=Grid(-x_half_span, x_half_span, 801),
        t_grid=Grid(tau_in_T, 1.0, 200),
        caption_inferred=inferred,
    )


def _free_preset(theta_in_ThetaE, phi):
    """Thermal mirror set free at tau = -1/2 from K0 = 16."""
    return ScenarioFile(
        units=UnitSystem.natural,
        M=1,
        K0=16,
        k=0,
        theta_in_ThetaE=theta_in_ThetaE,
        p_gamma=0.6,
        tau_in_T=-0.5,
        phi=phi,
        x_grid=Grid(-60, 60, 1024),
        t_grid=Grid(-0.5, 3.0, 351),
    )


def _trapped_preset(theta_in_ThetaE, K0, k, p_gamma, tau_in_T, x_half_span):
    """Thermal mirror released into a weak trap."""
    return ScenarioFile(
        units=UnitSystem.natural,
        M=1,
        K0=K0,
        k=k,
        theta_in_ThetaE=theta_in_ThetaE,
        p_gamma=p_gamma,
        tau_in_T=tau_in_T,
        phi=np.pi,
        x_grid=Grid(-x_half_span, x_half_span, 801),
        t_grid=Grid(0, 1, 201),
        caption_inferred=("phi",),
    )


def _visibility_preset(density_preset):
    """Visibility sweep over temperature and one period with the parameters
    of a trapped density preset."""
    return density_preset.with_updates(
        theta_list=tuple(0.25 * (i + 1) for i in range(12)),
        t_grid=Grid(0, 1, 101),
    )


def _build_presets():
    """Create the dictionary of all presets."""

    presets = {
        "fig1A": _pure_state_preset(
            16, -0.75, 1, KickMode.boost, 0, 24, ("phi", "tau_in_T")
        ),
        "fig1B": _pure_state_preset(
            81, -0.25, 1, KickMode.superposition, 0, 30, ("phi",)
        ),
        "fig1C": _pure_state_preset(16, -0.25, 2.5, KickMode.boost, 3, 24, ("phi",)),
        "fig1D": _pure_state_preset(
            81, -0.125, 2.5, KickMode.superposition, 3, 30, ("phi",)
        ),
        "fig2A": _free_preset(1.0 / 3.0, np.pi),
        "fig2B": _free_preset(3, np.pi),
        "fig2C": _free_preset(3, 0.0),
        "fig3A": _trapped_preset(3, 16, 1, 2, -0.05, 24),
        "fig3B": _trapped_preset(3, 64, 4, 2, -0.25, 16),
        "fig3C": _trapped_preset(2.815, 32, 2, 1, -0.1, 20),
        "fig3D": _trapped_preset(3, 16, 1, 4, -0.25, 24),
    }
    fig_presets = {
        name: FigPreset(name=name, scenario_file=scenario_file)
        for name, scenario_file in presets.items()
    }
    for letter in "ABCD":
        name = "fig4" + letter
        fig_presets[name] = FigPreset(
            name=name,
            scenario_file=_visibility_preset(presets["fig3" + letter]),
            command="visibility",
        )
    return fig_presets


FIG_PRESETS = _build_presets()


def get_preset(name):
    """Return the preset with the given name."""
    if name not in FIG_PRESETS:
        raise ValueError(
            'Unknown preset "{}", available presets are: {}'.format(
                name, ", ".join(FIG_PRESETS.keys())
            )
        )
    return FIG_PRESETS[name]
