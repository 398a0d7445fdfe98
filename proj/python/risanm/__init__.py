# SPDX-License-Identifier: Apache-2.0
"""RIS-assisted mmWave channel estimation via atomic norm minimization.

Thin re-export of the compiled extension; the submodules mirror the C++
namespaces (channel, anm, spectral, hybrid, passive, control, metrics,
harness).
"""

try:
    from . import _risanm as _core  # wheel layout
except ImportError:
    import _risanm as _core  # in-tree build, extension on PYTHONPATH

anm = _core.anm
channel = _core.channel
control = _core.control
harness = _core.harness
hybrid = _core.hybrid
metrics = _core.metrics
passive = _core.passive
spectral = _core.spectral

Rng = _core.Rng
LinkParams = _core.LinkParams
CascadeParams = _core.CascadeParams
PhaseControl = _core.PhaseControl
ToeplitzGenerator = _core.ToeplitzGenerator
SolverOptions = _core.SolverOptions
AnmSolution = _core.AnmSolution
CombinerMode = _core.CombinerMode
HybridSetup = _core.HybridSetup
PassiveSetup = _core.PassiveSetup
TrialRecord = _core.TrialRecord

__all__ = [
    "anm",
    "channel",
    "control",
    "harness",
    "hybrid",
    "metrics",
    "passive",
    "spectral",
    "Rng",
    "LinkParams",
    "CascadeParams",
    "PhaseControl",
    "ToeplitzGenerator",
    "SolverOptions",
    "AnmSolution",
    "CombinerMode",
    "HybridSetup",
    "PassiveSetup",
    "TrialRecord",
]
