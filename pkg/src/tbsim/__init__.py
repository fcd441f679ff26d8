"""Simulator for an integrated time-bin entangled photon-pair source.

Modules, bottom-up: ``components`` (couplers, heaters, delay lines),
``circuit`` (netlist and classical propagation), ``quantum`` (two-photon
state and analyzer statistics), ``detection`` (gated-detector Monte Carlo),
``analysis`` (fringe fitting) and ``calibration`` (heater tuning).
"""

__version__ = "0.1.0"
