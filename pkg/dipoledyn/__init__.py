"""dipoledyn: two dipole-dipole coupled two-level ions, simulated in the no-photon picture."""

__version__ = "0.1.0"
