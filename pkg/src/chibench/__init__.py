"""Simulate and verify the optical preparation of four-qubit chi states from hyper-entangled photon pairs."""

from chibench.qmath import KERNEL

__version__ = "0.1.0"
__all__ = ["KERNEL", "__version__"]
