"""Weak-asymptotic machinery for two merging phase fronts in 1D.

Subpackages follow the pipeline: profiles -> kernels -> front_dynamics ->
order_field / temperature_field -> weak_residuals, with pde_reference as an
independent finite-difference cross-check and cli as the orchestration layer.
"""

__version__ = "0.1.0"
