"""Intrinsic volumes of ellipsoids and expected volumes of random simplices."""
from .core import (
    Ellipsoid,
    ScalarEstimate,
    SpectrumPSD,
    distance_to_ellipsoid,
    polar,
    sphere_area,
    support_function,
    unit_ball_volume,
)
from .intrinsic import (
    IntrinsicVolumeReport,
    intrinsic_volume,
    intrinsic_volumes,
    quermassintegral,
    steiner_volume,
    vk_duality,
    vk_quadrature,
    vk_rfunction,
)
from .quad import QuadratureConfig
from .randsimplex import expected_simplex_gaussian, expected_simplex_uniform

__version__ = "0.1.0"

__all__ = [
    "Ellipsoid",
    "ScalarEstimate",
    "SpectrumPSD",
    "QuadratureConfig",
    "IntrinsicVolumeReport",
    "distance_to_ellipsoid",
    "polar",
    "sphere_area",
    "support_function",
    "unit_ball_volume",
    "intrinsic_volume",
    "intrinsic_volumes",
    "quermassintegral",
    "steiner_volume",
    "vk_duality",
    "vk_quadrature",
    "vk_rfunction",
    "expected_simplex_gaussian",
    "expected_simplex_uniform",
]
