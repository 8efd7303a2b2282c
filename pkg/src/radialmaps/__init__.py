"""Slice-based verification toolkit for radial holomorphic maps ``F(x) = f(x) x``."""

from .norm_models import NormModel, SupportFunctional, norm, sphere_sample, support_functional
from .power_series import TruncatedSeries
from .radial_maps import (
    Poly,
    Profile,
    RadialMap,
    SchwarzPower,
    alexander_transform,
    identity_map,
    koebe_map,
    profile_map,
    slice_series,
)

__version__ = "0.1.0"

__all__ = [
    "NormModel",
    "Poly",
    "Profile",
    "RadialMap",
    "SchwarzPower",
    "SupportFunctional",
    "TruncatedSeries",
    "alexander_transform",
    "identity_map",
    "koebe_map",
    "norm",
    "profile_map",
    "slice_series",
    "sphere_sample",
    "support_functional",
]
