"""Extremal planar graph toolkit: constructions, pattern checks, spectra, and exhaustive searches."""

from __future__ import annotations

__version__ = "0.1.0"

from .graph import Graph, LinearForest, join, disjoint_union, build_basic, degree_peel
from .graph6 import decode, encode
from .canon import canonical_form, are_isomorphic
from .planarity import is_planar, is_outerplanar, planar_embedding, face_census
from .patterns import Pattern, contains_pattern, find_pattern, joined_freeness, two_cycles_or_certificate
from .spectral import spectral_radius, perron_profile, transform, transformation_gain

__all__ = [
    "Graph",
    "LinearForest",
    "Pattern",
    "are_isomorphic",
    "build_basic",
    "canonical_form",
    "contains_pattern",
    "decode",
    "degree_peel",
    "disjoint_union",
    "encode",
    "face_census",
    "find_pattern",
    "is_outerplanar",
    "is_planar",
    "join",
    "joined_freeness",
    "perron_profile",
    "planar_embedding",
    "spectral_radius",
    "transform",
    "transformation_gain",
    "two_cycles_or_certificate",
]
