"""Sub-Riemannian geodesics on jet space: Hill intervals of a polynomial F,
holonomy certificates for the absence of periodic geodesics, and geodesic
flow integration."""

from jetgeo._core import *  # noqa: F401,F403
