"""Explicit polycube rep-tiles with exact tiling checks and cubical homology."""

from .constructions import (assemble_rstar, footprint_reptile, notch_non_tiler, sphere_reptile,
                            suspend, thicken, wedge_sum)
from .homology import HomologyProfile, homology
from .lattice import Box, LatticeIsometry, Polycube
from .verify import Placement, TilingCertificate, verify_tiling

__version__ = "0.1.0"
