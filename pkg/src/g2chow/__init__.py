"""Exact combinatorics and chart geometry for the Chow quotient of G(n,2)."""

__version__ = "0.1.0"

from .errors import G2ChowError  # noqa: E402
from .exact import ProjPair  # noqa: E402
from .matroid import Rank2Matroid, enumerate_admissible, hypersimplex, polytope_of  # noqa: E402
from .cortege import Cortege, StableTree, enumerate_decompositions, enumerate_stable_trees  # noqa: E402
from .chamber import enumerate_chambers, omega_of  # noqa: E402
from .charts import ChartPoint, classify_extension, plucker_to_params, transition  # noqa: E402
from .wonderful import BuildingElement, generate_building_set, schedule  # noqa: E402
from .catalog import catalog, golden_check  # noqa: E402

__all__ = [
    "__version__",
    "G2ChowError",
    "ProjPair",
    "Rank2Matroid",
    "enumerate_admissible",
    "hypersimplex",
    "polytope_of",
    "Cortege",
    "StableTree",
    "enumerate_decompositions",
    "enumerate_stable_trees",
    "enumerate_chambers",
    "omega_of",
    "ChartPoint",
    "classify_extension",
    "plucker_to_params",
    "transition",
    "BuildingElement",
    "generate_building_set",
    "schedule",
    "catalog",
    "golden_check",
]
