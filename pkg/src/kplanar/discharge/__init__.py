from .blocks import BlockDecomposition, BlockError, decompose_blocks
from .engine import ChargeLedger, DischargeError, run_discharge
from .neighbors import side_neighbors, side_plan, wedge_neighbor
from .rules import RuleSet, five_planar_main, four_planar, k_planar_general, min_k, outer_five, ruleset

__all__ = [
    "BlockDecomposition", "BlockError", "ChargeLedger", "DischargeError", "RuleSet",
    "decompose_blocks", "five_planar_main", "four_planar", "k_planar_general", "min_k",
    "outer_five", "run_discharge", "ruleset", "side_neighbors", "side_plan", "wedge_neighbor",
]
