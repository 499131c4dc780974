"""Deciding and constructing rigged single-elimination brackets.

Given a round-robin results table and a favorite player, the solvers here
answer whether some bracket seeding crowns the favorite, and produce one
when it exists.  See ``core`` for the instance format and simulation,
``embed``/``indeg``/``outdeg`` for the solvers, ``oracles`` for exhaustive
baselines, and ``cli`` for the command-line entry point.
"""

from .arborescence import (
    Lba,
    UbaShape,
    arbitrary_lba,
    is_lba,
    lba_to_seeding,
    merge_lbas,
    parse_lba,
    seeding_to_lba,
    serialize_lba,
    uba_shape,
)
from .core import (
    KnockoutTrace,
    ParseError,
    Seeding,
    Tournament,
    bracket_rounds,
    champion_of,
    format_tournament,
    format_trace,
    parse_tournament,
    seeding_from_sequence,
    simulate,
    validate_match_sequence,
)
from .embed import (
    Coloring,
    Embedding,
    HostGraph,
    PatternTree,
    embed_colorful_tree,
    solve_exact,
)
from .indeg import (
    IndegConfig,
    Wwf,
    build_host,
    build_pattern_forest,
    complete_wwf,
    extend_coloring,
    find_wwf,
    sample_coloring,
    solve_indeg,
)
from .instances import GenSpec, gen_planted_yes, gen_random, generate
from .oracles import (
    NicenessReport,
    OracleLimitError,
    brute_force_decide,
    brute_force_wwf,
    enumerate_seedings,
    extract_local_lba,
    is_wwf,
    niceness,
    repair_to_nice,
)
from .outdeg import solve_outdeg

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "Embedding",
    "GenSpec",
    "HostGraph",
    "IndegConfig",
    "KnockoutTrace",
    "Lba",
    "NicenessReport",
    "OracleLimitError",
    "ParseError",
    "PatternTree",
    "Seeding",
    "Tournament",
    "UbaShape",
    "Wwf",
    "arbitrary_lba",
    "bracket_rounds",
    "brute_force_decide",
    "brute_force_wwf",
    "build_host",
    "build_pattern_forest",
    "champion_of",
    "complete_wwf",
    "embed_colorful_tree",
    "enumerate_seedings",
    "extend_coloring",
    "extract_local_lba",
    "find_wwf",
    "format_tournament",
    "format_trace",
    "gen_planted_yes",
    "gen_random",
    "generate",
    "is_lba",
    "is_wwf",
    "lba_to_seeding",
    "merge_lbas",
    "niceness",
    "parse_lba",
    "parse_tournament",
    "repair_to_nice",
    "sample_coloring",
    "seeding_from_sequence",
    "seeding_to_lba",
    "serialize_lba",
    "simulate",
    "solve_exact",
    "solve_indeg",
    "solve_outdeg",
    "uba_shape",
    "validate_match_sequence",
]
