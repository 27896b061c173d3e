"""Exact engine for decorated cup-diagram combinatorics and its algebra."""

from .combinatorics import (
    TilePartition,
    Weight,
    addable_removable,
    bruhat_leq,
    enumerate_tilepartitions,
    enumerate_weights,
    tile_content,
    tilepartition_to_weight,
    weight_to_tilepartition,
)
from .cups import (
    Cup,
    CupDiagram,
    DyckPath,
    Ray,
    adjacent,
    adjacent_cups,
    breadth,
    commute,
    covers,
    cup_diagram,
    doubly_covers,
    dyck_path,
    flip_cup,
    generated_cup,
    trace_tiled_diagram,
)
from .gaussian import GaussInt
from .orientation import (
    KLPolynomial,
    OrientedPair,
    dp_k,
    dp_set,
    kl_polynomial,
    orient,
    socle_weight,
)
from .algebra import (
    AlgebraElement,
    BasisTriple,
    Generator,
    basis,
    canonical_chain,
    dual,
    element_degree,
    element_of,
    generator_element,
    generators,
    idem,
    lower,
    multiply,
    normalize_word,
    raise_,
)
from .contraction import (
    contractible_sites,
    dilate_weight,
    phi_cup,
    phi_element,
    phi_generator,
    phi_weight,
)
from .cellmod import (
    AlperinGraph,
    CellModule,
    act_on_vector,
    alperin_diagram,
    cell_module,
    radical_filtration,
)

__version__ = "0.1.0"
