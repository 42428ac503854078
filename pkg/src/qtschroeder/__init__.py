"""Exact q,t-enumerators, statistics and bijections for decorated Dyck
paths and reduced parallelogram polyominoes, with the Schroeder-case
recursion family that ties them together."""

from .qtpoly import QTPolynomial, q_power_binom2, qbinom
from .dyck import (
    DDB_STAR,
    DDB_TRIANGLE,
    DDD,
    DecoratedDyckPath,
    LabelledDyckPath,
    area,
    bounce,
    dd_qt,
    dinv_decorated,
    dinv_labelled,
    enumerate_dd,
    enumerate_pld,
    features,
    shuffle_labellings,
    validate_path,
)
from .polyomino import (
    CIRC,
    STAR,
    ReducedPolyomino,
    bounce_word,
    enumerate_rp,
    poly_area,
    poly_area_word,
    poly_bounce,
    poly_dinv,
    rp_qt,
)
from .recursion import (
    FIndex,
    f_base,
    f_eval,
    f_onestep_residual,
    schroeder_sum,
)
from .bijections import (
    dyck_to_poly,
    poly_to_dyck,
    rise_to_fall,
    sweep,
    sweep_inv,
    zeta,
    zeta_inv,
)

__all__ = [
    "QTPolynomial",
    "qbinom",
    "q_power_binom2",
    "DDD",
    "DDB_STAR",
    "DDB_TRIANGLE",
    "DecoratedDyckPath",
    "LabelledDyckPath",
    "validate_path",
    "features",
    "area",
    "dinv_labelled",
    "dinv_decorated",
    "bounce",
    "shuffle_labellings",
    "enumerate_dd",
    "enumerate_pld",
    "dd_qt",
    "STAR",
    "CIRC",
    "ReducedPolyomino",
    "poly_area_word",
    "poly_area",
    "poly_bounce",
    "poly_dinv",
    "bounce_word",
    "enumerate_rp",
    "rp_qt",
    "FIndex",
    "f_base",
    "f_eval",
    "f_onestep_residual",
    "schroeder_sum",
    "sweep",
    "sweep_inv",
    "zeta",
    "zeta_inv",
    "poly_to_dyck",
    "dyck_to_poly",
    "rise_to_fall",
]
