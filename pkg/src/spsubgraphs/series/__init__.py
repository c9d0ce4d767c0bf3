"""Truncated multivariate power series over pluggable coefficient rings."""

from .jets import Jet, ujet
from .rings import BigFloat, ExactRational, JetRing, Ring, RingError, UJet2, XJet, ring_from_tag
from .series import (
    CapExceeded,
    Caps,
    DivergenceError,
    SeriesError,
    TailReport,
    TruncatedSeries,
    arith,
    cyc,
    diff,
    eval_numeric,
    exp_geq,
    integrate_div_x,
    log_one_minus,
    qbinom_sum,
    subs_x,
)

__all__ = [
    "BigFloat", "CapExceeded", "Caps", "DivergenceError", "ExactRational", "Jet", "JetRing", "Ring",
    "RingError", "SeriesError", "TailReport", "TruncatedSeries", "UJet2", "XJet", "arith", "cyc", "diff",
    "eval_numeric", "exp_geq", "integrate_div_x", "log_one_minus", "qbinom_sum", "ring_from_tag",
    "subs_x", "ujet",
]
