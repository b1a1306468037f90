"""Invariants of plane germs: Fukui sets, C^1 transfer, weighted classification."""
from .c1 import TransferResult, c1_transfer_check, scale_matches
from .fukui import SIGN_MODES, FukuiSet, arc_oracle, arc_order, fukui_set
from .weighted import (
    MonomialLike,
    Verdict,
    WeightedData,
    classify_weighted,
    monomial_like,
    weighted_data,
)

__all__ = [
    "FukuiSet", "MonomialLike", "SIGN_MODES", "TransferResult", "Verdict",
    "WeightedData", "arc_oracle", "arc_order", "c1_transfer_check",
    "classify_weighted", "fukui_set", "monomial_like", "scale_matches",
    "weighted_data",
]
