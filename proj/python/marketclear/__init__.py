"""Exact matching-market solver.

Market-clearing price vectors, welfare-maximal perfect matchings, and
machine checks of the structural results connecting the two, over square
valuation matrices with exact rational entries.
"""

from ._core import (
    AlphaOutOfRangeError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidMarketError,
    MarketParseError,
    NotClearingError,
    NotPerfectError,
    OracleCapExceededError,
    brute_force_max_matchings,
    buyer_payoffs,
    check_fact1,
    check_lemma1,
    check_property1,
    check_theorem1,
    check_theorem2,
    convex_combine,
    diagonal_shift,
    elementwise_max,
    elementwise_min,
    enumerate_perfect_matchings,
    find_perfect_matching,
    is_market_clearing,
    normalize,
    preferred_graph,
    prices_from_matching,
    rotate_cycle,
    social_welfare,
    solve_auction,
)

__all__ = [
    "AlphaOutOfRangeError",
    "DimensionMismatchError",
    "IndexOutOfRangeError",
    "InvalidMarketError",
    "MarketParseError",
    "NotClearingError",
    "NotPerfectError",
    "OracleCapExceededError",
    "brute_force_max_matchings",
    "buyer_payoffs",
    "check_fact1",
    "check_lemma1",
    "check_property1",
    "check_theorem1",
    "check_theorem2",
    "convex_combine",
    "diagonal_shift",
    "elementwise_max",
    "elementwise_min",
    "enumerate_perfect_matchings",
    "find_perfect_matching",
    "is_market_clearing",
    "normalize",
    "preferred_graph",
    "prices_from_matching",
    "rotate_cycle",
    "social_welfare",
    "solve_auction",
]
