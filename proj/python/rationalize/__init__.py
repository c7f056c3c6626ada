"""Two-period rationalization model: python surface over the C++ core."""

try:
    from ._rationalize import (
        __version__,
        classical_demand,
        demand_curve,
        elicit,
        optimal_tariff,
        propcheck,
        rationalizing_demand,
        solve,
    )
except ImportError:  # build-tree layout: extension lives next to the package
    from _rationalize import (
        __version__,
        classical_demand,
        demand_curve,
        elicit,
        optimal_tariff,
        propcheck,
        rationalizing_demand,
        solve,
    )

__all__ = [
    "__version__",
    "classical_demand",
    "demand_curve",
    "elicit",
    "optimal_tariff",
    "propcheck",
    "rationalizing_demand",
    "solve",
]
