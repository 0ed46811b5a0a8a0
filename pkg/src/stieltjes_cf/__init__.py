"""Converging factors of Stieltjes series as inverse factorial series.

Modules: ``numkernel`` (scalars, special functions), ``facseries`` (factorial
series algebra), ``stieltjes`` (moment models and the coefficient recursion),
``transforms`` (Weniger delta, Wynn epsilon), ``catalog`` (worked models) and
``cli``.
"""

__version__ = "0.1.0"
