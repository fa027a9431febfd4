"""Exact genus-0/1 Gromov-Witten invariants of Calabi-Yau hypersurfaces.

Everything reduces to exact arithmetic on truncated power series over the
rationals: a bigraded hypergeometric kernel generates a tower of
t-polynomials, the mirror map, and a family of rational-function series
in an auxiliary variable h; residues, a regularization splitting, and a
handful of combinatorial identities assemble the invariants and the
verification suites.
"""

from .errors import (
    BadConstantTerm,
    BadMirrorMap,
    DivByNonUnit,
    HypergwError,
    MissingColumn,
    NonzeroConstant,
    NotRegularizable,
    NotTFree,
    PoleTooHigh,
    RegularityViolation,
    TruncationMismatch,
    WindowTooSmall,
)
from .hyper import HyperSpec
from .report import IdentityReport
from .residues import HLaurent, RatFunc, USeriesRF
from .series import QSeries, TPoly, WSeries, format_rational, parse_rational

__version__ = "0.1.0"

__all__ = [
    "BadConstantTerm",
    "BadMirrorMap",
    "DivByNonUnit",
    "HLaurent",
    "HyperSpec",
    "HypergwError",
    "IdentityReport",
    "MissingColumn",
    "NonzeroConstant",
    "NotRegularizable",
    "NotTFree",
    "PoleTooHigh",
    "QSeries",
    "RatFunc",
    "RegularityViolation",
    "TPoly",
    "TruncationMismatch",
    "USeriesRF",
    "WSeries",
    "WindowTooSmall",
    "format_rational",
    "parse_rational",
    "__version__",
]
