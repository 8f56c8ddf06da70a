"""Exact splitting checks for projectivized toric vector bundles over finite fields.

Thin wrappers over the compiled core: every call returns the parsed JSON
document the command-line tool would print.  Fans are builtin names
(``"P2"``, ``"P1xP1"``, ...) or fan documents (dict or JSON text); bundles
are builtin specs (``"tangent"``, ``"cotangent"``, ``"line:[..]"``,
``"sum:[[..],..]"``) or bundle documents.
"""

import json as _json

from . import _core

__version__ = _core.__version__

__all__ = [
    "builtin_fans",
    "check_split",
    "cocycle",
    "fixtures",
    "klyachko_info",
    "sections",
]


def _as_text(doc):
    return _json.dumps(doc) if isinstance(doc, dict) else doc


def check_split(fan, bundle, p, d=1, criterion="all", d_max=4):
    """Run the splitting criteria.

    The result dict carries ``decision`` (``"SPLIT"``, ``"NOT_SPLIT"``,
    ``"CRITERION_FAILED"`` or ``"UNKNOWN"``) plus the per-criterion reports
    with witnesses and diagnostics.
    """
    return _json.loads(
        _core.check_split(_as_text(fan), _as_text(bundle), p, d, criterion, d_max)
    )


def klyachko_info(fan, bundle, p=2, d=1):
    """Per-ray filtration jumps, dimensions and the spread of a bundle."""
    return _json.loads(_core.klyachko_info(_as_text(fan), _as_text(bundle), p, d))


def sections(fan, bundle, p=2, d=1, charts=False):
    """Weight spaces of global sections; ``charts=True`` adds per-cone
    monomial restrictions of every basis section."""
    return _json.loads(_core.sections(_as_text(fan), _as_text(bundle), p, d, charts))


def cocycle(fan, bundle, p=2, d=1):
    """Per-cone transition constants and the cocycle identity check."""
    return _json.loads(_core.cocycle(_as_text(fan), _as_text(bundle), p, d))


def fixtures(p=2, d=1):
    """The named fixture bundles over GF(p^d)."""
    return _json.loads(_core.fixtures(p, d))


def builtin_fans():
    """Names accepted for the ``fan`` argument."""
    return list(_core.builtin_fans())
