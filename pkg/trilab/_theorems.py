"""Checks of the structural results on concrete tilings.

Three statements are checked:

* a tiling by at least two triangles either has two tiles sharing a full side or is a member
  of the periodic family, recovered through its T/L/R labelling;
* a tiling with a smallest tile and at least two tiles is not perfect; this covers finite
  tilings of convex polygons and periodic tilings of the plane;
* an E-configuration starts a descent through E-configurations of strictly decreasing length.
"""
import logging
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel

from trilab._errors import (
    DescentError,
    InconsistentIndexingError,
    NotAnEConfigurationError,
    RelationError,
    TopologyMismatchError,
    WindowError,
)
from trilab._generators import extract_tlr_indexing, infer_alpha
from trilab._lattice import Rational, RationalLike, format_rational
from trilab._skeleton import DescentTrace, descend, find_e_configurations
from trilab._tiling import Tiling, perfectness, shared_side_pairs

logger = logging.getLogger(__name__)


class TheoremCheck(BaseModel):
    """TheoremCheck collects the outcome of ``check_theorems``.

    Fields left as None did not apply to the tiling.

    Attributes:
        shared_side: A pair of tile indices with a common full side.
        alpha: The family parameter, when no two tiles share a side.
        shared_side_or_family: Whether one of the two alternatives holds.
        not_perfect: Whether a tiling with a smallest tile and two or more tiles is imperfect.
        descent: The descent from the first E-configuration in the core.
        detail: Why an alternative or the descent could not be established.
    """

    shared_side: Optional[Tuple[int, int]] = None
    alpha: Optional[Rational] = None
    shared_side_or_family: Optional[bool] = None
    not_perfect: Optional[bool] = None
    descent: Optional[DescentTrace] = None
    detail: Tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        """False exactly when a checked statement failed."""
        return self.shared_side_or_family is not False and self.not_perfect is not False

    def to_document(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "shared_side": list(self.shared_side) if self.shared_side is not None else None,
            "alpha": format_rational(self.alpha) if self.alpha is not None else None,
            "shared_side_or_family": self.shared_side_or_family,
            "not_perfect": self.not_perfect,
            "descent": self.descent.to_document() if self.descent is not None else None,
            "detail": list(self.detail),
        }


def _several_tiles(t: Tiling) -> bool:
    return len(t.tiles) >= 2 or (t.is_periodic and len(t.tiles) >= 1)


def check_theorems(t: Tiling, margin: RationalLike = 2, max_steps: int = 32) -> TheoremCheck:
    """Checks the shared side or family alternative, imperfection and the descent on ``t``.

    The family alternative only exists for plane windows; bounded tilings without a shared
    side fail the alternative. Imperfection is decided for polygon regions and periodic
    tilings, whose smallest tile exists. Non-periodic windows leave it undecided.

    Raises:
        InvalidTilingError: ``t`` is not a valid tiling.
        WindowError: ``margin`` does not leave a usable core.
    """
    detail: List[str] = []
    fields: Dict[str, Any] = {}
    if _several_tiles(t):
        pairs = shared_side_pairs(t)
        if pairs:
            fields["shared_side"] = pairs[0]
            fields["shared_side_or_family"] = True
        elif t.region.is_polygon:
            fields["shared_side_or_family"] = False
            detail.append("no two tiles share a side and a bounded region has no family tiling")
        else:
            try:
                fields["alpha"] = infer_alpha(extract_tlr_indexing(t, margin), t).alpha
                fields["shared_side_or_family"] = True
            except (
                TopologyMismatchError,
                WindowError,
                RelationError,
                InconsistentIndexingError,
            ) as exc:
                fields["shared_side_or_family"] = False
                detail.append(f"no shared side and no family labelling: {exc}")
        if t.region.is_polygon or t.is_periodic:
            fields["not_perfect"] = not perfectness(t).perfect

    configurations = find_e_configurations(t, margin)
    if configurations:
        try:
            fields["descent"] = descend(t, configurations[0], max_steps)
        except (DescentError, NotAnEConfigurationError) as exc:
            detail.append(f"descent from {configurations[0].base} failed: {exc}")
    check = TheoremCheck(detail=tuple(detail), **fields)
    logger.info("theorem checks %s", "hold" if check.holds else "fail")
    return check
