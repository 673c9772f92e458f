"""Classification results shared by all breaking criteria."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

SMOOTH = "smooth"
BREAKS = "breaks"
INDETERMINATE = "indeterminate"

_CLASSIFICATIONS = (SMOOTH, BREAKS, INDETERMINATE)

#: Validity scope of a verdict: the criteria make claims either for all
#: positive times, for the first oscillation period only, or up to a finite
#: search horizon.
SCOPE_GLOBAL = "global"
SCOPE_FIRST_PERIOD = "first_period"
SCOPE_HORIZON = "horizon"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one breaking criterion at one initial-data sample.

    ``evidence`` carries the numbers the decision was made from (the slope
    discriminant, invariant constants, located crossing times, Floquet
    discriminant, ...) so that a verdict is auditable downstream.
    """

    criterion: str
    classification: str
    scope: str = SCOPE_GLOBAL
    theta_star: float | None = None
    evidence: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.classification not in _CLASSIFICATIONS:
            raise ValueError(f"unknown classification {self.classification!r}")

    @property
    def breaks(self) -> bool:
        return self.classification == BREAKS

    @property
    def smooth(self) -> bool:
        return self.classification == SMOOTH

    @property
    def indeterminate(self) -> bool:
        return self.classification == INDETERMINATE

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation (non-finite floats become strings)."""
        def _clean(value: Any) -> Any:
            if isinstance(value, float) and not math.isfinite(value):
                return repr(value)
            if hasattr(value, "item"):  # numpy scalar
                return value.item()
            return value

        return {
            "criterion": self.criterion,
            "classification": self.classification,
            "scope": self.scope,
            "theta_star": _clean(self.theta_star),
            "evidence": {k: _clean(v) for k, v in sorted(self.evidence.items())},
        }
