"""
CheckReport records the outcome of verifying one claim over a finite
parameter range, together with any observations made outside that range.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class ClaimStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    # violations recorded as documented observations, not failures
    FLAGGED = "flagged"
    # the requested parameters lie outside the claim's stated range
    OUT_OF_RANGE = "out-of-range"


@dataclass
class CheckReport:
    """Outcome of checking one claim over a parameter range"""
    claim: str
    range: Dict[str, Any]
    status: ClaimStatus = ClaimStatus.PASS
    counterexample: Optional[Dict[str, Any]] = None
    observations: List[Dict[str, Any]] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        """Only FAIL counts against a suite"""
        return self.status is not ClaimStatus.FAIL

    def record_failure(self, **counterexample: Any):
        """Keep the first counterexample and mark the claim failed"""
        if self.counterexample is None:
            self.counterexample = counterexample
        self.status = ClaimStatus.FAIL

    def observe(self, **observation: Any):
        self.observations.append(observation)

    def flag(self, **observation: Any):
        """Record a violation that the claim's scope tolerates"""
        self.observations.append(observation)
        if self.status is ClaimStatus.PASS:
            self.status = ClaimStatus.FLAGGED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "range": self.range,
            "pass": self.passed,
            "status": self.status.value,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "observations": self.observations,
        }
