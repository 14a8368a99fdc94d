"""Three-valued verdicts and search budgets shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

DEFAULT_SEARCH_BUDGET = 10 ** 6
DEFAULT_DIM_BOUND = 4
DEFAULT_LEVEL_BOUND = 6
DEFAULT_WORD_CAP = 16


class BudgetExceededError(Exception):
    """Raised when an exhaustive search runs past its candidate budget.

    Never swallowed into a silently truncated answer: callers either
    propagate it or downgrade to an `inconclusive` verdict that records
    what was left unsearched.
    """

    def __init__(self, limit: int, context: str = ""):
        self.limit = limit
        self.context = context
        super().__init__(f"search budget of {limit} exceeded ({context})")


class ResourceError(Exception):
    """A computation hit a structural cap (e.g. word length) and cannot
    certify its answer; carries the offending data."""

    def __init__(self, message: str, offenders=None):
        self.offenders = offenders or []
        super().__init__(message)


class Budget:
    """Mutable candidate counter threaded through backtracking searches."""

    def __init__(self, limit: int = DEFAULT_SEARCH_BUDGET, context: str = ""):
        self.limit = limit
        self.used = 0
        self.context = context

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceededError(self.limit, self.context)


@dataclass
class Verdict:
    """Outcome of a decidable-but-bounded check.

    status is one of holds / fails / inconclusive; `witness` carries a
    counterexample (fails) or a certifying object (holds) when one
    exists, and `checked` names the verified range so a verdict is never
    quietly stronger than what was actually searched.
    """

    status: str
    checked: str = ""
    witness: object = None
    tier: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    def as_json(self) -> dict:
        out = {"status": self.status, "checked": self.checked}
        if self.tier is not None:
            out["tier"] = self.tier
        if self.witness is not None:
            out["witness"] = _dump_witness(self.witness)
        if self.details:
            out["details"] = {k: _dump_witness(v) for k, v in sorted(self.details.items())}
        return out


def _dump_witness(w):
    if isinstance(w, (str, int, float, bool)) or w is None:
        return w
    if isinstance(w, (list, tuple)):
        return [_dump_witness(x) for x in w]
    if isinstance(w, dict):
        return {str(k): _dump_witness(v) for k, v in w.items()}
    return repr(w)
