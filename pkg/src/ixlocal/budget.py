from __future__ import annotations

import os

VERTEX_BUDGET = 30
DEFAULT_SEARCH_BUDGET = 2**33


class BudgetExceeded(RuntimeError):
    """An exhaustive operation was asked to do more work than it is allowed to."""

    def __init__(self, what: str, size: int | str, budget: int):
        self.what = what
        self.size = size
        self.budget = budget
        shown = size if isinstance(size, str) or size.bit_length() <= 128 else f"~2^{size.bit_length() - 1}"
        super().__init__(f"{what}: search size {shown} exceeds budget {budget}")


def search_budget() -> int:
    """Elementary-check budget for brute-force code searches (``IXLOCAL_BUDGET`` overrides)."""
    raw = os.environ.get("IXLOCAL_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_SEARCH_BUDGET


def check_vertices(n: int, budget: int | None, what: str) -> None:
    limit = VERTEX_BUDGET if budget is None else budget
    if n > limit:
        raise BudgetExceeded(what, n, limit)
