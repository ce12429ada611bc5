"""Resource budgets and typed errors.

Every potentially explosive operation (element enumeration, subgroup
cataloguing, pair scans) is guarded by an explicit budget and raises
``BudgetExceededError`` instead of silently returning a partial answer.
"""

from __future__ import annotations

from dataclasses import dataclass


class PermsolError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatchError(PermsolError, ValueError):
    """Permutations or groups of different degrees were combined."""


class BudgetExceededError(PermsolError, RuntimeError):
    """A configured resource budget would be exceeded.

    Raised *before* producing a wrong or partial answer.
    """

    def __init__(self, message: str, *, budget: str, limit: int, needed: int | None = None):
        super().__init__(message)
        self.budget = budget
        self.limit = limit
        self.needed = needed


class TheoremViolationError(PermsolError, AssertionError):
    """The three main-theorem conditions disagreed (implementation bug)."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotSConnectedError(PermsolError, ValueError):
    """A check requiring an S-connected factorization got one that is not."""


@dataclass(frozen=True)
class Budgets:
    """Configured limits; exceeding any of them is a typed error, never a wrong answer."""

    order_limit: int = 2_000_000      # full element / class enumeration
    degree_limit: int = 256           # permutation degree (bytes representation)
    subgroup_order_limit: int = 2000  # complete subgroup catalogue
    pair_limit: int = 100_000_000     # element-pair scans


DEFAULT_BUDGETS = Budgets()


def check_order_budget(order: int, budgets: Budgets, what: str) -> None:
    if order > budgets.order_limit:
        raise BudgetExceededError(
            f"{what}: group order {order} exceeds enumeration budget {budgets.order_limit}",
            budget="order_limit",
            limit=budgets.order_limit,
            needed=order,
        )


def check_subgroup_budget(order: int, budgets: Budgets, what: str) -> None:
    if order > budgets.subgroup_order_limit:
        raise BudgetExceededError(
            f"{what}: group order {order} exceeds subgroup-catalogue budget "
            f"{budgets.subgroup_order_limit}",
            budget="subgroup_order_limit",
            limit=budgets.subgroup_order_limit,
            needed=order,
        )
