"""Enumeration budgets. Defaults may be overridden through environment variables."""

import os

from .errors import BudgetExceeded

DEFAULT_ENUMERATION = 2**24
DEFAULT_FILTER_SCAN = 16
DEFAULT_VALUATIONS = 2**22


def _env_int(name, default):
    raw = os.environ.get(name)
    return int(raw) if raw else default


def enumeration_budget(override=None):
    if override is not None:
        return override
    return _env_int("KCTX_ENUMERATION_BUDGET", DEFAULT_ENUMERATION)


def filter_scan_limit(override=None):
    if override is not None:
        return override
    return _env_int("KCTX_FILTER_SCAN", DEFAULT_FILTER_SCAN)


def valuation_budget(override=None):
    if override is not None:
        return override
    return _env_int("KCTX_VALUATION_BUDGET", DEFAULT_VALUATIONS)


def require(amount, budget, what):
    if amount > budget:
        raise BudgetExceeded(f"{what} needs {amount} steps, budget is {budget}")
