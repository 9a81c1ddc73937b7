"""Exact elliptic Schubert calculus: localized classes, pipe dreams and identity checks."""

from ._esc import EscError, billey, gpd, localize, poly, render, suites, verify

__all__ = ["EscError", "billey", "gpd", "localize", "poly", "render", "suites", "verify"]
