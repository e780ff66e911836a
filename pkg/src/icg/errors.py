"""Shared error types for the search kernels."""

from __future__ import annotations


class SearchLimitExceeded(RuntimeError):
    """An exact solve hit one of its configured resource limits."""

    def __init__(self, resource: str, detail: str):
        super().__init__(f"{resource} limit exceeded: {detail}")
        self.resource = resource
        self.detail = detail
