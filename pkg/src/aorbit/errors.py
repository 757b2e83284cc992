"""Shared error types."""


class ResourceLimitExceeded(Exception):
    """A configured resource cap fired before the computation finished."""

    def __init__(self, cap_name: str, detail: str = ""):
        self.cap_name = cap_name
        self.detail = detail
        msg = f"resource cap exceeded: {cap_name}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
