"""Exception types shared across the package.

Every error carries a stable machine-readable ``code``. Errors raised while
handling a parsed query also carry the byte ``offset`` of the offending input.
"""

from __future__ import annotations


class ZetaRegError(Exception):
    code = "E_GENERIC"
    exit_code = 1

    def __init__(self, message: str, *, code: str | None = None, offset: int | None = None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.offset = offset

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "offset": self.offset}

    def __str__(self) -> str:
        where = "" if self.offset is None else f" at offset {self.offset}"
        return f"{self.code}{where}: {self.message}"


class DomainError(ZetaRegError, ValueError):
    """Argument outside the domain of a mathematical operation."""

    code = "E_DOMAIN"


class PoleError(DomainError):
    code = "E_POLE"


class DivergenceError(DomainError):
    code = "E_DIVERGENCE_SUSPECTED"


class QueryParseError(ZetaRegError):
    code = "E_PARSE"
    exit_code = 2

    def __init__(self, message: str, *, code: str | None = None, offset: int | None = None,
                 expected: str | None = None):
        super().__init__(message, code=code, offset=offset)
        self.expected = expected

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["expected"] = self.expected
        return d
