"""Exception types shared by the pipeline, the oracles and the CLI."""

from __future__ import annotations


class FitError(ValueError):
    """A violated precondition of the fitting pipeline (CLI exit code 2)."""

    code = "FitError"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        out = {"type": self.code, "message": str(self)}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


class EmptyInputError(FitError):
    code = "EmptyInput"


class DuplicatePointError(FitError):
    code = "DuplicatePoints"


class DegeneratePointSetError(FitError):
    code = "DegeneratePointSet"


class NotGenericError(FitError):
    code = "NotGeneric"


class CapExceededError(FitError):
    code = "CapExceeded"


class InternalInconsistencyError(RuntimeError):
    """Two independent routes disagreed, or a proven identity failed (CLI exit code 1)."""

    code = "InternalInconsistency"

    def to_dict(self) -> dict:
        return {"type": self.code, "message": str(self)}
