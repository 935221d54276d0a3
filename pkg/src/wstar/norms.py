"""Symmetric norms evaluated through the singular value function."""

import re
from dataclasses import dataclass

import numpy as np

from .algebra import BlockElement
from .errors import InvalidNorm
from .spectral import mu_function

__all__ = ["SymmetricNorm", "norm_eval"]


@dataclass(frozen=True)
class SymmetricNorm:
    """A unitarily invariant norm: ``operator``, ``schatten`` (``p >= 1``) or ``kyfan`` (``k >= 1``).

    >>> SymmetricNorm.parse("schatten(2)")
    SymmetricNorm(kind='schatten', param=2.0)
    """

    kind: str
    param: float = None

    def __post_init__(self):
        if self.kind == "operator":
            object.__setattr__(self, "param", None)
        elif self.kind == "schatten":
            if self.param is None or not self.param >= 1:
                raise InvalidNorm(f"schatten needs p >= 1, got {self.param}")
            object.__setattr__(self, "param", float(self.param))
        elif self.kind == "kyfan":
            if self.param is None or int(self.param) != self.param or self.param < 1:
                raise InvalidNorm(f"kyfan needs an integer k >= 1, got {self.param}")
            object.__setattr__(self, "param", int(self.param))
        else:
            raise InvalidNorm(f"unknown norm kind {self.kind!r}")

    @classmethod
    def operator(cls):
        return cls("operator")

    @classmethod
    def schatten(cls, p):
        if np.isinf(p):
            return cls("operator")
        return cls("schatten", p)

    @classmethod
    def kyfan(cls, k):
        return cls("kyfan", k)

    @classmethod
    def parse(cls, text: str) -> "SymmetricNorm":
        text = text.strip().lower()
        if text in ("operator", "op", "inf"):
            return cls.operator()
        m = re.fullmatch(r"(schatten|kyfan)\(([^)]+)\)", text)
        if not m:
            raise InvalidNorm(f"cannot parse norm {text!r}")
        try:
            value = float(m.group(2))
        except ValueError as exc:
            raise InvalidNorm(f"cannot parse norm {text!r}") from exc
        return cls.schatten(value) if m.group(1) == "schatten" else cls.kyfan(value)

    def __str__(self):
        if self.kind == "operator":
            return "operator"
        p = self.param
        if self.kind == "schatten" and float(p).is_integer():
            p = int(p)
        return f"{self.kind}({p})"

    def of_values(self, s) -> float:
        """Norm of a vector of singular values (any order)."""
        s = np.sort(np.abs(np.asarray(s, dtype=float)))[::-1]
        if s.size == 0:
            return 0.0
        if self.kind == "operator":
            return float(s[0])
        if self.kind == "kyfan":
            return float(np.sum(s[:self.param]))
        if self.param == 1:
            return float(np.sum(s))
        top = s[0]
        if top == 0:
            return 0.0
        return float(top * np.sum((s / top) ** self.param) ** (1.0 / self.param))


def norm_eval(x: BlockElement, norm: SymmetricNorm) -> float:
    """Evaluate ``norm`` on ``x`` via its singular value function."""
    if isinstance(norm, str):
        norm = SymmetricNorm.parse(norm)
    if not isinstance(norm, SymmetricNorm):
        raise InvalidNorm(f"not a norm: {norm!r}")
    return norm.of_values(mu_function(x).values)
