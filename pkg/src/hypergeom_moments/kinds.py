from __future__ import annotations

import enum


class MomentKind(str, enum.Enum):
    """Which expectation of the sample counts is wanted."""

    FACTORIAL = "factorial"  # E[prod X_i^(alpha_i)], falling factorials
    NONCENTRAL = "noncentral"  # E[prod X_i^alpha_i]
    CENTRAL = "central"  # E[prod (X_i - E X_i)^alpha_i]

    @classmethod
    def parse(cls, value: "str | MomentKind") -> "MomentKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown moment kind {value!r}; choose from {choices}") from None
