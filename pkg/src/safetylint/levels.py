"""Automotive safety integrity levels and their total order."""

from __future__ import annotations

import enum


class AsilLevel(enum.IntEnum):
    """Integrity level on the five-step scale QM < A < B < C < D.

    QM means no dedicated safety measures beyond baseline engineering
    practice.  The integer values exist only to give the scale a total
    order; they are never serialized (the level name is).
    """

    QM = 0
    A = 1
    B = 2
    C = 3
    D = 4

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> AsilLevel:
        try:
            return cls[text]
        except KeyError:
            raise ValueError(
                f"unknown ASIL {text!r}; expected one of QM, A, B, C, D"
            ) from None


#: Levels ordered from most to least demanding, QM excluded.
RATED_LEVELS = (AsilLevel.D, AsilLevel.C, AsilLevel.B, AsilLevel.A)
