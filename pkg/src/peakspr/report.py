"""Per-object report records and their delimited/JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

FIELDS = ("support", "dimv", "weight", "verdict", "witnesses")


def fmt_number(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def fmt_charge(c) -> str:
    re, im = c
    sign = "-" if im < 0 else "+"
    return f"{fmt_number(re)}{sign}{fmt_number(abs(im))}i"


def fmt_set(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


@dataclass(frozen=True)
class Record:
    support: tuple
    dimv: tuple
    weight: str
    verdict: str
    witnesses: tuple[str, ...]

    def row(self) -> list[str]:
        return [
            fmt_set(self.support),
            ",".join(map(str, self.dimv)),
            self.weight,
            self.verdict,
            ";".join(self.witnesses) or "-",
        ]

    def as_dict(self) -> dict:
        return {
            "support": [str(x) for x in self.support],
            "dimv": list(self.dimv),
            "weight": self.weight,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
        }


def render(records: Sequence[Record], fmt: str = "tsv") -> str:
    if fmt == "json":
        return json.dumps([r.as_dict() for r in records], indent=2, ensure_ascii=False) + "\n"
    lines = ["\t".join(FIELDS)] + ["\t".join(r.row()) for r in records]
    return "\n".join(lines) + "\n"
