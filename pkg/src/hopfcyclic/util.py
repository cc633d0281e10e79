"""Small helpers shared across modules: verdicts and sparse dict arithmetic."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

ZERO = Fraction(0)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check; ``witness`` names the first violation found."""

    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


@dataclass
class CheckReport:
    """Ordered collection of named verdicts."""

    verdicts: dict = field(default_factory=dict)

    def add(self, name: str, verdict: Verdict):
        self.verdicts[name] = verdict

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    def __bool__(self):
        return self.ok

    def __getitem__(self, name) -> Verdict:
        return self.verdicts[name]

    def __contains__(self, name):
        return name in self.verdicts

    def failures(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if not v.ok]

    @property
    def first_failure(self) -> str | None:
        fails = self.failures()
        return fails[0] if fails else None

    def as_dict(self) -> dict:
        return {k: {"ok": v.ok, "witness": v.witness} for k, v in self.verdicts.items()}


def add_into(target: dict, source: Mapping, scale=1) -> dict:
    """target += scale * source, dropping zeros."""
    if not scale:
        return target
    for k, v in source.items():
        total = target.get(k, ZERO) + scale * v
        if total:
            target[k] = total
        else:
            target.pop(k, None)
    return target


def clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v}


def scaled(vec: Mapping, s) -> dict:
    if not s:
        return {}
    return {k: v * s for k, v in vec.items()}


def tensor(x: Mapping, y: Mapping) -> dict:
    """Tensor of two sparse vectors whose keys are tuples (or plain indices)."""
    out = {}
    for a, u in x.items():
        ka = a if isinstance(a, tuple) else (a,)
        for b, v in y.items():
            kb = b if isinstance(b, tuple) else (b,)
            out[ka + kb] = u * v
    return out


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
