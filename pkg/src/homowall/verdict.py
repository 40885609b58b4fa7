"""Verdicts: an ok flag plus canonically ordered violation records."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    prop: str
    witness: tuple[str, ...] = ()

    def line(self) -> str:
        return " ".join(("VIOLATION", self.prop, *self.witness))


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def of(cls, violations) -> Verdict:
        vs = sorted(set(violations), key=lambda v: (v.prop, v.witness))
        return cls(tuple(vs))

    def merge(self, other: Verdict) -> Verdict:
        return Verdict.of(self.violations + other.violations)

    def names(self) -> set[str]:
        return {v.prop for v in self.violations}

    def text(self) -> str:
        if self.ok:
            return "OK\n"
        return "".join(v.line() + "\n" for v in self.violations)


OK = Verdict()


def violation(prop: str, *witness: object) -> Violation:
    return Violation(prop, tuple(str(w) for w in witness))
