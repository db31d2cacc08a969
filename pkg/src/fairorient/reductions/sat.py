"""2P2N-3SAT formulas: every variable occurs twice positively and twice
negatively, every clause has three distinct literals (so 3t = 4s)."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass


class FormulaError(ValueError):
    pass


class BadArity(FormulaError):
    pass


class OccurrenceCountViolation(FormulaError):
    def __init__(self, variable: int, polarity: str, count: int):
        super().__init__(f"variable {variable} occurs {count} times {polarity}ly, expected 2")
        self.variable = variable
        self.polarity = polarity
        self.count = count


class DuplicateLiteralInClause(FormulaError):
    pass


class AssignmentDoesNotSatisfy(ValueError):
    pass


@dataclass(frozen=True)
class Formula2P2N:
    s: int
    clauses: tuple[tuple[int, int, int], ...]

    @property
    def t(self) -> int:
        return len(self.clauses)

    def satisfied_literals(self, clause: tuple[int, ...], assignment) -> list[int]:
        if isinstance(assignment, (list, tuple)):
            assignment = dict(enumerate(assignment, 1))
        return [lit for lit in clause if assignment[abs(lit)] == (lit > 0)]

    def satisfies(self, assignment) -> bool:
        return all(self.satisfied_literals(c, assignment) for c in self.clauses)

    def satisfying_assignments(self):
        for bits in itertools.product((True, False), repeat=self.s):
            a = dict(enumerate(bits, 1))
            if self.satisfies(a):
                yield a

    def to_text(self) -> str:
        lines = [f"2p2n3sat {self.s} {self.t}"]
        lines += [" ".join(str(x) for x in c) for c in self.clauses]
        return "\n".join(lines) + "\n"


def validate_formula(s: int, clauses) -> Formula2P2N:
    clauses = tuple(tuple(int(x) for x in c) for c in clauses)
    if s < 1 or 3 * len(clauses) != 4 * s:
        raise BadArity(f"{len(clauses)} clauses over {s} variables: 3t = {3 * len(clauses)} != 4s = {4 * s}")
    for c in clauses:
        if len(c) != 3:
            raise BadArity(f"clause {c} does not have three literals")
        if any(lit == 0 or abs(lit) > s for lit in c):
            raise FormulaError(f"clause {c} mentions a variable outside 1..{s}")
        if len(set(c)) != 3:
            raise DuplicateLiteralInClause(f"clause {c} repeats a literal")
    counts = Counter(lit for c in clauses for lit in c)
    for v in range(1, s + 1):
        for lit, pol in ((v, "positive"), (-v, "negative")):
            if counts[lit] != 2:
                raise OccurrenceCountViolation(v, pol, counts[lit])
    return Formula2P2N(s, clauses)


def parse_2p2n3sat(text: str) -> Formula2P2N:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormulaError("empty formula file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "2p2n3sat":
        raise FormulaError(f"header must be '2p2n3sat <s> <t>', got {lines[0]!r}")
    try:
        s, t = int(head[1]), int(head[2])
        clauses = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise FormulaError(f"malformed integer: {exc}") from None
    if len(clauses) != t:
        raise BadArity(f"header announces {t} clauses, file has {len(clauses)}")
    return validate_formula(s, clauses)


VALIDATION_FORMULA = validate_formula(3, [(1, 2, 3), (1, -2, -3), (-1, 2, -3), (-1, -2, 3)])
