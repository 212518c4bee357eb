"""3-CNF formulas with DIMACS-style text input and output.

Clauses are ordered triples of nonzero literals; a clause written with
fewer than three literals is padded by repeating its last literal, which
leaves satisfaction unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

Clause = tuple[int, int, int]


@dataclass(frozen=True)
class CNF:
    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} must have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"literal {lit} out of range for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def distinct_clauses(self) -> tuple[Clause, ...]:
        """Clauses with duplicates removed, first-occurrence order kept."""
        return tuple(dict.fromkeys(self.clauses))

    def satisfied_by(self, bits: int) -> bool:
        """Truth under the assignment where bit i-1 of ``bits`` is x_i."""
        for c in self.clauses:
            if not any(((bits >> (abs(l) - 1)) & 1) == (1 if l > 0 else 0)
                       for l in c):
                return False
        return True

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {len(self.clauses)}"]
        for c in self.clauses:
            lines.append(" ".join(str(l) for l in c) + " 0")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "CNF":
        n = None
        want = None
        clauses: list[Clause] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ValueError(f"line {lineno}: malformed problem line {line!r}")
                if n is not None:
                    raise ValueError(f"line {lineno}: repeated problem line")
                n, want = int(parts[2]), int(parts[3])
                continue
            if n is None:
                raise ValueError(f"line {lineno}: clause before problem line")
            try:
                lits = [int(tok) for tok in line.split()]
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer literal in {line!r}") from None
            if not lits or lits[-1] != 0:
                raise ValueError(f"line {lineno}: clause must end with 0")
            lits = lits[:-1]
            if 0 in lits:
                raise ValueError(f"line {lineno}: literal 0 inside clause")
            if not 1 <= len(lits) <= 3:
                raise ValueError(f"line {lineno}: need 1-3 literals, got {len(lits)}")
            while len(lits) < 3:
                lits.append(lits[-1])
            clauses.append((lits[0], lits[1], lits[2]))
        if n is None:
            raise ValueError("missing problem line 'p cnf <n> <m>'")
        if want is not None and want != len(clauses):
            raise ValueError(f"problem line promises {want} clauses, found {len(clauses)}")
        return cls(n, tuple(clauses))
