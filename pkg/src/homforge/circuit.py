"""Arithmetic circuits: a DAG of const / input / add / mul gates.

Gates are stored in topological order (arguments always point at earlier
ids) with a single designated output.  Add and mul take one or more
arguments.  Evaluation is generic over any ring exposing zero / one /
from_int / add / mul, so the same circuit can be run over a finite field,
a truncated polynomial ring, or the symbolic ring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import labels as lbl
from .rings import Field
from .sparsepoly import Monomial, SparsePoly, SymbolicRing, mono_mul

CONST, INPUT, ADD, MUL = "const", "input", "add", "mul"


@dataclass(frozen=True)
class Gate:
    op: str
    value: int = 0
    label: str = ""
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class ParseTree:
    """A parse tree of a multiplicatively disjoint circuit.

    gates is the set of gate ids kept by the tree; coeff multiplies out the
    constant leaves and monomial collects the input-leaf labels.
    """

    gates: frozenset[int]
    coeff: int
    monomial: Monomial


class Circuit:
    def __init__(self, gates: list[Gate], output: int):
        for gid, g in enumerate(gates):
            if g.op in (ADD, MUL):
                if not g.args:
                    raise ValueError(f"gate {gid}: {g.op} needs at least one argument")
                if any(a < 0 or a >= gid for a in g.args):
                    raise ValueError(f"gate {gid}: arguments must reference earlier gates")
            elif g.op == INPUT:
                if not lbl.is_valid_label(g.label):
                    raise ValueError(f"gate {gid}: bad input label {g.label!r}")
            elif g.op != CONST:
                raise ValueError(f"gate {gid}: unknown op {g.op!r}")
        if not 0 <= output < len(gates):
            raise ValueError("output id out of range")
        self.gates = list(gates)
        self.output = output

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.gates)

    def input_labels(self) -> list[str]:
        seen = []
        have = set()
        for g in self.gates:
            if g.op == INPUT and g.label not in have:
                have.add(g.label)
                seen.append(g.label)
        return seen

    def constants_used(self) -> set[int]:
        return {g.value for g in self.gates if g.op == CONST}

    def wire_count(self) -> int:
        return sum(len(g.args) for g in self.gates)

    def counts_by_op(self) -> dict[str, int]:
        out = {CONST: 0, INPUT: 0, ADD: 0, MUL: 0}
        for g in self.gates:
            out[g.op] += 1
        return out

    # -- evaluation -----------------------------------------------------------

    def eval(self, assignment: dict[str, object], ring):
        """Evaluate over any ring; assignment maps input labels to ring values."""
        vals: list[object] = [None] * len(self.gates)
        for gid, g in enumerate(self.gates):
            if g.op == CONST:
                vals[gid] = ring.from_int(g.value)
            elif g.op == INPUT:
                if g.label not in assignment:
                    raise ValueError(f"unassigned input {g.label!r}")
                vals[gid] = assignment[g.label]
            elif g.op == ADD:
                acc = vals[g.args[0]]
                for a in g.args[1:]:
                    acc = ring.add(acc, vals[a])
                vals[gid] = acc
            else:
                acc = vals[g.args[0]]
                for a in g.args[1:]:
                    acc = ring.mul(acc, vals[a])
                vals[gid] = acc
        return vals[self.output]

    def eval_batch(self, assignment: dict[str, np.ndarray], field: Field) -> np.ndarray:
        """Vectorised evaluation of many field assignments at once.

        Each label maps to an int array; all arrays share one shape.  Prime
        fields use modular arithmetic directly, extensions go through the
        field's operation tables.
        """
        width = None
        for arr in assignment.values():
            width = np.shape(arr)
            break
        if width is None:
            width = ()
        vals: list[np.ndarray] = [None] * len(self.gates)  # type: ignore[list-item]
        prime = field.k == 1
        p = field.p
        addt = None if prime else field._add_table
        mult = None if prime else field._mul_table
        for gid, g in enumerate(self.gates):
            if g.op == CONST:
                vals[gid] = np.full(width, field.from_int(g.value), dtype=np.int64)
            elif g.op == INPUT:
                if g.label not in assignment:
                    raise ValueError(f"unassigned input {g.label!r}")
                vals[gid] = np.asarray(assignment[g.label], dtype=np.int64)
            elif g.op == ADD:
                acc = vals[g.args[0]]
                for a in g.args[1:]:
                    acc = (acc + vals[a]) % p if prime else addt[acc, vals[a]]
                vals[gid] = acc
            else:
                acc = vals[g.args[0]]
                for a in g.args[1:]:
                    acc = (acc * vals[a]) % p if prime else mult[acc, vals[a]]
                vals[gid] = acc
        return vals[self.output]

    def eval_symbolic(self, field: Field | None = None, bound: int = 10**6) -> SparsePoly:
        """Expand the circuit into a sparse polynomial (terms capped by bound)."""
        ring = SymbolicRing(field, bound)
        assignment = {name: ring.var(name) for name in self.input_labels()}
        return self.eval(assignment, ring)

    # -- structural predicates ------------------------------------------------

    def is_skew(self) -> bool:
        """True iff every mul gate has at most one add/mul argument (with
        multiplicity, so mul(g, g) on an internal gate g is not skew)."""
        internal = [g.op in (ADD, MUL) for g in self.gates]
        for g in self.gates:
            if g.op == MUL:
                if sum(1 for a in g.args if internal[a]) > 1:
                    return False
        return True

    def descendants(self) -> list[frozenset[int]]:
        """Per gate, the set of gate ids in its sub-circuit (itself included)."""
        out: list[frozenset[int]] = []
        for gid, g in enumerate(self.gates):
            acc = {gid}
            for a in g.args:
                acc |= out[a]
            out.append(frozenset(acc))
        return out

    def is_mult_disjoint(self) -> bool:
        """True iff for every mul gate the argument sub-circuits are pairwise
        disjoint (repeated arguments therefore fail)."""
        desc = self.descendants()
        for g in self.gates:
            if g.op != MUL or len(g.args) < 2:
                continue
            union: set[int] = set()
            total = 0
            for a in g.args:
                union |= desc[a]
                total += len(desc[a])
            if len(union) != total:
                return False
        return True

    # -- parse trees ----------------------------------------------------------

    def count_parse_trees(self) -> int:
        counts = [0] * len(self.gates)
        for gid, g in enumerate(self.gates):
            if g.op in (CONST, INPUT):
                counts[gid] = 1
            elif g.op == ADD:
                counts[gid] = sum(counts[a] for a in g.args)
            else:
                c = 1
                for a in g.args:
                    c *= counts[a]
                counts[gid] = c
        return counts[self.output]

    def parse_trees(self, bound: int = 10**4) -> list[ParseTree]:
        """Enumerate all parse trees of a multiplicatively disjoint circuit.

        A parse tree keeps the output, all arguments of every kept mul gate,
        and exactly one argument of every kept add gate.
        """
        if not self.is_mult_disjoint():
            raise ValueError("parse-tree enumeration requires a multiplicatively disjoint circuit")
        total = self.count_parse_trees()
        if total > bound:
            raise ValueError(f"{total} parse trees exceed bound {bound}")

        memo: dict[int, list[ParseTree]] = {}

        def rec(gid: int) -> list[ParseTree]:
            if gid in memo:
                return memo[gid]
            g = self.gates[gid]
            if g.op == CONST:
                res = [ParseTree(frozenset([gid]), g.value, ())]
            elif g.op == INPUT:
                res = [ParseTree(frozenset([gid]), 1, ((g.label, 1),))]
            elif g.op == ADD:
                res = [
                    ParseTree(t.gates | {gid}, t.coeff, t.monomial)
                    for a in g.args
                    for t in rec(a)
                ]
            else:
                res = [ParseTree(frozenset([gid]), 1, ())]
                for a in g.args:
                    res = [
                        ParseTree(t.gates | s.gates, t.coeff * s.coeff,
                                  mono_mul(t.monomial, s.monomial))
                        for t in res
                        for s in rec(a)
                    ]
            memo[gid] = res
            return res

        return rec(self.output)

    # -- text format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for gid, g in enumerate(self.gates):
            if g.op == CONST:
                lines.append(f"gate {gid} const {g.value}")
            elif g.op == INPUT:
                lines.append(f"gate {gid} input {g.label}")
            else:
                lines.append(f"gate {gid} {g.op} " + " ".join(str(a) for a in g.args))
        lines.append(f"output {self.output}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        gates: list[Gate] = []
        output = None
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if toks[0] == "output":
                if len(toks) != 2:
                    raise ValueError(f"line {ln}: malformed output line")
                output = int(toks[1])
            elif toks[0] == "gate":
                if len(toks) < 3:
                    raise ValueError(f"line {ln}: malformed gate line")
                gid = int(toks[1])
                if gid != len(gates):
                    raise ValueError(f"line {ln}: gate ids must be consecutive from 0")
                op = toks[2]
                if op == CONST:
                    gates.append(Gate(CONST, value=int(toks[3])))
                elif op == INPUT:
                    if len(toks) != 4:
                        raise ValueError(f"line {ln}: input gate takes one label")
                    gates.append(Gate(INPUT, label=toks[3]))
                elif op in (ADD, MUL):
                    gates.append(Gate(op, args=tuple(int(t) for t in toks[3:])))
                else:
                    raise ValueError(f"line {ln}: unknown gate op {op!r}")
            else:
                raise ValueError(f"line {ln}: unrecognised directive {toks[0]!r}")
        if output is None:
            raise ValueError("missing output line")
        return cls(gates, output)


class CircuitBuilder:
    """Incremental construction with shared constant and input gates."""

    def __init__(self):
        self.gates: list[Gate] = []
        self._consts: dict[int, int] = {}
        self._inputs: dict[str, int] = {}

    def const(self, v: int) -> int:
        if v not in self._consts:
            self._consts[v] = self._push(Gate(CONST, value=v))
        return self._consts[v]

    def input(self, label: str) -> int:
        if label not in self._inputs:
            self._inputs[label] = self._push(Gate(INPUT, label=label))
        return self._inputs[label]

    def add(self, args: list[int]) -> int:
        """Sum of gates; zero constants are dropped, empty sums fold to 0."""
        zero = self._consts.get(0)
        args = [a for a in args if a != zero]
        if not args:
            return self.const(0)
        if len(args) == 1:
            return args[0]
        return self._push(Gate(ADD, args=tuple(args)))

    def mul(self, args: list[int]) -> int:
        """Product of gates; unit constants are dropped, zero annihilates."""
        zero = self._consts.get(0)
        one = self._consts.get(1)
        if zero is not None and zero in args:
            return zero
        args = [a for a in args if a != one]
        if not args:
            return self.const(1)
        if len(args) == 1:
            return args[0]
        return self._push(Gate(MUL, args=tuple(args)))

    def _push(self, g: Gate) -> int:
        self.gates.append(g)
        return len(self.gates) - 1

    def build(self, output: int) -> Circuit:
        return Circuit(self.gates, output)


def check_skew(c: Circuit) -> bool:
    """True when every mul gate has at most one non-leaf argument."""
    return c.is_skew()


def check_mult_disjoint(c: Circuit) -> bool:
    """True when no mul gate's arguments share a reachable gate."""
    return c.is_mult_disjoint()


def enumerate_parse_trees(c: Circuit, bound: int = 10**4) -> "list[ParseTree]":
    """All parse trees of the unwound circuit, capped at bound."""
    return c.parse_trees(bound)
