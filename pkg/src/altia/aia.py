"""Alternating interface automata.

Transitions target lattice configurations instead of state sets, so
nondeterminism (disjunction) and view composition (conjunction) live
uniformly in the transition function.  An input mapped to top is
underspecified (accepting it leads to unconstrained behaviour); an
output mapped to bottom is forbidden.  Inputs may never map to bottom:
refusing an input is expressed by the environment's failure observation,
not by the model.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import Optional

from .errors import AlphabetError, ModelError
from .ia import IA, FTrace, Label
from .lattice import (
    Config,
    bot,
    dnf,
    embed,
    expr_str,
    join_all,
    meet_all,
    substitute,
    top,
)


class AIA:
    """An alternating interface automaton.

    ``transitions`` maps state -> label name -> Config; omitted entries
    default to top for inputs and bottom for outputs, matching the
    convention that an undrawn input is underspecified and an undrawn
    output is forbidden.  The stored table is total.  Instances are
    immutable and all operations on them are pure.
    """

    def __init__(self, states, inputs, outputs, transitions, initial, name="aia"):
        self.name = name
        self.states = frozenset(states)
        self.inputs = frozenset(inputs)
        self.outputs = frozenset(outputs)
        overlap = self.inputs & self.outputs
        if overlap:
            raise AlphabetError(f"inputs and outputs overlap: {sorted(overlap)}")
        if not isinstance(initial, Config):
            raise ModelError("initial configuration must be a Config")
        if not initial.states() <= self.states:
            raise ModelError(
                f"initial configuration uses undeclared states "
                f"{sorted(initial.states() - self.states)}"
            )
        self.initial = initial

        for q in transitions:
            if q not in self.states:
                raise ModelError(f"transition from undeclared state {q!r}")
        table: dict[str, dict[str, Config]] = {}
        for q in self.states:
            given = transitions.get(q, {})
            for label in given:
                if label not in self.inputs and label not in self.outputs:
                    raise AlphabetError(f"transition on undeclared label {label!r}")
            row: dict[str, Config] = {}
            for a in self.inputs:
                cfg = given.get(a, top())
                if cfg.is_bot:
                    raise ModelError(f"input transition {q!r} --{a}--> may not be bottom")
                row[a] = cfg
            for x in self.outputs:
                row[x] = given.get(x, bot())
            for label, cfg in row.items():
                if not cfg.states() <= self.states:
                    raise ModelError(
                        f"transition {q!r} --{label}--> uses undeclared states "
                        f"{sorted(cfg.states() - self.states)}"
                    )
            table[q] = row
        self.transitions = table
        # Per-label view used by substitution; built once, read-only after.
        self._by_label = {
            l: {q: table[q][l] for q in self.states} for l in self.inputs | self.outputs
        }

    @property
    def labels(self) -> frozenset[str]:
        return self.inputs | self.outputs

    def step(self, e: Config, label_name: str) -> Config:
        """One-step successor configuration of ``e`` under a label name."""
        mapping = self._by_label.get(label_name)
        if mapping is None:
            raise AlphabetError(f"{label_name!r} is not a label of {self.name!r}")
        return substitute(e, mapping)

    def __eq__(self, other):
        if not isinstance(other, AIA):
            return NotImplemented
        return (
            self.states == other.states
            and self.inputs == other.inputs
            and self.outputs == other.outputs
            and self.initial == other.initial
            and self.transitions == other.transitions
        )

    __hash__ = None

    def __repr__(self):
        return f"AIA({self.name!r}, {len(self.states)} states)"


def _check_label(s: AIA, lab: Label):
    if lab.is_input:
        if lab.name not in s.inputs:
            raise AlphabetError(f"{lab} is not an input of {s.name!r}")
    elif lab.name not in s.outputs:
        raise AlphabetError(f"{lab} is not an output of {s.name!r}")


def after(s: AIA, e: Config, trace) -> Config:
    """The configuration reached from ``e`` along a label sequence."""
    if not e.states() <= s.states:
        raise ModelError(f"configuration uses states not declared in {s.name!r}")
    for lab in trace:
        _check_label(s, lab)
        e = s.step(e, lab.name)
    return e


def after_trace(s: AIA, trace) -> Config:
    """``after`` from the initial configuration."""
    return after(s, s.initial, trace)


def ftrace_member(s: AIA, ft: FTrace) -> bool:
    """Input-failure trace membership.

    A plain trace belongs iff it does not reach bottom; a
    failure-terminated one iff accepting the refused input would reach
    top (the input is underspecified there).
    """
    if ft.failure is not None and ft.failure not in s.inputs:
        raise AlphabetError(f"~{ft.failure} does not refuse an input of {s.name!r}")
    e = after_trace(s, ft.body)
    if ft.failure is None:
        return not e.is_bot
    return s.step(e, ft.failure).is_top


class TraceStatus(Enum):
    ALLOWED = "Allowed"
    FORBIDDEN = "Forbidden"
    UNDERSPECIFIED = "Underspecified"


def trace_verdict(s: AIA, trace) -> tuple[TraceStatus, Config]:
    """Three-way verdict for a plain trace, with the reached configuration."""
    e = after_trace(s, trace)
    if e.is_bot:
        return TraceStatus.FORBIDDEN, e
    if e.is_top:
        return TraceStatus.UNDERSPECIFIED, e
    return TraceStatus.ALLOWED, e


def _require_same_alphabets(a, b):
    if a.inputs != b.inputs or a.outputs != b.outputs:
        raise AlphabetError(
            f"{a.name!r} and {b.name!r} have different alphabets; "
            "composition and refinement need identical inputs and outputs"
        )


def rename_states(s: AIA, mapping) -> AIA:
    """Copy of ``s`` with states renamed by an injective mapping."""
    emb = {q: embed(mapping[q]) for q in s.states}
    if len(set(mapping[q] for q in s.states)) != len(s.states):
        raise ModelError("state renaming must be injective")
    trans = {
        mapping[q]: {l: substitute(cfg, emb) for l, cfg in row.items()}
        for q, row in s.transitions.items()
    }
    return AIA(
        [mapping[q] for q in s.states],
        s.inputs,
        s.outputs,
        trans,
        substitute(s.initial, emb),
        name=s.name,
    )


def _force_disjoint(s1: AIA, s2: AIA) -> tuple[AIA, AIA]:
    if s1.states & s2.states:
        s1 = rename_states(s1, {q: q + "#1" for q in s1.states})
        s2 = rename_states(s2, {q: q + "#2" for q in s2.states})
    return s1, s2


def _compose(s1: AIA, s2: AIA, combine, name: str) -> AIA:
    _require_same_alphabets(s1, s2)
    a, b = _force_disjoint(s1, s2)
    trans = {q: dict(row) for q, row in a.transitions.items()}
    trans.update({q: dict(row) for q, row in b.transitions.items()})
    return AIA(
        a.states | b.states,
        s1.inputs,
        s1.outputs,
        trans,
        combine(a.initial, b.initial),
        name=name,
    )


def conj(s1: AIA, s2: AIA, name: Optional[str] = None) -> AIA:
    """Conjunction: behaviour allowed by both operands."""
    return _compose(s1, s2, lambda a, b: a & b, name or f"({s1.name} and {s2.name})")


def disj(s1: AIA, s2: AIA, name: Optional[str] = None) -> AIA:
    """Disjunction: behaviour allowed by either operand."""
    return _compose(s1, s2, lambda a, b: a | b, name or f"({s1.name} or {s2.name})")


def aia_top(inputs, outputs, name="top") -> AIA:
    """The specification that allows everything."""
    return AIA((), inputs, outputs, {}, top(), name=name)


def aia_bot(inputs, outputs, name="bottom") -> AIA:
    """The specification that allows nothing."""
    return AIA((), inputs, outputs, {}, bot(), name=name)


def induce_aia(i: IA) -> AIA:
    """The alternating view of an interface automaton.

    Successor sets become disjunctions; an input without transitions
    becomes top (underspecified), an output without transitions bottom
    (forbidden, since an empty disjunction is bottom).
    """
    trans: dict[str, dict[str, Config]] = {}
    for q in i.states:
        row: dict[str, Config] = {}
        for a in i.inputs:
            succs = i.succ(q, a)
            row[a] = join_all(embed(r) for r in succs) if succs else top()
        for x in i.outputs:
            row[x] = join_all(embed(r) for r in i.succ(q, x))
        trans[q] = row
    return AIA(
        i.states,
        i.inputs,
        i.outputs,
        trans,
        join_all(embed(q) for q in i.initial),
        name=f"aia({i.name})",
    )


def _clause_name(clause) -> str:
    # the clause as a conjunction, rendered unambiguously ("T" for the
    # empty clause, whose state behaves chaotically)
    return expr_str(meet_all(embed(q) for q in clause))


def induce_ia(s: AIA) -> IA:
    """The interface-automaton view of an alternating one.

    States are the clauses reachable from the initial configuration's
    normal form; each acts as the conjunction of its members.  The empty
    clause is chaotic: all its behaviour is unconstrained.  Moving to a
    fully underspecified input is expressed by removing the transition
    rather than by an edge, so only reachable clauses are materialized.
    """
    init = dnf(s.initial)
    names: dict[frozenset, str] = {}
    order = sorted(init, key=sorted)
    queue = deque(order)
    trans: dict[str, dict[str, set[str]]] = {}
    labels = sorted(s.inputs) + sorted(s.outputs)
    while queue:
        clause = queue.popleft()
        if clause in names:
            continue
        names[clause] = _clause_name(clause)
        row: dict[str, set[str]] = {}
        for label in labels:
            target = meet_all(s.transitions[q][label] for q in clause)
            succs = dnf(target)
            if label in s.inputs:
                succs = succs - {frozenset()}
            if succs:
                row[label] = set()
                for c2 in sorted(succs, key=sorted):
                    row[label].add(_clause_name(c2))
                    if c2 not in names:
                        queue.append(c2)
        trans[names[clause]] = row
    return IA(
        set(names.values()),
        s.inputs,
        s.outputs,
        trans,
        {names[c] for c in init},
        name=f"ia({s.name})",
    )
