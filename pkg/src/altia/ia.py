"""Interface automata with input-failure trace semantics.

An interface automaton has disjoint input and output alphabets,
set-valued transitions and a finite set of initial states.  Besides the
usual traces, its observable behaviour includes *input failures*: after
a trace, offering an input that no reached state accepts is itself an
observation, written ``~a`` in text form.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import AlphabetError, ModelError


class Label(NamedTuple):
    """An action name tagged with its direction."""

    name: str
    is_input: bool

    def __str__(self):
        return ("?" if self.is_input else "!") + self.name


def inp(name: str) -> Label:
    return Label(name, True)


def out(name: str) -> Label:
    return Label(name, False)


class FTrace(NamedTuple):
    """An observation word: labels, optionally ended by one input failure.

    ``failure`` holds the name of the input that was refused after
    ``body``; ``None`` for a plain trace.
    """

    body: tuple[Label, ...] = ()
    failure: Optional[str] = None

    @property
    def plain(self) -> bool:
        return self.failure is None

    def __str__(self):
        parts = [str(l) for l in self.body]
        if self.failure is not None:
            parts.append("~" + self.failure)
        return " ".join(parts)


class IA:
    """An interface automaton.

    ``transitions`` maps state -> label name -> successor states; pairs
    without an entry have no transition.  Instances are validated on
    construction and must be treated as immutable afterwards; all
    operations on them are pure.
    """

    def __init__(self, states, inputs, outputs, transitions, initial, name="ia"):
        self.name = name
        self.states = frozenset(states)
        self.inputs = frozenset(inputs)
        self.outputs = frozenset(outputs)
        self.initial = frozenset(initial)
        overlap = self.inputs & self.outputs
        if overlap:
            raise AlphabetError(f"inputs and outputs overlap: {sorted(overlap)}")
        if not self.initial <= self.states:
            raise ModelError(f"initial states {sorted(self.initial - self.states)} not declared")
        table: dict[str, dict[str, frozenset[str]]] = {}
        for q, row in transitions.items():
            if q not in self.states:
                raise ModelError(f"transition from undeclared state {q!r}")
            for label, succs in row.items():
                if label not in self.inputs and label not in self.outputs:
                    raise AlphabetError(f"transition on undeclared label {label!r}")
                ss = frozenset(succs)
                if not ss <= self.states:
                    raise ModelError(
                        f"transition {q!r} --{label}--> targets undeclared states "
                        f"{sorted(ss - self.states)}"
                    )
                if ss:
                    table.setdefault(q, {})[label] = ss
        self.transitions = table

    @property
    def labels(self) -> frozenset[str]:
        return self.inputs | self.outputs

    def succ(self, q: str, label_name: str) -> frozenset[str]:
        return self.transitions.get(q, {}).get(label_name, frozenset())

    def __eq__(self, other):
        # Structural equality; the name is presentation metadata.
        if not isinstance(other, IA):
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
        return f"IA({self.name!r}, {len(self.states)} states)"


def _check_label(s, lab: Label):
    if lab.is_input:
        if lab.name not in s.inputs:
            raise AlphabetError(f"{lab} is not an input of {s.name!r}")
    elif lab.name not in s.outputs:
        raise AlphabetError(f"{lab} is not an output of {s.name!r}")


def _check_ftrace(s, ft: FTrace):
    for lab in ft.body:
        _check_label(s, lab)
    if ft.failure is not None and ft.failure not in s.inputs:
        raise AlphabetError(f"~{ft.failure} does not refuse an input of {s.name!r}")


def after_set(s: IA, from_states: Iterable[str], trace: Sequence[Label]) -> frozenset[str]:
    """States reachable from ``from_states`` along ``trace``.

    Empty exactly when the trace cannot be followed from any of them.
    """
    cur = frozenset(from_states)
    if not cur <= s.states:
        raise ModelError(f"states {sorted(cur - s.states)} not declared in {s.name!r}")
    for lab in trace:
        _check_label(s, lab)
        cur = frozenset(r for q in cur for r in s.succ(q, lab.name))
    return cur


def out_set(s: IA, states: Iterable[str]) -> frozenset[str]:
    """Outputs produced by at least one of the given states."""
    qs = frozenset(states)
    return frozenset(x for x in s.outputs if any(s.succ(q, x) for q in qs))


def in_set(s: IA, states: Iterable[str]) -> frozenset[str]:
    """Inputs accepted by all of the given states (all inputs for none)."""
    qs = frozenset(states)
    return frozenset(a for a in s.inputs if all(s.succ(q, a) for q in qs))


class StateFlags(NamedTuple):
    is_sink: bool
    input_enabled: bool


class IAFlags(NamedTuple):
    deterministic: bool
    input_enabled: bool
    empty: bool


def classify_state(s: IA, q: str) -> StateFlags:
    if q not in s.states:
        raise ModelError(f"state {q!r} not declared in {s.name!r}")
    sink = all(s.succ(q, l) <= {q} for l in s.labels)
    enabled = all(s.succ(q, a) for a in s.inputs)
    return StateFlags(sink, enabled)


def deterministic(s: IA) -> bool:
    """Whether every trace leads to at most one state.

    Decided by the subset construction over reachable state sets, so it
    terminates on any finite automaton.
    """
    if len(s.initial) > 1:
        return False
    seen = {s.initial}
    stack = [s.initial]
    while stack:
        qs = stack.pop()
        for label in s.labels:
            nxt = frozenset(r for q in qs for r in s.succ(q, label))
            if len(nxt) > 1:
                return False
            if nxt and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def classify_ia(s: IA) -> IAFlags:
    enabled = all(classify_state(s, q).input_enabled for q in s.states)
    return IAFlags(deterministic(s), enabled, not s.initial)


def ftrace_member(s: IA, ft: FTrace) -> bool:
    """Whether the observation belongs to the automaton's behaviour.

    A plain trace belongs iff it can be followed; a failure-terminated
    one iff some reached state refuses the input (so never after a trace
    that cannot be followed at all).
    """
    _check_ftrace(s, ft)
    reached = after_set(s, s.initial, ft.body)
    if ft.failure is None:
        return bool(reached)
    return ft.failure not in in_set(s, reached)


def fcl_member(s: IA, ft: FTrace) -> bool:
    """Membership in the input-failure closure of the behaviour.

    The closure also contains every word that proceeds past an input the
    automaton may refuse: once a refusal is possible, any continuation
    after accepting that input is unconstrained.
    """
    _check_ftrace(s, ft)
    if ftrace_member(s, ft):
        return True
    for j, lab in enumerate(ft.body):
        if lab.is_input and ftrace_member(s, FTrace(ft.body[:j], lab.name)):
            return True
    return False
