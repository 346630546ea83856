"""Input-failure refinement: a complete decision procedure.

Refinement holds when every observation of the left model is also an
observation of the right one.  Both sides are driven through their
canonical configurations in lockstep: because configurations are
canonical and only finitely many are reachable on each side, a breadth
first search over configuration pairs decides trace-set inclusion
exactly, and the first offending pair yields a shortest counterexample.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from . import aia as _aia
from . import ia as _ia
from .aia import AIA, induce_aia
from .errors import AlphabetError, ExplorationLimitError
from .ia import IA, FTrace, Label

DEFAULT_CAP = 100_000


@dataclass
class RefinementResult:
    """Outcome of a refinement check.

    ``counterexample`` is present exactly when the check fails; it is an
    observation of the left side that the right side does not allow.
    """

    holds: bool
    counterexample: Optional[FTrace] = None
    pairs_explored: int = 0

    def __bool__(self):
        return self.holds


def _stepper(s: AIA):
    memo = {}

    def step(e, label):
        key = (e, label)
        hit = memo.get(key)
        if hit is None:
            hit = s.step(e, label)
            memo[key] = hit
        return hit

    return step


def leq_aia(s1: AIA, s2: AIA, cap: int = DEFAULT_CAP) -> RefinementResult:
    """Decide whether every observation of ``s1`` is allowed by ``s2``."""
    _aia._require_same_alphabets(s1, s2)
    step1, step2 = _stepper(s1), _stepper(s2)
    inputs = sorted(s1.inputs)
    labels = [Label(a, True) for a in inputs] + [Label(x, False) for x in sorted(s1.outputs)]

    e1, e2 = s1.initial, s2.initial
    if e1.is_bot:
        return RefinementResult(True)
    if e2.is_bot:
        return RefinementResult(False, FTrace())

    # Entries carry (pair, parent index, arriving label) so shortest
    # counterexamples can be rebuilt without copying a trace per entry.
    entries = [((e1, e2), -1, None)]
    seen = {(e1, e2)}
    queue = deque([0])

    def trace_to(idx: int) -> tuple:
        out = []
        while idx >= 0:
            pair, parent, lab = entries[idx]
            if lab is not None:
                out.append(lab)
            idx = parent
        return tuple(reversed(out))

    explored = 0
    while queue:
        idx = queue.popleft()
        (e1, e2), _, _ = entries[idx]
        explored += 1
        if explored > cap:
            raise ExplorationLimitError(cap)
        # A refusal the left side allows must be allowed on the right:
        # both sides must be underspecified on the same inputs here.
        for a in inputs:
            if step1(e1, a).is_top and not step2(e2, a).is_top:
                return RefinementResult(False, FTrace(trace_to(idx), a), explored)
        for lab in labels:
            t1 = step1(e1, lab.name)
            if t1.is_bot:
                continue
            t2 = step2(e2, lab.name)
            if t2.is_bot:
                return RefinementResult(False, FTrace(trace_to(idx) + (lab,)), explored)
            if t1.is_top and t2.is_top:
                continue
            pair = (t1, t2)
            if pair not in seen:
                seen.add(pair)
                entries.append((pair, idx, lab))
                queue.append(len(entries) - 1)
    return RefinementResult(True, None, explored)


def _localize(i: IA, cex: FTrace, right_member: Callable[[FTrace], bool]) -> FTrace:
    # The product ran on the alternating view of ``i``, whose behaviour is
    # the closure of the automaton's own; shorten the counterexample to
    # the refusal that justified it so it is a genuine observation of i.
    for j, lab in enumerate(cex.body):
        if lab.is_input:
            cand = FTrace(cex.body[:j], lab.name)
            if _ia.ftrace_member(i, cand) and not right_member(cand):
                return cand
    if _ia.ftrace_member(i, cex):
        return cex
    raise AssertionError("counterexample neither observable nor closure-justified")


def leq_ia_aia(i: IA, s: AIA, cap: int = DEFAULT_CAP) -> RefinementResult:
    """Decide whether implementation behaviour ``i`` refines ``s``."""
    if i.inputs != s.inputs or i.outputs != s.outputs:
        raise AlphabetError(f"{i.name!r} and {s.name!r} have different alphabets")
    res = leq_aia(induce_aia(i), s, cap)
    if res.holds:
        return res
    cex = _localize(i, res.counterexample, lambda ft: _aia.ftrace_member(s, ft))
    return RefinementResult(False, cex, res.pairs_explored)


def leq_ia(i1: IA, i2: IA, cap: int = DEFAULT_CAP) -> RefinementResult:
    """Refinement between two interface automata.

    The right side is taken up to input-failure closure: an input the
    right side may refuse is treated as unconstrained once accepted.
    """
    if i1.inputs != i2.inputs or i1.outputs != i2.outputs:
        raise AlphabetError(f"{i1.name!r} and {i2.name!r} have different alphabets")
    res = leq_aia(induce_aia(i1), induce_aia(i2), cap)
    if res.holds:
        return res
    cex = _localize(i1, res.counterexample, lambda ft: _ia.fcl_member(i2, ft))
    return RefinementResult(False, cex, res.pairs_explored)


def equiv(s1: AIA, s2: AIA, cap: int = DEFAULT_CAP) -> bool:
    """Mutual refinement of two alternating automata."""
    return leq_aia(s1, s2, cap).holds and leq_aia(s2, s1, cap).holds
