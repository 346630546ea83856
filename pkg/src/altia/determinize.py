"""Determinization of alternating interface automata.

The determinized automaton has one state per nontrivial configuration
reachable from the initial one; following any trace then lands on top,
bottom, or a single such state.  Only the reachable part is built: the
full configuration space is astronomically large, but the observable
behaviour depends only on configurations that some trace actually
reaches.
"""

from __future__ import annotations

from collections import deque

from .aia import AIA
from .errors import ExplorationLimitError
from .lattice import Config, Kind, bot, classify, embed, expr_str, top

DEFAULT_CAP = 100_000


def _reachable_configs(s: AIA, cap: int):
    """Nontrivial configurations reachable from the initial one, with the
    one-step successor table, in stable discovery order."""
    labels = sorted(s.inputs) + sorted(s.outputs)
    seen: dict[Config, dict[str, Config]] = {}
    start = s.initial
    if classify(start) in (Kind.TOP, Kind.BOT):
        return seen
    queue = deque([start])
    while queue:
        e = queue.popleft()
        if e in seen:
            continue
        if len(seen) >= cap:
            raise ExplorationLimitError(cap)
        row = {}
        for label in labels:
            t = s.step(e, label)
            row[label] = t
            if classify(t) not in (Kind.TOP, Kind.BOT) and t not in seen:
                queue.append(t)
        seen[e] = row
    return seen


def check_deterministic(s: AIA, cap: int = DEFAULT_CAP) -> bool:
    """Whether every reachable configuration is top, bottom or one state."""
    if classify(s.initial) is Kind.COMPOUND:
        return False
    for e in _reachable_configs(s, cap):
        if classify(e) is Kind.COMPOUND:
            return False
    return True


def det(s: AIA, cap: int = DEFAULT_CAP) -> AIA:
    """The determinization of ``s``.

    Each reachable nontrivial configuration becomes a state, named by
    its canonical expression string (quoted where ambiguous, so distinct
    configurations get distinct names); successors are re-wrapped as
    single states (or kept as top/bottom).  The result is always
    deterministic and has the same input-failure traces as ``s``.
    """
    reach = _reachable_configs(s, cap)

    def promote(e: Config) -> Config:
        k = classify(e)
        if k is Kind.TOP:
            return top()
        if k is Kind.BOT:
            return bot()
        return embed(expr_str(e))

    trans = {
        expr_str(e): {label: promote(t) for label, t in row.items()}
        for e, row in reach.items()
    }
    return AIA(
        [expr_str(e) for e in reach],
        s.inputs,
        s.outputs,
        trans,
        promote(s.initial),
        name=f"det({s.name})",
    )
