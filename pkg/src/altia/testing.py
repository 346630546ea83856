"""Testers, test execution and test-case generation.

A tester is an interface automaton run against a black-box
implementation: the implementation's inputs are the tester's outputs
(stimuli) and vice versa (observations).  For every stimulus ``a`` the
tester also offers the refusal observation ``~a``, so a blocked input is
itself observable.  Two sink states, ``pass`` and ``fail``, carry the
verdict; testing is reachability of ``fail`` in the synchronous product
of tester and implementation.

A *test case* is a tester that offers at most one stimulus per state and
whose runs all reach a verdict in finitely many steps.  Test cases are
obtained by weakening a specification to a *singular* one: a finite tree
of traces, each node constraining at most one input, everything else
left unconstrained.  Testers of singular specifications are sound: they
never fail a correct implementation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import aia as _aia
from . import ia as _ia
from .aia import AIA, aia_bot, aia_top
from .errors import AlphabetError, ExplorationLimitError, ModelError
from .ia import IA, FTrace, Label, inp
from .lattice import Config, Kind, bot, classify, embed, expr_str, top
from .rng import SplitMix64

DEFAULT_CAP = 100_000

PASS = "pass"
FAIL = "fail"


def refusal(name: str) -> str:
    return "~" + name


def is_refusal(name: str) -> bool:
    return name.startswith("~")


def refusal_base(name: str) -> str:
    return name[1:]


@dataclass(frozen=True)
class Tester:
    """An interface automaton with swapped alphabets and verdict sinks."""

    ia: IA
    pass_state: str = PASS
    fail_state: str = FAIL

    @property
    def stimuli(self) -> frozenset[str]:
        """Implementation inputs the tester may supply."""
        return frozenset(x for x in self.ia.outputs if not is_refusal(x))

    @property
    def observations(self) -> frozenset[str]:
        """Implementation outputs the tester must accept."""
        return self.ia.inputs

    @property
    def initial(self) -> str:
        (q0,) = self.ia.initial
        return q0


def tester_problems(t: Tester) -> list[str]:
    """Violations of the tester contract; empty when well formed.

    Checks: single initial state, verdict states present and sinks
    without stimuli, determinism, every observation enabled everywhere,
    and each stimulus offered together with its refusal observation.
    """
    s = t.ia
    problems = []
    if len(s.initial) != 1:
        problems.append("tester must have exactly one initial state")
    for v in (t.pass_state, t.fail_state):
        if v not in s.states:
            problems.append(f"verdict state {v!r} missing")
            continue
        flags = _ia.classify_state(s, v)
        if not flags.is_sink:
            problems.append(f"verdict state {v!r} is not a sink")
        if any(s.succ(v, x) for x in s.outputs):
            problems.append(f"verdict state {v!r} offers stimuli")
    stim = t.stimuli
    for r in s.outputs:
        if is_refusal(r) and refusal_base(r) not in stim:
            problems.append(f"refusal label {r!r} has no matching stimulus")
    for a in stim:
        if refusal(a) not in s.outputs:
            problems.append(f"stimulus {a!r} has no refusal label declared")
    if not _ia.deterministic(s):
        problems.append("tester is not deterministic")
    for q in sorted(s.states):
        if not all(s.succ(q, x) for x in s.inputs):
            problems.append(f"state {q!r} does not accept every observation")
        for a in sorted(stim):
            if bool(s.succ(q, a)) != bool(s.succ(q, refusal(a))):
                problems.append(f"state {q!r} offers {a!r} without its refusal (or vice versa)")
    return problems


def validate_tester(t: Tester) -> None:
    problems = tester_problems(t)
    if problems:
        raise ModelError("not a valid tester: " + "; ".join(problems))


def build_tester(s: AIA, cap: int = DEFAULT_CAP) -> Tester:
    """Synthesize the canonical tester for a specification.

    States are the reachable nontrivial configurations plus the verdict
    sinks.  Observing an output moves to the successor configuration
    (``fail`` when forbidden, ``pass`` when it leads to unconstrained
    behaviour).  A stimulus is offered only where the specification
    constrains it; its refusal observation then leads to ``fail``.
    Underspecified inputs are not tested at all: both accepting and
    refusing them would pass.
    """
    if PASS in s.states or FAIL in s.states:
        raise ModelError("specification states may not be named 'pass' or 'fail'")
    for a in s.inputs:
        if is_refusal(a):
            raise ModelError(f"input {a!r} clashes with the refusal-label prefix")
    stimuli = sorted(s.inputs)
    observations = sorted(s.outputs)
    t_inputs = set(s.outputs)
    t_outputs = set(s.inputs) | {refusal(a) for a in s.inputs}

    trans: dict[str, dict[str, set[str]]] = {
        PASS: {x: {PASS} for x in observations},
        FAIL: {x: {FAIL} for x in observations},
    }

    def target(e: Config) -> str:
        k = classify(e)
        if k is Kind.TOP:
            return PASS
        if k is Kind.BOT:
            return FAIL
        return expr_str(e)

    start = s.initial
    init_name = target(start)
    if classify(start) not in (Kind.TOP, Kind.BOT):
        seen: set[Config] = set()
        queue = deque([start])
        while queue:
            e = queue.popleft()
            if e in seen:
                continue
            if len(seen) >= cap:
                raise ExplorationLimitError(cap)
            seen.add(e)
            row: dict[str, set[str]] = {}
            for x in observations:
                nxt = s.step(e, x)
                row[x] = {target(nxt)}
                if classify(nxt) not in (Kind.TOP, Kind.BOT) and nxt not in seen:
                    queue.append(nxt)
            for a in stimuli:
                nxt = s.step(e, a)
                if nxt.is_top:
                    continue  # underspecified input: do not test it
                row[a] = {target(nxt)}
                row[refusal(a)] = {FAIL}
                if classify(nxt) not in (Kind.TOP, Kind.BOT) and nxt not in seen:
                    queue.append(nxt)
            trans[expr_str(e)] = row
    states = set(trans)
    return Tester(
        IA(states, t_inputs, t_outputs, trans, {init_name}, name=f"tester({s.name})")
    )


@dataclass(frozen=True)
class Product:
    """Synchronous composition of a tester and an implementation.

    A pure output machine over stimuli, refusals and observations; a
    refusal fires exactly when the tester offers it and the
    implementation cannot take the input.
    """

    ia: IA
    pairs: dict[str, tuple[str, str]]
    fail_states: frozenset[str]


def _pair_name(qt: str, qi: str) -> str:
    return f"{qt} ]| {qi}"


def _check_compatible(t: Tester, i: IA) -> None:
    validate_tester(t)
    if not i.initial:
        raise ModelError(f"implementation {i.name!r} is empty: nothing to test")
    if i.inputs != t.stimuli or i.outputs != t.observations:
        raise AlphabetError(
            f"tester {t.ia.name!r} and implementation {i.name!r} have "
            "incompatible alphabets"
        )


def _product_moves(t: Tester, i: IA, qt: str, qi: str):
    """Enabled (label, [(qt', qi'), ...]) moves, in sorted label order."""
    moves = []
    for l in sorted(i.inputs | i.outputs):
        ts = t.ia.succ(qt, l)
        is_ = i.succ(qi, l)
        if ts and is_:
            moves.append((l, [(qt2, qi2) for qt2 in sorted(ts) for qi2 in sorted(is_)]))
    for a in sorted(i.inputs):
        ts = t.ia.succ(qt, refusal(a))
        if ts and not i.succ(qi, a):
            moves.append((refusal(a), [(qt2, qi) for qt2 in sorted(ts)]))
    return moves


def execute_product(t: Tester, i: IA) -> Product:
    """Build the reachable test-execution product."""
    _check_compatible(t, i)
    start = [(t.initial, qi) for qi in sorted(i.initial)]
    pairs: dict[str, tuple[str, str]] = {}
    trans: dict[str, dict[str, set[str]]] = {}
    queue = deque(start)
    while queue:
        qt, qi = queue.popleft()
        name = _pair_name(qt, qi)
        if name in pairs:
            continue
        pairs[name] = (qt, qi)
        row: dict[str, set[str]] = {}
        for label, succs in _product_moves(t, i, qt, qi):
            row[label] = set()
            for nxt in succs:
                row[label].add(_pair_name(*nxt))
                queue.append(nxt)
        trans[name] = row
    labels = i.inputs | {refusal(a) for a in i.inputs} | i.outputs
    product = IA(
        set(pairs),
        (),
        labels,
        trans,
        {_pair_name(*p) for p in start},
        name=f"({t.ia.name} ]| {i.name})",
    )
    fails = frozenset(n for n, (qt, _) in pairs.items() if qt == t.fail_state)
    return Product(product, pairs, fails)


@dataclass
class Verdict:
    """Outcome of a test run or of exhaustive test execution.

    ``witness`` is the observation that reached ``fail``.  ``log`` holds
    (step, label, tester state, implementation state) entries for
    simulated runs; ``note`` marks runs that ended without a verdict
    ("inconclusive": no move enabled, "max-steps": budget exhausted).
    """

    passed: bool
    witness: Optional[FTrace] = None
    log: list[tuple[int, str, str, str]] = field(default_factory=list)
    note: Optional[str] = None


def _labels_to_ftrace(labels: list[str], impl_inputs: frozenset[str]) -> FTrace:
    body = []
    for k, l in enumerate(labels):
        if is_refusal(l):
            if k != len(labels) - 1:
                raise ModelError("refusal observed before the end of a run")
            return FTrace(tuple(body), refusal_base(l))
        body.append(Label(l, l in impl_inputs))
    return FTrace(tuple(body))


def verdict_exhaustive(t: Tester, i: IA) -> Verdict:
    """Decide whether any resolution of the product can reach ``fail``.

    Breadth-first, so a failing implementation gets a shortest witness.
    """
    _check_compatible(t, i)
    entries = []  # (pair, parent index, arriving label)
    seen = set()
    queue = deque()
    for qi in sorted(i.initial):
        state = (t.initial, qi)
        if state not in seen:
            seen.add(state)
            entries.append((state, -1, None))
            queue.append(len(entries) - 1)
    while queue:
        idx = queue.popleft()
        (qt, qi), _, _ = entries[idx]
        if qt == t.fail_state:
            labels = []
            j = idx
            while j >= 0:
                _, parent, lab = entries[j]
                if lab is not None:
                    labels.append(lab)
                j = parent
            labels.reverse()
            return Verdict(False, _labels_to_ftrace(labels, i.inputs))
        if qt == t.pass_state:
            continue
        for label, succs in _product_moves(t, i, qt, qi):
            for nxt in succs:
                if nxt not in seen:
                    seen.add(nxt)
                    entries.append((nxt, idx, label))
                    queue.append(len(entries) - 1)
    return Verdict(True)


def run_random(t: Tester, i: IA, seed: int, max_steps: int = 100) -> Verdict:
    """Simulate one test run, resolving every race uniformly at random.

    All choices (which enabled move fires, which implementation successor
    a nondeterministic step takes, which initial state starts) are drawn
    from a splitmix64 stream, so a seed fully determines the run.
    """
    _check_compatible(t, i)
    rng = SplitMix64(seed)
    qt = t.initial
    initials = sorted(i.initial)
    qi = initials[rng.below(len(initials))]
    labels: list[str] = []
    log: list[tuple[int, str, str, str]] = []
    steps = 0
    while True:
        if qt == t.fail_state:
            return Verdict(False, _labels_to_ftrace(labels, i.inputs), log)
        if qt == t.pass_state:
            return Verdict(True, None, log)
        if steps >= max_steps:
            return Verdict(True, None, log, note="max-steps")
        moves = _product_moves(t, i, qt, qi)
        if not moves:
            return Verdict(True, None, log, note="inconclusive")
        label, succs = moves[rng.below(len(moves))]
        qt, qi = succs[rng.below(len(succs))] if len(succs) > 1 else succs[0]
        steps += 1
        labels.append(label)
        log.append((steps, label, qt, qi))


def format_verdict(v: Verdict, with_log: bool = False) -> str:
    """Render a verdict: one PASS/FAIL line, then optional log lines."""
    if v.passed:
        lines = [PASS.upper()]
    else:
        witness = str(v.witness) if v.witness is not None else ""
        lines = [f"{FAIL.upper()} {witness}".rstrip()]
    if with_log:
        for step, label, qt, qi in v.log:
            lines.append(f"{step} {label} {qt} {qi}")
        if v.note:
            lines.append(f"# {v.note}")
    return "\n".join(lines)


def _node_name(trace: tuple[Label, ...]) -> str:
    return " ".join(str(l) for l in trace) if trace else "eps"


def gen_singular(s: AIA, seed: int, max_depth: int, p_stop: float) -> AIA:
    """Randomly weaken a specification to a singular one.

    Grows a tree of traces from the initial configuration.  At each node
    one constrained input (or none) is chosen to explore; every output
    the specification constrains is either followed or cut off to
    unconstrained with probability ``p_stop``.  Nothing longer than
    ``max_depth`` is constrained.  The result always refines loosely
    enough that its tester is a sound test case for ``s``.
    """
    if not 0.0 <= p_stop <= 1.0:
        raise ValueError("p_stop must be a probability")
    e0 = s.initial
    if e0.is_top:
        return aia_top(s.inputs, s.outputs, name=f"singular({s.name})")
    if e0.is_bot:
        return aia_bot(s.inputs, s.outputs, name=f"singular({s.name})")
    rng = SplitMix64(seed)
    inputs = sorted(s.inputs)
    outputs = sorted(s.outputs)
    trans: dict[str, dict[str, Config]] = {}
    stack = [((), e0)]
    while stack:
        trace, e = stack.pop()
        name = _node_name(trace)
        depth = len(trace)
        can_extend = depth + 1 < max_depth
        row: dict[str, Config] = {}
        children = []
        candidates = [a for a in inputs if not s.step(e, a).is_top]
        if candidates and can_extend:
            pick = rng.below(len(candidates) + 1)
            if pick > 0:
                a = candidates[pick - 1]
                child = trace + (inp(a),)
                row[a] = embed(_node_name(child))
                children.append((child, s.step(e, a)))
        for x in outputs:
            nxt = s.step(e, x)
            if nxt.is_bot:
                continue
            if nxt.is_top or not can_extend or rng.random() < p_stop:
                row[x] = top()
            else:
                child = trace + (Label(x, False),)
                row[x] = embed(_node_name(child))
                children.append((child, nxt))
        trans[name] = row
        stack.extend(reversed(children))
    return AIA(
        set(trans),
        s.inputs,
        s.outputs,
        trans,
        embed("eps"),
        name=f"singular({s.name},{seed})",
    )


def singular_from_trace(s: AIA, ft: FTrace) -> AIA:
    """The singular specification that rejects one given observation.

    ``ft`` must not be an observation of ``s``.  The result is a linear
    trace tree whose last step forbids the offending output, or keeps
    the refused input constrained so its refusal stays disallowed; its
    tester makes any implementation showing ``ft`` fail.
    """
    if _aia.ftrace_member(s, ft):
        raise ModelError(f"{ft} is allowed by {s.name!r}; nothing to reject")
    name = f"reject({ft})" if str(ft) else "reject(empty)"
    body = list(ft.body)
    if ft.failure is None:
        # A plain trace ending in inputs is unreachable one step earlier
        # already (inputs never lead to bottom), so reject the shortest
        # prefix that is still no observation of s.
        while body and body[-1].is_input:
            body.pop()
        if not body:
            return aia_bot(s.inputs, s.outputs, name=name)
        chain, last = body[:-1], body[-1]
    else:
        chain, last = body, inp(ft.failure)

    trans: dict[str, dict[str, Config]] = {}
    all_top = {x: top() for x in s.outputs}
    prefix: tuple[Label, ...] = ()
    for lab in chain:
        row = dict(all_top)
        row[lab.name] = embed(_node_name(prefix + (lab,)))
        trans[_node_name(prefix)] = row
        prefix = prefix + (lab,)
    final = dict(all_top)
    if ft.failure is None:
        final[last.name] = bot()
        trans[_node_name(prefix)] = final
    else:
        leaf = prefix + (last,)
        final[last.name] = embed(_node_name(leaf))
        trans[_node_name(prefix)] = final
        trans[_node_name(leaf)] = dict(all_top)
    return AIA(set(trans), s.inputs, s.outputs, trans, embed("eps"), name=name)


def is_singular_for(s2: AIA, s1: AIA) -> bool:
    """Whether ``s2`` is a singular weakening of ``s1``.

    ``s2`` must be a fully reachable tree over traces: every transition
    targets bottom, top, or a fresh child node; forbidding is only
    allowed where ``s1`` forbids, anything ``s1`` leaves unconstrained
    must stay unconstrained, and each node constrains at most one input.
    """
    if s2.inputs != s1.inputs or s2.outputs != s1.outputs:
        return False
    k0 = classify(s2.initial)
    if k0 is Kind.TOP:
        return not s2.states
    if k0 is Kind.BOT:
        return s1.initial.is_bot and not s2.states
    if k0 is Kind.COMPOUND:
        return False
    if s1.initial.is_top:
        return False
    root = s2.initial.single_state
    seen = {root}
    stack: list[tuple[str, tuple[Label, ...]]] = [(root, ())]
    while stack:
        node, trace = stack.pop()
        constrained_inputs = 0
        for label in sorted(s2.labels):
            cfg = s2.transitions[node][label]
            lab = Label(label, label in s2.inputs)
            kind = classify(cfg)
            if lab.is_input and kind is not Kind.TOP:
                constrained_inputs += 1
            if kind is Kind.TOP:
                continue
            here = _aia.after_trace(s1, trace + (lab,))
            if kind is Kind.BOT:
                if not here.is_bot:
                    return False
                continue
            if kind is Kind.COMPOUND:
                return False
            if here.is_top:
                return False
            child = cfg.single_state
            if child in seen:  # shared or looping target: not a tree
                return False
            seen.add(child)
            stack.append((child, trace + (lab,)))
        if constrained_inputs > 1:
            return False
    return seen == set(s2.states)


def is_test_case(t: Tester) -> bool:
    """Whether a tester is directly executable as a test case.

    Requires a well-formed tester offering at most one stimulus per
    state (a stimulus and its refusal observation count as one offer)
    whose non-verdict part is acyclic, so every run reaches a verdict.
    """
    if tester_problems(t):
        return False
    s = t.ia
    for q in s.states:
        offered = {a for a in t.stimuli if s.succ(q, a)}
        if len(offered) > 1:
            return False
    # Cycle check over non-verdict states.
    verdicts = {t.pass_state, t.fail_state}

    def successors(q):
        return sorted(
            r
            for targets in s.transitions.get(q, {}).values()
            for r in targets
            if r not in verdicts
        )

    colors: dict[str, int] = {}  # 1 = on stack, 2 = done
    for start in sorted(s.states - verdicts):
        if start in colors:
            continue
        colors[start] = 1
        stack = [(start, iter(successors(start)))]
        while stack:
            node, it = stack[-1]
            for nxt in it:
                c = colors.get(nxt)
                if c == 1:
                    return False
                if c is None:
                    colors[nxt] = 1
                    stack.append((nxt, iter(successors(nxt))))
                    break
            else:
                colors[node] = 2
                stack.pop()
    return True
