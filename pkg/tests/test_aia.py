import pytest

from altia import (
    AIA,
    IA,
    AlphabetError,
    FTrace,
    ModelError,
    TraceStatus,
    after,
    after_trace,
    aia_bot,
    aia_top,
    conj,
    disj,
    induce_aia,
    induce_ia,
    inp,
    trace_verdict,
)
from altia.aia import ftrace_member
from altia.lattice import bot, embed, join, meet, top
from altia.io import parse_trace
from altia.rng import SplitMix64

from oracles import (
    aia_member,
    aia_member_set,
    ia_fcl_set,
    rand_aia,
    rand_config,
    rand_ia,
    rand_trace,
    universe,
)


def test_after_forbidden_and_allowed_drink(machine):
    assert after_trace(machine, parse_trace("?on ?b !t").body) == bot()
    assert after_trace(machine, parse_trace("?on ?b !t+m").body) == embed("m10")


def test_after_intermediate_configuration(machine):
    e = after_trace(machine, parse_trace("?on ?b").body)
    assert e == meet(embed("m4"), meet(join(embed("m6"), embed("m7")), embed("m9")))


def test_after_opens_widget_conjunction(widget):
    assert after_trace(widget, parse_trace("?a").body) == meet(
        embed("w0"), join(embed("w1"), embed("w2"))
    )
    assert after_trace(widget, parse_trace("?a !y").body) == meet(embed("w0"), embed("w2"))


def test_induce_ia_of_unconstrained_spec_starts_chaotic():
    s = aia_top(("a",), ("x",))
    i = induce_ia(s)
    assert i.initial == {"T"}
    assert i.succ("T", "x") == {"T"}
    assert i.succ("T", "a") == frozenset()


def test_after_top_absorbs(machine):
    for word in ("?a", "?a ?b !c", "?take !t+m"):
        assert after(machine, top(), parse_trace(word).body) == top()


def test_after_alphabet_error(machine):
    with pytest.raises(AlphabetError):
        after_trace(machine, parse_trace("?zap").body)


def test_membership_and_verdicts(machine, widget):
    assert not ftrace_member(machine, parse_trace("?on ?b !t"))
    assert ftrace_member(machine, parse_trace("?on ?b !t+m"))
    assert not ftrace_member(machine, parse_trace("?on ~b"))
    assert ftrace_member(machine, parse_trace("~a"))
    status, cfg = trace_verdict(widget, parse_trace("?b").body)
    assert status is TraceStatus.UNDERSPECIFIED and cfg == top()
    status, _ = trace_verdict(machine, parse_trace("?on ?b !t").body)
    assert status is TraceStatus.FORBIDDEN
    status, cfg = trace_verdict(machine, parse_trace("?on").body)
    assert status is TraceStatus.ALLOWED and cfg.states() == {"m1", "m3", "m5", "m8"}


def test_inputs_may_not_target_bottom():
    with pytest.raises(ModelError):
        AIA(("q0",), ("a",), ("x",), {"q0": {"a": bot()}}, embed("q0"))


def test_composition_with_top_is_neutral(widget):
    t = aia_top(widget.inputs, widget.outputs)
    both = conj(widget, t)
    words = universe(widget.inputs, widget.outputs, 4)
    assert aia_member_set(both, words) == aia_member_set(widget, words)


def test_conj_disj_are_intersection_union():
    rng = SplitMix64(31)
    words = universe(("a", "b"), ("x", "y"), 4)
    for _ in range(25):
        s1 = rand_aia(rng, name="s1")
        s2 = rand_aia(rng, name="s2")
        m1 = aia_member_set(s1, words)
        m2 = aia_member_set(s2, words)
        assert aia_member_set(conj(s1, s2), words) == m1 & m2
        assert aia_member_set(disj(s1, s2), words) == m1 | m2


def test_top_bot_trace_sets():
    words = universe(("a",), ("x",), 4)
    assert aia_member_set(aia_top(("a",), ("x",)), words) == {str(w) for w in words}
    assert aia_member_set(aia_bot(("a",), ("x",)), words) == set()


def test_composition_alphabet_mismatch(machine, widget):
    with pytest.raises(AlphabetError):
        conj(machine, widget)


def test_composition_renames_on_collision(widget):
    other = AIA(
        ("w0",),
        widget.inputs,
        widget.outputs,
        {"w0": {"x": embed("w0")}},
        embed("w0"),
        name="clash",
    )
    both = conj(widget, other)
    assert "w0#1" in both.states and "w0#2" in both.states


def test_induce_aia_shapes(milkdrinks, coffee):
    alt = induce_aia(milkdrinks)
    assert alt.transitions["s0"]["b"] == join(embed("s1"), embed("s2"))
    assert alt.transitions["s0"]["a"] == top()        # unspecified input
    assert alt.transitions["s0"]["c+m"] == bot()      # no such output here
    assert induce_aia(IA((), ("a",), ("x",), {}, ())).initial == bot()
    assert induce_aia(coffee).initial == embed("s0")


def test_induce_aia_is_the_closure():
    rng = SplitMix64(32)
    words = universe(("a", "b"), ("x", "y"), 4)
    for _ in range(30):
        i = rand_ia(rng)
        assert aia_member_set(induce_aia(i), words) == ia_fcl_set(i, words)


def test_induce_ia_bottom_is_empty():
    s = aia_bot(("a",), ("x",))
    i = induce_ia(s)
    assert not i.initial and not i.states


def test_induce_ia_chaotic_state():
    # one state whose input leads to unconstrained behaviour; states of
    # the induced automaton are named by their clause as a conjunction,
    # the empty (chaotic) clause printing as the unconstrained constant
    s = AIA(("q0",), ("a",), ("x",), {"q0": {"x": embed("q0")}}, embed("q0"))
    i = induce_ia(s)
    assert i.initial == {"q0"}
    assert i.succ("q0", "a") == frozenset()  # fully underspecified: no edge
    chaos = "T"
    assert chaos not in i.states  # chaos appears only when reachable
    s2 = AIA(("q0",), ("a",), ("x",), {"q0": {"a": top(), "x": top()}}, embed("q0"))
    i2 = induce_ia(s2)
    assert i2.succ("q0", "x") == {chaos}
    assert i2.succ(chaos, "x") == {chaos}      # outputs loop at chaos
    assert i2.succ(chaos, "a") == frozenset()  # inputs stay underspecified
    # so every refusal and, up to closure, every continuation is allowed
    from altia.ia import fcl_member

    assert fcl_member(i2, parse_trace("!x ~a"))
    assert fcl_member(i2, parse_trace("!x ?a !x !x"))


def test_induce_ia_preserves_traces_up_to_closure():
    rng = SplitMix64(33)
    words = universe(("a", "b"), ("x", "y"), 4)
    for _ in range(30):
        s = rand_aia(rng, n_states=3)
        back = induce_ia(s)
        assert ia_fcl_set(back, words) == aia_member_set(s, words)


def test_after_distributes_over_configs():
    rng = SplitMix64(34)
    for _ in range(150):
        s = rand_aia(rng)
        e1 = rand_config(rng, s.states)
        e2 = rand_config(rng, s.states)
        tr = rand_trace(rng, s.inputs, s.outputs, 5)
        assert after(s, join(e1, e2), tr) == join(after(s, e1, tr), after(s, e2, tr))
        assert after(s, meet(e1, e2), tr) == meet(after(s, e1, tr), after(s, e2, tr))


def test_after_concatenates():
    rng = SplitMix64(35)
    for _ in range(150):
        s = rand_aia(rng)
        e = rand_config(rng, s.states)
        t1 = rand_trace(rng, s.inputs, s.outputs, 3)
        t2 = rand_trace(rng, s.inputs, s.outputs, 3)
        assert after(s, e, t1 + t2) == after(s, after(s, e, t1), t2)


def test_membership_is_input_failure_closed():
    rng = SplitMix64(36)
    for _ in range(40):
        s = rand_aia(rng)
        for body in (rand_trace(rng, s.inputs, s.outputs, 3) for _ in range(10)):
            for a in sorted(s.inputs):
                if ftrace_member(s, FTrace(body, a)):
                    cont = rand_trace(rng, s.inputs, s.outputs, 3)
                    assert ftrace_member(s, FTrace(body + (inp(a),) + cont))


def test_inputs_never_reach_bottom():
    rng = SplitMix64(37)
    for _ in range(100):
        s = rand_aia(rng)
        e = rand_config(rng, s.states)
        if e.is_bot:
            continue
        for a in sorted(s.inputs):
            assert not after(s, e, (inp(a),)).is_bot


def test_recursive_trace_decomposition():
    # membership of a nonbottom configuration: empty word, refusals that
    # hit top in one step, and one-step unfoldings of every label
    rng = SplitMix64(38)
    words4 = universe(("a", "b"), ("x", "y"), 3)
    for _ in range(15):
        s = rand_aia(rng)
        reachable = [after_trace(s, rand_trace(rng, s.inputs, s.outputs, 3)) for _ in range(8)]
        for e in reachable:
            if e.is_bot:
                continue
            sub = AIA(s.states, s.inputs, s.outputs, s.transitions, e, name="sub")
            for w in words4:
                got = aia_member(sub, w)
                if w.failure is not None and not w.body:
                    assert got == s.step(e, w.failure).is_top
                elif not w.body and w.failure is None:
                    assert got
                else:
                    lab = w.body[0]
                    rest = AIA(
                        s.states, s.inputs, s.outputs, s.transitions,
                        s.step(e, lab.name), name="rest",
                    )
                    assert got == aia_member(rest, FTrace(w.body[1:], w.failure))


def test_membership_against_reference(machine, widget):
    words = universe(machine.inputs, machine.outputs, 4)
    for w in words[:600]:
        assert ftrace_member(machine, w) == aia_member(machine, w)
    words_w = universe(widget.inputs, widget.outputs, 5)
    for w in words_w:
        assert ftrace_member(widget, w) == aia_member(widget, w)
