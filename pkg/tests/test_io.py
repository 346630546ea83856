import pytest

from altia import IA, FTrace, ParseError, det, build_tester
from altia.io import parse_expr, parse_model, parse_trace, print_model, to_dot
from altia.lattice import bot, embed, join, meet, top
from altia.rng import SplitMix64

from oracles import rand_aia, rand_ia


def test_parse_expr_precedence():
    e = parse_expr("q1 | q2 & q3")
    assert e == join(embed("q1"), meet(embed("q2"), embed("q3")))
    assert parse_expr("(q1 | q2) & q3") == meet(join(embed("q1"), embed("q2")), embed("q3"))
    assert parse_expr("T") == top()
    assert parse_expr("F") == bot()


def test_parse_expr_errors():
    for bad in ("", "q1 |", "q1 & & q2", "(q1", "q1 q2", "->"):
        with pytest.raises(ParseError):
            parse_expr(bad)


def test_parse_trace():
    ft = parse_trace("?on ?b !t")
    assert [str(l) for l in ft.body] == ["?on", "?b", "!t"]
    assert ft.failure is None
    ft = parse_trace("?on ~b")
    assert len(ft.body) == 1 and ft.failure == "b"
    assert parse_trace("") == FTrace()


def test_parse_trace_errors():
    with pytest.raises(ParseError):
        parse_trace("?on ~b !t")  # failure must be terminal
    with pytest.raises(ParseError):
        parse_trace("?on b")  # undecorated label
    with pytest.raises(ParseError):
        parse_trace("? on")


def test_model_roundtrip(machine, widget, scenario, coffee, tea, milkdrinks, combo):
    for m in (machine, widget, scenario, coffee, tea, milkdrinks, combo):
        text = print_model(m)
        again = parse_model(text)
        assert again == m
        assert again.name == m.name
        assert print_model(again) == text  # printing is idempotent


def test_roundtrip_quoted_names():
    d = det(parse_model(print_model_demo()))
    text = print_model(d)
    assert parse_model(text) == d


def print_model_demo():
    return (
        "aia demo\n"
        "inputs a\n"
        "outputs x\n"
        "init q0\n"
        "q0 ?a -> q0 & (q1 | q2)\n"
        "q1 !x -> T\n"
        "q2 !x -> q0\n"
    )


def test_defaults_are_invisible():
    explicit = (
        "aia demo\n"
        "states q0 q1\n"
        "inputs a\n"
        "outputs x\n"
        "init q0\n"
        "q0 ?a -> q1\n"
        "q0 !x -> F\n"
        "q1 ?a -> T\n"
        "q1 !x -> F\n"
    )
    defaulted = (
        "aia demo\n"
        "states q0 q1\n"
        "inputs a\n"
        "outputs x\n"
        "init q0\n"
        "q0 ?a -> q1\n"
    )
    assert parse_model(explicit) == parse_model(defaulted)


def test_parse_errors_carry_lines():
    bad = "aia demo\ninputs a\noutputs x\ninit q0\nq0 ?a -> q1 &\n"
    with pytest.raises(ParseError) as err:
        parse_model(bad)
    assert "line 5" in str(err.value)


def test_input_to_bottom_rejected():
    bad = "aia demo\ninputs a\noutputs x\ninit q0\nq0 ?a -> F\n"
    with pytest.raises(ParseError):
        parse_model(bad)
    # also when it merely reduces to bottom
    bad2 = "aia demo\ninputs a\noutputs x\ninit q0\nq0 ?a -> q0 & F\n"
    with pytest.raises(ParseError):
        parse_model(bad2)


def test_duplicate_transition_rejected():
    bad = "ia demo\ninputs a\noutputs x\ninit q0\nq0 ?a -> q0\nq0 ?a -> q0\n"
    with pytest.raises(ParseError):
        parse_model(bad)


def test_undeclared_rejected():
    with pytest.raises(ParseError):
        parse_model("ia demo\nstates q0\ninputs a\noutputs x\ninit q0\nq0 ?a -> q9\n")
    with pytest.raises(ParseError):
        parse_model("ia demo\ninputs a\noutputs x\ninit q0\nq0 ?zz -> q0\n")
    with pytest.raises(ParseError):
        parse_model("ia demo\ninputs a\noutputs x\ninit q0\nq0 !a -> q0\n")


def test_refusal_labels_only_where_declared(machine, good_machine):
    t = build_tester(machine)
    text = print_model(t.ia)
    again = parse_model(text)
    assert again == t.ia
    # and a refusal label in a model that does not declare it is an error
    with pytest.raises(ParseError):
        parse_model("ia demo\ninputs a\noutputs x\ninit q0\nq0 ~a -> q0\n")


def test_explicit_bottom_line_equals_omitted():
    a = parse_model("aia d\ninputs a\noutputs x\ninit q0\nq0 !x -> F\n")
    b = parse_model("aia d\ninputs a\noutputs x\ninit q0\n")
    assert a == b


def test_random_roundtrips():
    rng = SplitMix64(71)
    for _ in range(40):
        m = rand_aia(rng)
        assert parse_model(print_model(m)) == m
        i = rand_ia(rng)
        assert parse_model(print_model(i)) == i


def test_degenerate_models_roundtrip():
    from altia import aia_bot, aia_top

    empty = IA((), ("a",), ("x",), {}, (), name="void")
    assert parse_model(print_model(empty)) == empty
    for m in (aia_top(("a",), ("x",)), aia_bot(("a",), ("x",))):
        assert parse_model(print_model(m)) == m
    # states carrying no transitions survive the round trip
    loner = IA(("q0", "q1"), ("a",), ("x",), {"q0": {"a": {"q0"}}}, ("q0",), name="loner")
    assert parse_model(print_model(loner)) == loner


def test_hostile_state_names_roundtrip_everywhere():
    from altia import AIA, induce_aia, induce_ia
    from altia.lattice import embed, join, meet

    weird = [
        "a", "a&b", "a|b", "a b", "T", "F", "init", "states", "~x",
        "{q,r}", 'q"uote', "back\\slash", "p#1", "w0&w1 | w0&w2",
    ]
    s = AIA(
        weird,
        ("go",),
        ("out",),
        {
            "a": {"go": meet(embed("a&b"), join(embed("a|b"), embed("a b"))),
                  "out": embed("T")},
            "T": {"out": embed("{q,r}")},
            "{q,r}": {"out": meet(embed('q"uote'), embed("back\\slash"))},
            'q"uote': {"out": embed("p#1")},
            "p#1": {"go": embed("w0&w1 | w0&w2")},
        },
        embed("a"),
        name='we "ird',
    )
    assert parse_model(print_model(s)) == s
    for derived in (det(s), induce_ia(s), induce_aia(induce_ia(s)), build_tester(s).ia):
        assert parse_model(print_model(derived)) == derived


def test_syntactically_different_expressions_normalize_equal():
    pairs = [
        ("q1 | (q2 & (q1 | q3))", "(q3 & q2) | q1"),
        ("q1 & (q1 | q2)", "q1"),
        ("(q1 | q2) & (q1 | q3)", "q1 | (q2 & q3)"),
        ("T & (q1 | F)", "q1"),
        ("q2 & q1 & q1", "q1 & q2"),
    ]
    for left, right in pairs:
        assert parse_expr(left) == parse_expr(right)


def test_comments_and_blank_lines():
    text = "# heading\n\nia demo\n# alphabet\ninputs a\noutputs x\ninit q0 # start\nq0 ?a -> q0\n"
    m = parse_model(text)
    assert m.initial == {"q0"}


def test_dot_output(widget, machine, scenario):
    d = to_dot(det(widget))
    assert d.count("ellipse") == 3  # exactly the three composite states
    t = build_tester(scenario)
    dot = to_dot(t.ia)
    assert dot.count("doublecircle") == 2  # pass and fail
    raw = to_dot(machine)
    assert "shape=point" in raw  # conjunction junctions
    assert '"T"' in raw  # the shared unconstrained target


def test_dot_deterministic(machine):
    assert to_dot(machine) == to_dot(machine)
