import hypothesis.strategies as st
from hypothesis import given, settings

from altia.lattice import (
    Config,
    Kind,
    bot,
    classify,
    dnf,
    embed,
    join,
    join_all,
    meet,
    meet_all,
    substitute,
    top,
)

q1, q2, q3 = embed("q1"), embed("q2"), embed("q3")


def test_embedding_and_identities():
    assert dnf(q1) == frozenset({frozenset({"q1"})})
    assert meet(q1, top()) == q1
    assert join(q1, bot()) == q1
    assert join(q1, top()) == top()
    assert meet(q1, bot()) == bot()


def test_dnf_constants():
    assert dnf(bot()) == frozenset()
    assert dnf(top()) == frozenset({frozenset()})
    assert classify(top()) is Kind.TOP
    assert classify(bot()) is Kind.BOT


def test_join_absorption():
    assert join(q1, meet(q2, q3)) == Config([{"q1"}, {"q2", "q3"}])
    assert join(q1, meet(q1, q2)) == q1
    assert meet(q1, join(q1, q2)) == q1


def test_nested_expression_normalizes():
    # q1 or (q2 and (q1 or q3)) has exactly the clauses {q1}, {q2,q3}
    e = join(q1, meet(q2, join(q1, q3)))
    assert dnf(e) == frozenset({frozenset({"q1"}), frozenset({"q2", "q3"})})
    assert str(e) == "q1 | q2&q3"


def test_meet_examples():
    assert meet(q1, q2) == Config([{"q1", "q2"}])
    assert meet(join(q1, q2), bot()) == bot()
    assert meet(q1, q1) == q1


def test_classify():
    assert classify(q1) is Kind.STATE
    assert q1.single_state == "q1"
    assert classify(Config([{"q1"}, {"q2", "q3"}])) is Kind.COMPOUND
    assert classify(Config([frozenset()])) is Kind.TOP


def test_empty_folds():
    assert join_all([]) == bot()
    assert meet_all([]) == top()


def test_substitution_constants_fixed():
    f = {"q1": q2, "q2": bot(), "q3": top()}
    assert substitute(top(), f) == top()
    assert substitute(bot(), f) == bot()


def test_substitution_vending_example():
    # one state opening a conjunction with a nested choice
    f = {"w0": meet(embed("w0"), join(embed("w1"), embed("w2")))}
    e = substitute(embed("w0"), f)
    assert dnf(e) == frozenset({frozenset({"w0", "w1"}), frozenset({"w0", "w2"})})
    # then an output that w1 forbids and w2 keeps
    g = {"w0": embed("w0"), "w1": bot(), "w2": embed("w2")}
    assert substitute(e, g) == meet(embed("w0"), embed("w2"))


def test_interning_and_hash():
    a = Config([{"q1"}, {"q2", "q3"}])
    b = join(q1, meet(q2, q3))
    assert a is b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1


def test_str_parse_roundtrip():
    from altia.io import parse_expr

    for e in (top(), bot(), q1, join(q1, meet(q2, q3)), meet(q1, join(q2, q3))):
        assert parse_expr(str(e)) == e


names = st.sampled_from(["q1", "q2", "q3", "q4", "q5", "q6"])
configs = st.deferred(
    lambda: st.one_of(
        st.just(top()),
        st.just(bot()),
        names.map(embed),
        st.tuples(configs, configs).map(lambda t: join(*t)),
        st.tuples(configs, configs).map(lambda t: meet(*t)),
    )
)


@settings(max_examples=300)
@given(configs, configs, configs)
def test_lattice_axioms(a, b, c):
    assert join(a, b) == join(b, a)
    assert meet(a, b) == meet(b, a)
    assert join(a, join(b, c)) == join(join(a, b), c)
    assert meet(a, meet(b, c)) == meet(meet(a, b), c)
    assert join(a, meet(a, b)) == a
    assert meet(a, join(a, b)) == a
    assert join(a, a) == a
    assert meet(a, a) == a
    assert join(a, meet(b, c)) == meet(join(a, b), join(a, c))
    assert meet(a, join(b, c)) == join(meet(a, b), meet(a, c))
    assert join(a, top()) == top()
    assert meet(a, bot()) == bot()


@settings(max_examples=200)
@given(configs)
def test_antichain_invariant(e):
    clauses = list(dnf(e))
    for i, c1 in enumerate(clauses):
        for j, c2 in enumerate(clauses):
            if i != j:
                assert not c1 <= c2


@settings(max_examples=200)
@given(configs)
def test_dnf_reconstructs(e):
    rebuilt = join_all(meet_all(embed(x) for x in clause) for clause in dnf(e))
    assert rebuilt == e


@settings(max_examples=200)
@given(configs, configs)
def test_substitute_distributes(a, b):
    f = {q: meet(embed(q), embed("z")) for q in (a.states() | b.states())}
    f.setdefault("z", embed("z"))
    assert substitute(join(a, b), f) == join(substitute(a, f), substitute(b, f))
    assert substitute(meet(a, b), f) == meet(substitute(a, f), substitute(b, f))
