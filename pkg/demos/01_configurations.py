#!/usr/bin/env python3
"""Tour of configurations: the lattice that alternating automata move in.

A configuration describes where a system can be: `q1 | q2` when a trace
may have landed in either state, `q1 & q2` when two partial views must
both hold, `T` when anything is fine from here, `F` when nothing is.
"""

from altia import bot, classify, dnf, embed, join_all, meet_all, substitute, top

q1, q2, q3 = embed("q1"), embed("q2"), embed("q3")

print("== building blocks ==")
print("embed q1:        ", q1)
print("top / bot:       ", top(), "/", bot())
print("q1 & (q2 | q3):  ", q1 & (q2 | q3))

print()
print("== everything is kept in normal form ==")
e = q1 | (q2 & (q1 | q3))
print("q1 | (q2 & (q1 | q3)) =", e)
print("its clauses:", sorted(sorted(c) for c in dnf(e)))
print("absorption at work: q1 | (q1 & q2) =", q1 | (q1 & q2))
print("equality is structural:", (q1 | q2) == (q2 | q1))

print()
print("== classification ==")
for x in (top(), bot(), q1, q1 & q2):
    print(f"  {str(x):10} -> {classify(x).value}")

print()
print("== substitution drives the automaton semantics ==")
print("replace q1 by (q1 & q2), q2 by F, q3 by T inside", e)
result = substitute(e, {"q1": q1 & q2, "q2": bot(), "q3": top()})
print("  =", result)

print()
print("== empty joins and meets ==")
print("join of nothing:", join_all([]), "   meet of nothing:", meet_all([]))
