#!/usr/bin/env python3
"""Refinement: which behaviours are allowed by which specification.

Three partial views of the same machine (coffee, tea, milkdrinks) are
plain interface automata.  Refinement compares input-failure traces:
what a model can do, plus which inputs it may refuse.
"""

from pathlib import Path

from altia import conj, equiv, induce_aia, leq_ia, leq_ia_aia
from altia.io import load_model

models = Path(__file__).resolve().parent.parent / "models"
coffee = load_model(models / "coffee.ia")
tea = load_model(models / "tea.ia")
milk = load_model(models / "milkdrinks.ia")
combo = load_model(models / "combo.ia")
machine = load_model(models / "machine.aia")
good = load_model(models / "good_machine.ia")
faulty = load_model(models / "faulty_tea.ia")


def show(title, result):
    verdict = "holds" if result.holds else f"fails: {result.counterexample}"
    print(f"  {title:38} {verdict}")


print("== refinement between plain views ==")
show("combo <= tea", leq_ia(combo, tea))
show("tea <= tea (reflexive)", leq_ia(tea, tea))
# the nondeterministic milk view can produce ?b !c+m, which the tea view
# never allows, not even after closing refused inputs
show("milkdrinks <= tea", leq_ia(milk, tea))

print()
print("== composing views conjunctively ==")
both = conj(induce_aia(coffee), conj(induce_aia(tea), induce_aia(milk)))
show("combo <= coffee&tea&milkdrinks", leq_ia_aia(combo, both))
show("good_machine <= machine", leq_ia_aia(good, machine))
show("faulty_tea <= machine", leq_ia_aia(faulty, machine))

print()
print("== refinement laws in action ==")
print("  combo <= coffee and combo <= tea separately:",
      leq_ia(combo, coffee).holds and leq_ia(combo, tea).holds)
print("  equivalent to refining their conjunction:",
      leq_ia_aia(combo, conj(induce_aia(coffee), induce_aia(tea))).holds)
print("  conjunction commutes (trace equivalence):",
      equiv(conj(induce_aia(coffee), induce_aia(tea)),
            conj(induce_aia(tea), induce_aia(coffee))))
