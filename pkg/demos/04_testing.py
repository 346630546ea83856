#!/usr/bin/env python3
"""Black-box testing: synthesize testers, run them, generate test cases.

The machine specification is turned into a tester whose outputs are the
machine's buttons (plus refusal observations like ~take) and whose
inputs are the machine's drinks.  Reaching the fail sink during the
synchronous product is exactly a refinement violation.
"""

from pathlib import Path

from altia import (
    build_tester,
    format_verdict,
    gen_singular,
    is_singular_for,
    is_test_case,
    leq_aia,
    run_random,
    singular_from_trace,
    verdict_exhaustive,
)
from altia.io import load_model, parse_trace

models = Path(__file__).resolve().parent.parent / "models"
machine = load_model(models / "machine.aia")
scenario = load_model(models / "scenario.aia")
good = load_model(models / "good_machine.ia")
faulty = load_model(models / "faulty_tea.ia")

print("== tester for the full machine ==")
t = build_tester(machine)
print("tester states:", sorted(t.ia.states))
print("a full tester usually is no test case (cycles, several stimuli):",
      is_test_case(t))

print()
print("== exhaustive execution decides refinement ==")
print("good machine: ", format_verdict(verdict_exhaustive(t, good)))
print("faulty machine:", format_verdict(verdict_exhaustive(t, faulty)))

print()
print("== single randomized runs (seed-reproducible) ==")
for seed in (0, 1, 2):
    v = run_random(t, faulty, seed=seed, max_steps=25)
    head = format_verdict(v).splitlines()[0]
    print(f"  seed {seed}: {head}  ({len(v.log)} steps)")

print()
print("== test cases from singular weakenings ==")
tc = build_tester(scenario)
print("scenario is singular for machine:", is_singular_for(scenario, machine))
print("its tester is a test case:", is_test_case(tc))
print("running it against the faulty machine:",
      format_verdict(verdict_exhaustive(tc, faulty)))

print()
print("== random test-case generation ==")
for seed in (3, 4, 5):
    g = gen_singular(machine, seed=seed, max_depth=6, p_stop=0.15)
    print(f"  seed {seed}: {len(g.states):2} nodes, singular={is_singular_for(g, machine)}, "
          f"weakens machine={leq_aia(machine, g).holds}, "
          f"test case={is_test_case(build_tester(g))}")

print()
print("== a test aimed at one known bad observation ==")
bad = parse_trace("?on ?b !t")
reject = singular_from_trace(machine, bad)
print("rejecting", bad, "->", format_verdict(verdict_exhaustive(build_tester(reject), faulty)))
