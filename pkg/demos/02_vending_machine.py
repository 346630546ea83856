#!/usr/bin/env python3
"""The vending machine: querying and determinizing an alternating model.

machine.aia conjoins four partial views of one drinks machine.  Its
transition for ?on targets the conjunction of all four view entry
states; from there every observation narrows the configuration.
"""

from pathlib import Path

from altia import after_trace, check_deterministic, det, trace_verdict
from altia.io import load_model, parse_trace, print_model, to_dot

models = Path(__file__).resolve().parent.parent / "models"
machine = load_model(models / "machine.aia")

print("== walking the configuration ==")
for text in ("?on", "?on ?b", "?on ?b !t", "?on ?b !t+m", "?on ?b !t+m ?take"):
    cfg = after_trace(machine, parse_trace(text).body)
    print(f"  after {text:22} -> {cfg}")

print()
print("== three-way verdicts ==")
for text in ("?on ?b !t", "?a", "?on ?a !c"):
    status, cfg = trace_verdict(machine, parse_trace(text).body)
    print(f"  {text:12} {status.value:15} {cfg}")

print()
print("== determinization ==")
print("machine deterministic?", check_deterministic(machine))
dm = det(machine)
print("det(machine) deterministic?", check_deterministic(dm))
print()
print(print_model(dm))

dot_path = Path.cwd() / "machine_det.dot"
dot_path.write_text(to_dot(dm), encoding="utf-8")
print(f"wrote {dot_path.name} (render with: dot -Tpdf {dot_path.name})")
