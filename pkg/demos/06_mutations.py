"""How sensitive is the bracket check?  Perturb one coefficient at a time."""
import random

from heisreal.presentations import extended_presentation, lorentz_presentation, so_presentation
from heisreal.realize import realize_extended, realize_lorentz, realize_so
from heisreal.verify import check_bracket, mutate, mutation_trials

cases = [(realize_so(3, 4), so_presentation(3)),
         (realize_lorentz(4, 4), lorentz_presentation(4)),
         (realize_extended(3, "minkowski", 4), extended_presentation(3, "minkowski"))]

trials = mutation_trials(cases, 40, seed=3)
hits = sum(1 for *_, detected in trials if detected)
print(f"{hits}/{len(trials)} single-coefficient mutations detected")

lab, mono, bad = mutate(cases[0][0], random.Random(1))
report = check_bracket(bad, cases[0][1])
print(f"bumped {bad.alg.format_monomial(mono)} in {lab}; failing pairs:")
for p in report.failures():
    print(f"  [{p.g1}, {p.g2}] residual {p.residual}")

# so(2) has a single generator and nothing to bracket, so it cannot notice
_, _, bad2 = mutate(realize_so(2, 4), random.Random(0))
print("mutated so(2) still passes:", check_bracket(bad2, so_presentation(2)).passed)
