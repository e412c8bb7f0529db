"""Architecture-improvement grid at the quartic depth, both classical modes."""

import argparse

from ftsat.crossover import sweep_scenario_grid
from ftsat.report import to_csv

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--p", type=int, default=623)
ap.add_argument("--out", default="scenario_grid.csv")
args = ap.parse_args()

text = to_csv(sweep_scenario_grid(p=args.p))
with open(args.out, "w") as fh:
    fh.write(text)
print(text, end="")
