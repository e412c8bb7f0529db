"""Required T infidelity and optimal rotation precision versus rotation count."""

import argparse

import numpy as np

from ftsat.report import to_csv
from ftsat.synthesis import SCHEMES, budget_sweep

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--I-target", type=float, default=0.01)
ap.add_argument("--out", default="synthesis_budget.csv")
args = ap.parse_args()

rows = []
for name, scheme in SCHEMES.items():
    rows += [{"scheme": name, **row} for row in budget_sweep(np.logspace(3, 12, 19), args.I_target, scheme)]
text = to_csv(rows)
with open(args.out, "w") as fh:
    fh.write(text)
print(text, end="")
