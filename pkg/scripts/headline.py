"""Crossover points for the three headline QAOA depths."""

import argparse

from ftsat.crossover import HEADLINE_DEPTHS, HOUR, find_crossover
from ftsat.report import to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="headline.csv")
    args = ap.parse_args()
    rows = []
    for label, p in HEADLINE_DEPTHS.items():
        est = find_crossover(p)
        rows.append({"speedup": label, "p": p, "n": est.n, "d": est.d, "qubits_1e6": est.physical_qubits / 1e6,
                     "T_q_h": est.T_q / HOUR, "N_T": est.N_T, "delta": est.delta, "eps_T": est.eps_T})
    text = to_csv(rows)
    open(args.out, "w").write(text)
    print(text, end="")


if __name__ == "__main__":
    main()
