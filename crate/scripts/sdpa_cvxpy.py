#!/usr/bin/env python3
"""Minimal SDPA-compatible front end over cvxpy.

Usage: sdpa_cvxpy.py INPUT.dat-s OUTPUT

Solves the feasibility problem sum_i y_i F_i - F_0 >= 0 from a sparse SDPA file
and writes an SDPA-style `phase.value = ...` line to OUTPUT.
"""
import sys

import cvxpy as cp
import numpy as np


def read_sdpa(path):
    lines = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line[0] in '"*':
                continue
            lines.append(line.replace(",", " ").replace("{", " ").replace("}", " "))
    m = int(lines[0].split()[0])
    nblocks = int(lines[1].split()[0])
    sizes = [int(x) for x in lines[2].split()[:nblocks]]
    mats = [[np.zeros((abs(s), abs(s))) for s in sizes] for _ in range(m + 1)]
    for line in lines[4:]:
        matno, blk, i, j, v = line.split()[:5]
        matno, blk, i, j, v = int(matno), int(blk) - 1, int(i) - 1, int(j) - 1, float(v)
        mats[matno][blk][i, j] = v
        mats[matno][blk][j, i] = v
    return m, sizes, mats


def main():
    src, dst = sys.argv[1], sys.argv[2]
    m, sizes, mats = read_sdpa(src)
    y = cp.Variable(m)
    cons = []
    for b, s in enumerate(sizes):
        expr = -mats[0][b] + sum(y[i] * mats[i + 1][b] for i in range(m))
        if s < 0:
            cons.append(cp.diag(expr) >= 0)
        else:
            cons.append((expr + expr.T) / 2 >> 0)
    prob = cp.Problem(cp.Minimize(0), cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.error.SolverError:
        prob.solve(solver=cp.SCS)
    phase = {
        cp.OPTIMAL: "pdOPT",
        cp.OPTIMAL_INACCURATE: "pdFEAS",
        cp.INFEASIBLE: "pINF",
        cp.INFEASIBLE_INACCURATE: "pINF",
        cp.UNBOUNDED: "dINF",
    }.get(prob.status, "noINFO")
    with open(dst, "w") as fh:
        fh.write(f"phase.value = {phase}\n")
        fh.write(f"status = {prob.status}\n")
        if y.value is not None:
            fh.write("xVec = " + " ".join(f"{v:.12g}" for v in y.value) + "\n")
    print(f"phase.value = {phase}")


if __name__ == "__main__":
    main()
