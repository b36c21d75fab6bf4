#!/usr/bin/env python3
"""Exact MaxSAT solver over WCNF files, backed by the HiGHS MILP solver
shipped with SciPy.

Usage:
    wcnf_milp_solver.py FILE.wcnf          solve one instance
    wcnf_milp_solver.py --batch LIST       solve every path listed in LIST

Reads both WCNF dialects: the headerless one ("h <lits> 0" hard clauses,
"<weight> <lits> 0" soft clauses) and the legacy one ("p wcnf <nv> <nc> <top>"
with hard clauses weighted <top>). Prints MaxSAT-evaluation result lines:

    o <cost>
    s OPTIMUM FOUND | s UNSATISFIABLE
    v <0/1 string, one character per variable>

In batch mode each instance is preceded by "c instance <path>".
"""

import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix


def parse_wcnf(path):
    hard, soft = [], []
    top = None
    num_vars = 0
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) >= 5 and parts[1] == "wcnf":
                    num_vars = int(parts[2])
                    top = int(parts[4])
                continue
            parts = line.split()
            if parts[0] == "h":
                weight = None
                lits = [int(x) for x in parts[1:]]
            else:
                weight = int(parts[0])
                lits = [int(x) for x in parts[1:]]
            if lits and lits[-1] == 0:
                lits = lits[:-1]
            if not lits:
                continue
            num_vars = max(num_vars, max(abs(l) for l in lits))
            if weight is None or (top is not None and weight >= top):
                hard.append(lits)
            else:
                soft.append((weight, lits))
    return num_vars, hard, soft


def solve(num_vars, hard, soft):
    """Returns (cost, assignment list of 0/1) or None when hard is infeasible."""
    if num_vars == 0:
        return 0, []
    rows, cols, vals, lbs = [], [], [], []
    extra = 0  # relaxation variables for non-unit soft clauses
    obj = {}
    offset = 0
    constraints = []  # (coeffs dict, lower bound)
    for lits in hard:
        coeff, base = {}, 1
        for lit in lits:
            v = abs(lit) - 1
            if lit > 0:
                coeff[v] = coeff.get(v, 0) + 1
            else:
                coeff[v] = coeff.get(v, 0) - 1
                base -= 1
        constraints.append((coeff, base))
    soft_relax = []
    for weight, lits in soft:
        if len(lits) == 1:
            lit = lits[0]
            v = abs(lit) - 1
            if lit < 0:
                obj[v] = obj.get(v, 0) + weight
            else:
                obj[v] = obj.get(v, 0) - weight
                offset += weight
        else:
            # relax with a fresh variable: clause or relax-var must hold
            rv = num_vars + extra
            extra += 1
            soft_relax.append((weight, rv))
            coeff, base = {rv: 1}, 1
            for lit in lits:
                v = abs(lit) - 1
                if lit > 0:
                    coeff[v] = coeff.get(v, 0) + 1
                else:
                    coeff[v] = coeff.get(v, 0) - 1
                    base -= 1
            constraints.append((coeff, base))
    for weight, rv in soft_relax:
        obj[rv] = obj.get(rv, 0) + weight
    total_vars = num_vars + extra
    for r, (coeff, base) in enumerate(constraints):
        for v, a in coeff.items():
            rows.append(r)
            cols.append(v)
            vals.append(a)
        lbs.append(base)
    c = np.zeros(total_vars)
    for v, a in obj.items():
        c[v] = a
    A = csr_matrix((vals, (rows, cols)), shape=(len(constraints), total_vars))
    res = milp(
        c=c,
        constraints=LinearConstraint(A, np.array(lbs), np.inf),
        integrality=np.ones(total_vars),
        bounds=Bounds(0, 1),
        options={"mip_rel_gap": 0},
    )
    if res.status == 2:  # infeasible
        return None
    if res.status != 0:
        raise RuntimeError(f"HiGHS returned status {res.status}: {res.message}")
    x = np.round(res.x).astype(int)
    cost = int(round(res.fun + offset))
    return cost, [int(b) for b in x[:num_vars]]


def run_one(path):
    num_vars, hard, soft = parse_wcnf(path)
    out = solve(num_vars, hard, soft)
    if out is None:
        print("s UNSATISFIABLE")
        return
    cost, assignment = out
    print(f"o {cost}")
    print("s OPTIMUM FOUND")
    print("v " + "".join(str(b) for b in assignment))


def main(argv):
    if len(argv) == 3 and argv[1] == "--batch":
        with open(argv[2]) as fh:
            paths = [line.strip() for line in fh if line.strip()]
        for path in paths:
            print(f"c instance {path}")
            run_one(path)
            sys.stdout.flush()
        return 0
    if len(argv) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    run_one(argv[1])
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
