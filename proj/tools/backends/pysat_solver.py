#!/usr/bin/env python3
"""DIMACS in, s/v lines out, using the Minisat22 binding from python-sat.

With --batch FILE, FILE holds several DIMACS problems back to back (each
starting at its "p cnf" line); one SAT/UNSAT verdict is printed per problem.
"""
import sys

from pysat.formula import CNF
from pysat.solvers import Minisat22


def solve_one(path: str) -> int:
    cnf = CNF(from_file=path)
    with Minisat22(bootstrap_with=cnf.clauses) as s:
        if not s.solve():
            print("s UNSATISFIABLE")
            return 20
        model = s.get_model() or []
    seen = {abs(l) for l in model}
    lits = list(model) + [-v for v in range(1, cnf.nv + 1) if v not in seen]
    lits.sort(key=abs)
    print("s SATISFIABLE")
    print("v " + " ".join(str(l) for l in lits) + " 0")
    return 10


def batch(path: str) -> int:
    clauses = None

    def flush():
        if clauses is None:
            return
        with Minisat22(bootstrap_with=clauses) as s:
            print("SAT" if s.solve() else "UNSAT")

    cur = []
    with open(path) as f:
        for line in f:
            if line.startswith("p cnf"):
                flush()
                clauses = []
                continue
            if line.startswith("c") or not line.strip():
                continue
            for tok in line.split():
                v = int(tok)
                if v == 0:
                    clauses.append(cur)
                    cur = []
                else:
                    cur.append(v)
    flush()
    return 0


def main() -> int:
    if len(sys.argv) == 3 and sys.argv[1] == "--batch":
        return batch(sys.argv[2])
    if len(sys.argv) != 2:
        print("usage: pysat_solver.py FILE.cnf | --batch FILE", file=sys.stderr)
        return 1
    return solve_one(sys.argv[1])


if __name__ == "__main__":
    sys.exit(main())
