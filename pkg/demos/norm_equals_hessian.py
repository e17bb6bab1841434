"""Solve the Bethe equations for a small sl_3 problem and compare the
Shapovalov norm of each Bethe vector with the Hessian of log(master function).

    python demos/norm_equals_hessian.py
"""
from bethenorm import RootSystemA, SolverOptions, fundamental_weight, solve_all, verify_bethe

sl3 = RootSystemA(2)
w1, w2 = fundamental_weight(sl3, 1), fundamental_weight(sl3, 2)
weights = (w1, w1, w2, w1)
l = (2, 1)

res = solve_all(sl3, weights, l, opts=SolverOptions(seed=4))
print(f"{len(res)} orbits, multiplicity {res.expected}")
for cp in res:
    rep = verify_bethe(cp.problem, cp)
    print("t =", ", ".join(f"{complex(x):.6f}" for x in cp.canonical))
    print(f"   S(w, w)  = {complex(rep.norm):.10g}")
    print(f"   Hessian  = {complex(rep.hessian_det):.10g}")
    print(f"   |ratio-1| = {abs(rep.ratio - 1):.2e}, singular: {rep.is_singular}")
