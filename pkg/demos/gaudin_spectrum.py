"""Bethe vectors as eigenvectors of the Gaudin Hamiltonians.

Four copies of the sl_2 defining representation at random points; the
weight-zero singular space is two dimensional and both eigenvectors come
from critical points with two variables.
"""
import numpy as np

from bethenorm import RootSystemA, SolverOptions, bethe_vector, fundamental_weight, gaudin_apply, solve_all

sl2 = RootSystemA(1)
w = fundamental_weight(sl2, 1)
res = solve_all(sl2, (w,) * 4, (2,), opts=SolverOptions(seed=1))
z = res.z
print("z =", np.round(np.array(z, dtype=complex), 4))

for cp in res:
    V, v = bethe_vector(cp.problem, cp.t)
    flat = v.to_complex().flat()
    k = int(np.argmax(abs(flat)))
    eig = []
    for s in range(4):
        Kv = gaudin_apply(V, z, s, v).to_complex().flat()
        c = Kv[k] / flat[k]
        eig.append(c)
        assert np.allclose(Kv, c * flat, atol=1e-9 * np.linalg.norm(flat))
    print("eigenvalues:", np.round(eig, 6), " sum:", f"{abs(sum(eig)):.1e}")
