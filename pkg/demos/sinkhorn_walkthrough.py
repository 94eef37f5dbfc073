"""Step through the Sinkhorn reduction of one random qubit channel.

    python3 demos/sinkhorn_walkthrough.py [seed]
"""
import sys

import numpy as np

from robustent.channels import canonical_form, ptm_from_kraus, ptm_of_operator
from robustent.sinkhorn import (
    decompose,
    fixed_point_data,
    fixed_point_root,
    iterate_fixed_point,
    quartic_coefficients,
    reduced_unital_matrix,
    scaling_operators,
)

np.set_printoptions(precision=5, suppress=True)

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
rng = np.random.default_rng(seed)
g = rng.normal(size=(8, 2)) + 1j * rng.normal(size=(8, 2))
v, _ = np.linalg.qr(g)
m = ptm_from_kraus(v.reshape(4, 2, 2))
print("transfer matrix M:\n", m)

# 1. rotate to canonical form: diagonal lambda, shift t
c, q_out, q_in = canonical_form(m)
print("canonical lambda", np.array(c.lam), " shift", np.array(c.shift))

# 2. the fixed point S of the scaling map comes from the largest admissible quartic root
q = quartic_coefficients(c)
y = fixed_point_root(c)
print(f"quartic y^4 + {q.b:.4f} y^3 + {q.c:.4f} y^2 + {q.d:.4f} y + {q.e:.6f}")
print(f"selected root y = {y:.12f}, quartic residual {q(y):.1e}")
f = fixed_point_data(c, y)
print("x =", np.array(f.x), " |x| =", round(f.x_norm, 6))

# 3. scaling operators and the unital part
a, b = scaling_operators(c, f)
print("reduced unital block:\n", reduced_unital_matrix(c, f))
scaled = ptm_of_operator(a) @ c.ptm() @ ptm_of_operator(b)
print("first row / column of PTM(A) M PTM(B):", scaled[0], scaled[:, 0])

# 4. the full pipeline and the plain fixed-point iteration agree
r = decompose(m)
print("lambda~ =", np.array(r.lambda_tilde), " residual", f"{r.residual:.1e}")
print("iteration S:\n", iterate_fixed_point(m))
