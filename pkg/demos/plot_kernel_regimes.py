"""
Reproducing kernels in four regimes
===================================

The Hilbert space ``A^2_alpha`` has a reproducing kernel for every real
``alpha``.  Its shape depends on ``c = n + 1 + alpha``: a negative power of
``1 - <z, w>`` when ``c > 0``, a logarithm when ``c = 0``, and a polynomial
correction plus power or logarithm when ``c < 0``.
"""

import numpy as np

from ballspaces.kernels import KernelSpec, inner_product, kernel_eval, orthonormal_basis, reproduce_check
from ballspaces.series import random_polynomial

rng = np.random.default_rng(1)

# %%
# Regimes for the disk
# --------------------
# ``kernel_regime`` sorts ``alpha`` into one of the four cases.  For the two
# negative cases the integer ``N`` also fixes the polynomial part ``Q``.

for alpha in (0.0, -1.5, -2.0, -3.5, -4.0):
    spec = KernelSpec.make(1, alpha)
    print(f"alpha={alpha:5}  regime={spec.regime}  K(0.5, 0.5)={kernel_eval(spec, (0.5,), (0.5,)).real:.6f}")

# %%
# Orthonormal bases
# -----------------
# Each basis is made of scaled monomials.  The Gram matrix under the regime
# inner product is the identity.

spec = KernelSpec.make(2, -3.0)
basis = orthonormal_basis(spec, 4)
G = np.array([[inner_product(f, g, spec) for g in basis] for f in basis])
print("basis size", len(basis), "max |G - I| =", np.abs(G - np.eye(len(basis))).max())

# %%
# Reproducing property
# --------------------
# ``<f, K(., w)> = f(w)`` for a random polynomial and a point inside the ball.
# The kernel is truncated at degree 60.

f = random_polynomial(rng, 2, 6)
w = (0.3 + 0.1j, -0.2j)
for alpha in (0.0, -3.0, -3.5, -4.0):
    print(f"alpha={alpha:5}  residual={reproduce_check(f, KernelSpec.make(2, alpha), w, 60):.2e}")
