"""
Forelli-Rudin integrals and Carleson measures
=============================================

``I(z) = int (1-|w|^2)^s / |1 - <z, w>|^{n+1+s+t} dv(w)`` depends only on
``|z|``.  Near the sphere it stays bounded for ``t < 0``, grows like
``-log(1-|z|^2)`` for ``t = 0`` and like ``(1-|z|^2)^{-t}`` for ``t > 0``.
"""

import math

import numpy as np

from ballspaces.carleson import ProbeGrid, berezin_sup, carleson_constant, forelli_rudin, random_measure

# %%
# Growth near the sphere
# ----------------------

rhos = [0.9, 0.95, 0.99, 0.995, 0.999]
x = [-math.log(1 - r * r) for r in rhos]
for t in (-0.5, 0.0, 1.0, 2.5):
    vals = [forelli_rudin(r, -0.9 if t > 0 else 0.0, t).value for r in rhos]
    slope = np.polyfit(x, np.log(vals), 1)[0]
    print(f"t={t:5}  I(0.999)={vals[-1]:.4g}  fitted slope={slope:.3f}")

# %%
# Carleson constant against the Berezin transform
# -----------------------------------------------
# For a discrete measure, ``mu(Q_r(zeta)) / r^{n+1+alpha}`` is bounded by
# ``2^{n+1+alpha+s}`` times the supremum of the Berezin transform.

rng = np.random.default_rng(3)
mu = random_measure(1, 40, rng)
grid = ProbeGrid.default(1, seed=3).with_atoms(mu)
C = carleson_constant(mu, 0.0, grid)
B = berezin_sup(mu, 1.0, 0.0, grid)
print(f"carleson {C:.4g} <= {2 ** 3 * B:.4g}")
