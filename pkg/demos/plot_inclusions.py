"""
Inclusions between weighted Bergman spaces
==========================================

Two rules decide whether ``A^p_alpha`` sits inside ``A^q_beta``.  For
``p <= q`` compare ``(n+1+alpha)/p`` with ``(n+1+beta)/q``.  For ``q < p``
compare ``(1+alpha)/p`` with ``(1+beta)/q``.  When the inclusion fails on the
disk, an explicit function shows it.
"""

from ballspaces.norms import SpaceParams
from ballspaces.structure import classification_csv, classify_pairs, find_witness, lipschitz_stretch

# %%
# A small table
# -------------

spaces = [(0.5, -1.0), (1.0, 0.0), (2.0, -3.0), (2.0, 1.0)]
rows = classify_pairs([(a, b) for a in spaces for b in spaces], n=1)
print(classification_csv(rows))

# %%
# Witnesses
# ---------
# ``(1, 0)`` and ``(2, 1)`` are not comparable.  Each direction gets its own
# witness, and the membership tests confirm that each one separates the spaces.

for src, dst in (((1.0, 0.0), (2.0, 1.0)), ((2.0, 1.0), (1.0, 0.0))):
    w = find_witness(src, dst)
    print(w.id, "in source:", w.member(SpaceParams(1, *src)), "in target:", w.member(SpaceParams(1, *dst)))

# %%
# Lipschitz sandwich
# ------------------
# ``A^p_alpha`` lies between the growth spaces with indices ``-(1+alpha)/p``
# and ``-(n+1+alpha)/p``.  Its stretch is ``1/p``.

for p, alpha in spaces:
    print((p, alpha), lipschitz_stretch(p, alpha, 1).as_tuple())
