"""ΩS over Λ(3,2,1) at X10 and X21, and why S X10 is X1.

Run: python3 demos/04_c5_omega_s.py
"""
import numpy as np

from heller.adjoint import AdjointContext, find_left_adjoint, omega_s_idempotency, stable_counts
from heller.catalog import get_catalog
from heller.cli import fmt_counts

cat = get_catalog("C5", 2)
ctx = AdjointContext(cat)
cert = find_left_adjoint(cat, context=ctx)
for row in omega_s_idempotency(cert):
    if row.label in ("X10", "X21"):
        print(f"{row.label}: S = {fmt_counts(cert.s_counts(row.label))}, ΩS = {fmt_counts(row.omega_s)}, "
              f"(ΩS)² = {fmt_counts(row.omega_s2)}")

# Ω X1 = X10 and Ω X3 = X21, so ΩS X10 = X10 ⊕ X21 would need S X10 = X1 ⊕ X3
for lab in ("X1", "X3"):
    print(f"Ω {lab} =", fmt_counts(stable_counts(ctx.omega(cat.index(lab)), cat)))

i10, i1, i3 = cat.index("X10"), cat.index("X1"), cat.index("X3")
print("dim stHom(X10, Ω-):", ctx.N_left[i10])
print("dim stHom(X1, -):  ", ctx.H[i1])
print("dim stHom(X3, -):  ", ctx.H[i3])
# a left adjoint value S X10 must satisfy dim stHom(S X10, -) = dim stHom(X10, Ω-)
print("X1 ⊕ X3 fits the dimensions:", np.array_equal(ctx.H[i1] + ctx.H[i3], ctx.N_left[i10]))

# X1 and X3 both fit; only the ε search can tell them apart
e = cert.entries["X10"]
print("accepted:", [fmt_counts(cert.s_counts("X10"))])
print("rejected:", [(fmt_counts({cat.labels[k]: c for k, c in enumerate(v) if c}), why) for v, why in e.rejected])
