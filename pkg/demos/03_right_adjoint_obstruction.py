"""No right adjoint of Ω over Λ(2,2,2): the equation H U = H′ has no
nonnegative integer solution.

Run: python3 demos/03_right_adjoint_obstruction.py
"""
from heller.adjoint import right_adjoint_obstruction
from heller.catalog import get_catalog

cat = get_catalog("C3", 3)
rep = right_adjoint_obstruction(cat)

print("H = dim stHom(X_r, X_k)")
print(rep.H.entries)
print("H′ = dim stHom(ΩX_r, X_k)")
print(rep.H_prime.entries)

# a right adjoint T would give H[:, T X_k] = H′[:, k], i.e. H U = H′, U >= 0
print("feasible:", rep.feasible)
print(rep.trace(cat.labels))
