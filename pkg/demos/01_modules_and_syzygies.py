"""Modules over a triangle algebra, their syzygies, and stable Hom.

Run: python3 demos/01_modules_and_syzygies.py
"""
from heller.algebra import builtin_algebra
from heller.catalog import get_catalog
from heller.krull_schmidt import identify
from heller.modules import direct_sum, module_from_pair
from heller.projectives import indecomposable_projectives, syzygy
from heller.stable import stable_hom

alg = builtin_algebra("A", 2)  # Λ(3,3,3) over F_2
print(alg.name, "dim", alg.dim)

P1, P2 = indecomposable_projectives(alg)
print("projectives:", P1.dim, P2.dim)

# a module is an R-linear map a: M_e -> M_f between sums of R/π^λ
x = module_from_pair(alg, [2], [3], [["pi"]], "M")
print("M has dimension vector", x.dim_vector)

cat = get_catalog("A", 2)
labelled = cat.with_projectives()
print("M =", {k: v for k, v in identify(x, labelled).items() if v})

# Ω is the kernel of the projective cover
pres = syzygy(x)
print("cover tops", pres.tops, "Ω(M) dim", pres.omega.dim)
print("Ω(M) =", {k: v for k, v in identify(pres.omega, labelled).items() if v})

# Ω of a direct sum, summand by summand
both = direct_sum([cat["X2"], cat["X5"]], alg).module
print("Ω(X2 ⊕ X5) =", {k: v for k, v in identify(syzygy(both).omega, labelled).items() if v})

# Hom = stable part + maps through the cover of the target
sh = stable_hom(cat["X16"], cat["X2"])
print("Hom(X16, X2):", sh.total.dim, "=", sh.dim, "stable +", sh.proj_dim, "projective")
