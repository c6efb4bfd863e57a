"""Search for the left adjoint S of Ω on a catalog and check (ΩS)² ≅ ΩS.

Run: python3 demos/02_left_adjoint.py [ALGEBRA] [PRIME]
"""
import sys

from heller.adjoint import find_left_adjoint, omega_s_idempotency
from heller.catalog import get_catalog
from heller.cli import fmt_counts

name = sys.argv[1] if len(sys.argv) > 1 else "A"
p = int(sys.argv[2]) if len(sys.argv) > 2 else 2

cat = get_catalog(name, p)
cert = find_left_adjoint(cat)
print(f"{name} over F_{p}: {len(cat)} objects, search ok = {cert.ok}")

# dimension bookkeeping fixes the candidate multiset; ε confirms it
rows = omega_s_idempotency(cert)
for row in rows:
    s = fmt_counts(cert.s_counts(row.label))
    flag = "" if row.idempotent else "   <- (ΩS)² differs"
    print(f"{row.label:>4}  S = {s:<22} ΩS = {fmt_counts(row.omega_s)}{flag}")

# the certificate is plain JSON
doc = cert.to_json()
print("certificate entries:", len(doc["entries"]))
