"""Searching for Adams-compatible isomorphisms between genus models.

Two models admit a ψ-intertwining isomorphism on the KO side exactly when
a(X) = ±a(Y) mod 24, and on the K side at p exactly when the signs (X/p)
and (Y/p) agree.  Together these recover Rector's invariants.
"""

from lambdagenus.classifier import compare, ko_equivalent, kp_scan, theorem_reproduction
from lambdagenus.genus import ALLOWED_RESIDUES, bs3

print("KO table (rows aX, columns aY; '+' means an intertwiner was found):")
print("      " + " ".join(f"{a:3d}" for a in ALLOWED_RESIDUES))
for aX in ALLOWED_RESIDUES:
    row = ["  +" if ko_equivalent(aX, aY, 10).equivalent else "  ." for aY in ALLOWED_RESIDUES]
    print(f"  {aX:3d} " + " ".join(row))

v = ko_equivalent(1, 23)
print("\nWitness for a = 1 vs a = 23:", v.witness.to_json())
print("Certificate for a = 1 vs a = 5:", ko_equivalent(1, 5).to_json()["certificate"])

print("\nK side at p = 5, exhaustive over all normalized candidates mod 25:")
for sX, sY in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
    r = kp_scan(5, sX, sY, stop_at_first=False)
    print(f"  signs ({sX:+d}, {sY:+d}): intertwiner {'found' if r.exists else 'none'} "
          f"after {r.scanned} candidates")

rep = theorem_reproduction(primes=(3, 5, 7))
print(f"\nFull reproduction over primes {rep.primes}: {rep.pairs_checked} genus pairs, "
      f"{len(rep.mismatches)} mismatches, passed = {rep.passed}")

X = bs3()
print("\nBS^3 vs itself:", compare(X, X))
print("BS^3 vs BS^3 with (X/13) flipped:", compare(X, X.with_sign(13, -1)))
