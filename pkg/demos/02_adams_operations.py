"""Adams operations from the Newton recurrence, and the laws they obey."""

from lambdagenus.lambda_ring import (
    BinomialZ,
    CorruptedRing,
    LineSumRing,
    adams,
    check_adams_properties,
    newton_adams_formula,
)

for k in range(1, 5):
    print(f"psi^{k} = {newton_adams_formula(k).to_text()}")

# On a sum of line elements psi^k is the k-th power sum.
R = LineSumRing(k=3, D=6)
x = R.line_sum()
print("\npsi^2(x0 + x1 + x2) =", adams(R, 2, x).to_text())
print("psi^3(x0 + x1 + x2) =", adams(R, 3, x).to_text())

# In the binomial ring every psi^k is the identity.
Z = BinomialZ()
print("\npsi^5 on -4..4 in BinomialZ:", [adams(Z, 5, n) for n in range(-4, 5)])

# Sampled checks: composition, additivity, multiplicativity, Frobenius mod p.
for ring in (Z, R, CorruptedRing(Z)):
    rep = check_adams_properties(ring, samples=20, seed=1)
    print(f"\n{rep.instance}: {'all checks pass' if rep.passed else 'FAILS'}")
    for name, res in sorted(rep.results.items()):
        line = f"  {name:22s} {res.status:5s} ({res.checked} cases)"
        if res.counterexample:
            line += f" e.g. {res.counterexample}"
        print(line)
