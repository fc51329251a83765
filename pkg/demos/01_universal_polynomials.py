"""How λ of a product is forced by λ of the factors.

Write r and s as sums of line elements.  Then λ^n(rs) is symmetric in the
lines of r and, separately, in the lines of s, so it is a polynomial in
the λ^i(r) and λ^j(s).  This script prints those polynomials and checks
them two ways.
"""

from lambdagenus.lambda_ring import binomial
from lambdagenus.symfun import splitting_oracle_check, universal_compose, universal_product

print("Universal product polynomials P_n(Lr; Ls) with λ^n(rs) = P_n:")
for n in range(1, 4):
    up = universal_product(n)
    print(f"  P_{n} = {up.to_text()}")

print("\nUniversal composition polynomials P_{n,m}(Lr) with λ^n(λ^m r) = P_{n,m}:")
for n, m in [(1, 3), (2, 2), (2, 3), (3, 2)]:
    print(f"  P_{n},{m} = {universal_compose(n, m).to_text()}")

# Check 1: substitute elementary symmetric polynomials back in and compare
# with the direct expansion of the product over k and l line elements.
up = universal_product(3)
print("\nP_3 agrees with the line-element expansion at (k, l) = (3, 3):",
      splitting_oracle_check(up, 3, 3))
print("... and at (4, 5):", splitting_oracle_check(up, 4, 5))
print("A copy with one sign flipped passes?", splitting_oracle_check(up.corrupted(), 3, 3))

# Check 2: the integers with λ^i(r) = C(r, i) are a λ-ring, so
# C(rs, n) must equal P_n evaluated at binomial coefficients.
r, s, n = 7, -3, 3
up = universal_product(n)
binding = {i: binomial(r, i + 1) for i in range(n)}
binding.update({n + j: binomial(s, j + 1) for j in range(n)})
value = up.expr.poly.substitute(binding).constant_term()
print(f"\nOn integers: P_3 at r={r}, s={s} gives {value}; C({r * s}, 3) = {binomial(r * s, 3)}")
