"""The truncated KO and K models attached to a space in the genus of BS^3."""

from lambdagenus.genus import (
    BR_X2,
    XI_X,
    KModel,
    KOModel,
    bs3,
    canonicalize,
    k_text,
    ko_text,
    orientation_flip,
    psi_p_K,
    rector_pair,
    representative_shift,
)

M = KOModel(1)
print("KO side, a = 1")
print("  psi^2(xi x)    =", ko_text(M.psi2(XI_X)))
print("  psi^2(bR x^2)  =", ko_text(M.psi2(BR_X2)))

# The integer a is only defined up to the choice of generator x.
for m in (1, -2):
    print(f"  x -> x {m:+d} xi x^2 turns a = 1 into a = {representative_shift(M, m).a}")
print("  x -> -x turns a = 7 into a =", orientation_flip(KOModel(7)).a)

print("\n(X/2), (X/3) read off from a mod 24:")
for a in (1, 5, 7, 11, 13, 23):
    print(f"  a = {a:2d}: {rector_pair(a)}")

print("\nK side: psi^p(t) modulo p^2 and the filtration quotient")
for p, s in [(3, 1), (3, -1), (5, 1), (7, -1)]:
    N = KModel(p, s)
    print(f"  p = {p}, (X/p) = {s:+d}: psi^p(t) = {k_text(psi_p_K(N, 1))}  (coefficients mod {p * p})")

pt = canonicalize(19, {p: 1 for p in (5, 7, 11, 13)}, 13).with_sign(7, -1)
print("\nA genus point:", pt.dumps())
print("BS^3 itself:  ", bs3(13).dumps())
