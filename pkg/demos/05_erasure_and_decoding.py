#!/usr/bin/env python3
# Two uses of smoothing bounds: the erasure-channel route (divergence of a
# noisy code bounded by the dual's BEC conditional entropy) and the
# list-decoding error bound driven by ball-intersection energy.

from fractions import Fraction

from codesmooth import codes as cd
from codesmooth import decoding as dec
from codesmooth import erasure as er

# --- smoothing bounded through erasures ------------------------------------
code = cd.hamming(3)
print("hamming(3), Bernoulli noise vs dual-code erasure entropy:")
for delta in (0.05, 0.1, 0.2):
    for alpha in (1, 2, float("inf")):
        rep = er.smoothing_erasure_report(code, delta, alpha)
        print(f"  d={delta:4.2f} a={alpha}: {rep.line()}")

# the collision-count identity behind it
gamma = [0, 2, 3]
comp = [c for c in range(7) if c not in gamma]
lhs = er.collision_count(code, gamma)
rhs = Fraction(code.size, 1 << len(gamma)) * \
    er.collision_count(code.dual(), comp)
print(f"\nmatroid duality: F(G,0) = {lhs} = (|C|/2^|G|) F_dual(G^c,0) = {rhs}")

# exact conditional entropy of repetition(3) through its parity dual
parity3 = cd.parity(3)
print("\nH(X_rep3 | BEC output) = lambda^3:")
for lam in (0.25, 0.5, 0.75):
    val, _ = er.bec_conditional_entropy(er.ErasureContext(parity3, lam))
    print(f"  lambda={lam}: {val:.6f} (lambda^3 = {lam**3:.6f})")

# --- list decoding on the BSC ----------------------------------------------
rm = cd.reed_muller(1, 4)
dist = cd.distance_distribution(rm)
print(f"\nlist decoding {rm} at radius t=4:")
print(f"{'delta':>6} {'bound':>10} {'mc estimate':>12}")
for delta in (0.01, 0.03, 0.05):
    bound = dec.list_error_bound(dist, Fraction(delta), 1, 4)
    est, sigma = dec.mc_decoding_error(rm, delta, 1, 4, 50_000, seed=0)
    print(f"{delta:6.2f} {bound.total:10.5f} {est:9.5f}±{3*sigma:.5f}")
    assert est - 3 * sigma <= bound.total
