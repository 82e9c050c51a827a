"""Tour of the Legendre basis layer.

Shows the pdf-weighted orthogonality of the basis, the closed-form norms,
the quadrature rules used for all inner products, and the multi-index sets
for two random variables.
"""

import numpy as np

from pcshaper import (
    Truncation,
    basis_norm_sq,
    gauss_legendre,
    inner_triple,
    legendre_eval,
    make_basis,
)

print("Legendre polynomials on [-1, 1], weighted by the uniform pdf f = 1/2")
print()

zeta = 0.5
for n in range(5):
    print(f"  P_{n}({zeta}) = {legendre_eval(n, zeta):+.6f}   "
          f"<P_{n}^2> = {basis_norm_sq(n):.6f} (= 1/{2 * n + 1})")

print()
print("Orthogonality check by quadrature (degrees up to 8):")
rule = gauss_legendre(9)
worst = 0.0
for i in range(9):
    for j in range(i + 1, 9):
        vals = legendre_eval(i, rule.nodes) * legendre_eval(j, rule.nodes)
        worst = max(worst, abs(rule.integrate(vals)))
print(f"  max |<P_i P_j>| over i != j: {worst:.2e}")

print()
print("Triple products feeding the Galerkin projection:")
for i, j, k in [(0, 0, 0), (1, 1, 2), (2, 2, 2), (1, 2, 3)]:
    print(f"  <P_{i} P_{j} P_{k}> = {inner_triple(i, j, k):+.10f}")
print("  (zero whenever the degree sum is odd or the triangle rule fails)")

print()
print("Two-variable index sets for max degree 3:")
total = make_basis(2, 3, Truncation.TOTAL_DEGREE)
tensor = make_basis(2, 3, Truncation.TENSOR_PRODUCT)
print(f"  total-degree   ({total.size} terms): {list(total.index_set)}")
print(f"  tensor-product ({tensor.size} terms)")

print()
print("Quadrature exactness: 5-node rule vs analytic uniform moments")
rule = gauss_legendre(5)
for k in (2, 4, 6, 8):
    approx = rule.integrate(rule.nodes**k)
    print(f"  E[zeta^{k}] = {approx:.15f}  (exact {1 / (k + 1):.15f})")
