# ---
# jupyter:
#   jupytext:
#     formats: py:light
# ---

# # Three qubits: the 3-tangle
#
# Two order-2 filters on three qubits give the same modulus. It matches four
# times the modulus of the Cayley hyperdeterminant, written out below as
# `d1 - 2 d2 + 4 d3`.

# +
from tanglekit import filters, monotones
from tanglekit.qstate import catalog_state, make_rng, random_haar_state, random_product_state

for name in ("GHZ3", "W3"):
    psi = catalog_state(name)
    print(name, monotones.tau3_filter(psi, "F3_1"), monotones.tau3_poly(psi))

print(monotones.tau3_terms(catalog_state("GHZ3")))
# -

# On random states the three routes agree to round-off.

rng = make_rng(5)
worst = 0.0
for _ in range(200):
    psi = random_haar_state(3, rng)
    a = monotones.tau3_filter(psi, "F3_1")
    worst = max(worst, abs(a - monotones.tau3_filter(psi, "F3_2")), abs(a - monotones.tau3_poly(psi)))
print("largest disagreement", worst)

# A state that factorizes across any cut is annihilated.

print(monotones.tau3_poly(random_product_state([[0], [1, 2]], seed=6)))
print(filters.nullity_suite(filters.builtin("F3_1"), trials=200, seed=7).per_partition)
