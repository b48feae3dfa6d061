# ---
# jupyter:
#   jupytext:
#     formats: py:light
# ---

# # Combs: antilinear operators with vanishing expectation
#
# An antilinear expectation pairs the conjugated amplitudes with themselves,
# `<psi| L |psi*>`, so it is bilinear rather than sesquilinear. Some operators
# give zero on every state. We call those combs and build everything else from
# them.

# +
import numpy as np

from tanglekit import comb
from tanglekit.qstate import make_rng, make_state, random_haar_state

rng = make_rng(0)
psi = random_haar_state(1, rng)
for s in "IXYZ":
    print(s, np.round(comb.bilinear_form(psi, s), 6))
# -

# Only `Y` gives zero. `I`, `X` and `Z` are symmetric matrices, while
# `sigma_y` is antisymmetric, and a bilinear form of an antisymmetric matrix
# vanishes identically.

# ## The order-2 comb
#
# Two copies of the state are paired through the diagonal metric
# `g = diag(-1, 1, 0, 1)`. The weighted sum of squared single-copy values
# cancels on every qubit state.

# +
for _ in range(3):
    psi = random_haar_state(1, rng)
    terms = [comb.bilinear_form(psi, m) for m in "IXZ"]
    print(np.round(terms, 4), "->", abs(comb.order2_comb_value(psi)))

print(comb.verify_comb_order2(trials=1000, seed=1))
# -

# ## Parity of sigma_y
#
# A tensor product of Pauli matrices is a comb exactly when it holds an odd
# number of `Y` factors. The verifier checks every string up to three qubits
# against random states and compares with that rule.

reports = comb.verify_parity_theorem(max_qubits=3, trials=500, seed=2)
print(len(reports), "strings,", sum(r.passed for r in reports), "combs,",
      "all consistent:", all(r.consistent for r in reports))

# The bilinear form is not invariant under a global phase, which is why
# only moduli are physically meaningful.

bell = make_state(2, [1, 0, 0, 1])
print(comb.bilinear_form(bell, "YY"), comb.bilinear_form(1j * bell, "YY"))
