# ---
# jupyter:
#   jupytext:
#     formats: py:light
# ---

# # Two qubits: concurrence from a filter
#
# The modulus of `<Y Y>` is the pure-state concurrence. The order-2 filter
# `(#m,#n)•(#m,#n)` contracts two copies through the metric and returns its
# square.

# +
import numpy as np

from tanglekit import filters, monotones
from tanglekit.qstate import catalog_state, density_matrix, make_rng, random_haar_state

f21, f22 = filters.builtin("F2_1"), filters.builtin("F2_2")
bell = catalog_state("BELL")
print(filters.evaluate(f21, bell).modulus, filters.evaluate(f22, bell).modulus)

rng = make_rng(3)
psi = random_haar_state(2, rng)
c = monotones.concurrence_pure(psi)
print(c, c**2, filters.evaluate(f22, psi).modulus)
# -

# ## Mixed states
#
# For a density matrix the concurrence comes from the spectrum of
# `R = sqrt(sqrt(rho) Yt rho* Yt sqrt(rho))` with `Yt = Y x Y`. A Werner
# family shows the threshold at `p = 1/3`.

bell_rho = density_matrix(bell).matrix
for p in np.linspace(0, 1, 6):
    rho = p * bell_rho + (1 - p) * np.eye(4) / 4
    print(f"p={p:.1f}  C={monotones.wootters_concurrence(rho):.4f}")

# ## The R^2 construction
#
# The second-order operator built from metric-contracted Pauli pairs reduces,
# on pure states, to a multiple of the projector with trace `9 C^4`.

psi = random_haar_state(2, rng)
r2 = monotones.build_R2(density_matrix(psi))
print(np.trace(r2).real, 9 * monotones.concurrence_pure(psi) ** 4)
