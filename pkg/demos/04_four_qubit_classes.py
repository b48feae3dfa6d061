# ---
# jupyter:
#   jupytext:
#     formats: py:light
# ---

# # Four qubits: filter signatures and SLOCC classes
#
# Three four-qubit filters of orders 3, 4 and 6 are invariant under local
# determinant-one operations. Whether each one is zero therefore cannot change
# under SLOCC. This gives a witness that two states are inequivalent.

# +
import itertools

import numpy as np

from tanglekit import filters, slocc
from tanglekit.monotones import wootters_concurrence
from tanglekit.qstate import catalog_state, density_matrix, partial_trace

for name in ("GHZ4", "PHI2", "PHI3", "W4"):
    sig = slocc.classify4(catalog_state(name))
    print(f"{name:5s}", np.round(sig.values, 6), sig.label)
# -

# All three reference states look identical locally: every one-qubit marginal
# is maximally mixed and no pair of qubits carries concurrence.

for name in ("GHZ4", "PHI2", "PHI3"):
    rho = density_matrix(catalog_state(name))
    pairs = max(wootters_concurrence(partial_trace(rho, p)) for p in itertools.combinations(range(4), 2))
    single = max(np.abs(partial_trace(rho, [q]).matrix - np.eye(2) / 2).max() for q in range(4))
    print(name, "single-qubit deviation", single, "pair concurrence", pairs)

# The signatures still tell them apart.

sigs = {n: slocc.classify4(catalog_state(n)) for n in ("GHZ4", "PHI2", "PHI3")}
for a, b in itertools.combinations(sigs, 2):
    print(a, b, slocc.separating_filters(sigs[a], sigs[b]))

# ## Invariance in practice
#
# Complex filter values on the unrenormalized image are unchanged by SL(2,C)
# tuples. Unitary tuples preserve the modulus of normalized states.

psi = catalog_state("PHI2")
for name in ("F4_1", "F4_2", "F4_3"):
    f = filters.builtin(name)
    sl = slocc.invariance_check(f, psi, "SL", trials=50, seed=1)
    su = slocc.invariance_check(f, psi, "SU", trials=50, seed=2)
    print(name, f"SL {sl.max_deviation:.1e}", f"SU {su.max_deviation:.1e}")

# Renormalizing after a non-unitary tuple divides an order-n value by
# `|psi'|^(2n)`. For the order-6 filter that factor can be tiny, so a fixed
# zero threshold on renormalized states is only reliable for mild tuples.

ops = slocc.random_local_ops(4, "SL", seed=4)
moved = slocc.apply_local(catalog_state("PHI3"), ops)
print("norm", moved.norm(), "signature", slocc.classify4(moved.normalized()).values)
