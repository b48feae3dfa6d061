"""Slow, independent reference computations used only by the tests.

Nothing here imports the contraction or bilinear-form code of the package;
operators are built as explicit Kronecker products and every sum is
written out.
"""

import itertools
from functools import reduce

import numpy as np

SIGMA = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]
G = np.diag([-1.0, 1.0, 0.0, 1.0])


def kron_all(mats):
    return reduce(np.kron, mats, np.eye(1, dtype=complex))


def pauli_operator(s):
    return kron_all([SIGMA[m] for m in s])


def bilinear(psi, s):
    """<psi| op |psi*> with the full 2^N x 2^N operator."""
    return psi.conj() @ pauli_operator(s) @ psi.conj()


def brute_force_filter(spec, psi):
    """Sum over all 4^L label values, including mu=2 with metric weight 0.

    Labels are taken from the filter as given; each is summed once with the
    weight G[mu, mu].
    """
    labels = sorted({s for f in spec.factors for s in f if isinstance(s, str)})
    cache = {}
    total = 0j
    for values in itertools.product(range(4), repeat=len(labels)):
        env = dict(zip(labels, values))
        weight = 1.0
        for v in values:
            weight *= G[v, v]
        term = weight
        for f in spec.factors:
            s = tuple(env[x] if isinstance(x, str) else x for x in f)
            if s not in cache:
                cache[s] = bilinear(psi, s)
            term = term * cache[s]
        total += term
    return spec.prefactor * total


def partial_trace_loops(rho, n, keep):
    """Reduced matrix by explicit summation over traced-out basis bits."""
    keep = sorted(keep)
    drop = [q for q in range(n) if q not in keep]
    k = len(keep)
    out = np.zeros((2**k, 2**k), dtype=complex)

    def index(kept_bits, dropped_bits):
        bits = [0] * n
        for q, b in zip(keep, kept_bits):
            bits[q] = b
        for q, b in zip(drop, dropped_bits):
            bits[q] = b
        return int("".join(map(str, bits)), 2)

    for a in itertools.product((0, 1), repeat=k):
        for b in itertools.product((0, 1), repeat=k):
            for e in itertools.product((0, 1), repeat=len(drop)):
                ia = int("".join(map(str, a)), 2) if k else 0
                ib = int("".join(map(str, b)), 2) if k else 0
                out[ia, ib] += rho[index(a, e), index(b, e)]
    return out


def sqrtm_psd(m):
    w, v = np.linalg.eigh(m)
    return v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def wootters_textbook(rho):
    """max(0, l1 - l2 - l3 - l4), l_i = sqrt(eig(R)) from the explicit R."""
    yy = np.kron(SIGMA[2], SIGMA[2])
    s = sqrtm_psd(rho)
    r = s @ yy @ rho.conj() @ yy @ s
    lam = np.sort(np.clip(np.linalg.eigvalsh((r + r.conj().T) / 2), 0, None))[::-1]
    l = np.sqrt(lam)
    return max(0.0, l[0] - l[1] - l[2] - l[3])


def random_amplitudes(rng, n):
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return v / np.linalg.norm(v)
