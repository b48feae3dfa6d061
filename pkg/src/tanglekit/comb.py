"""Pauli algebra and the antilinear expectation value <L>_C.

``<L>_C = <psi| L |psi*>`` where ``|psi*>`` conjugates the amplitudes in
the computational basis. The value is bilinear in the conjugated
amplitudes: ``sum_ij conj(psi_i) L_ij conj(psi_j)``.

Two single-qubit combs are provided: ``sigma_y`` (order 1) and the
metric-contracted pair ``sigma_mu . sigma^mu`` (order 2) with weights
``g = diag(-1, 1, 0, 1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DimensionError
from .qstate import PureState, _haar_amplitudes, make_rng, require_normalized

__all__ = [
    "CONTRACTED",
    "METRIC",
    "PAULI",
    "CombReport",
    "as_pauli_string",
    "bilinear_form",
    "order2_comb_value",
    "all_pauli_strings",
    "verify_parity_theorem",
    "parity_is_comb",
    "pauli_label",
    "pauli_matrix",
    "verify_comb_order1",
    "verify_comb_order2",
]

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
PAULI.setflags(write=False)

# diagonal of the contraction metric; sigma_y carries weight zero
METRIC = np.array([-1.0, 1.0, 0.0, 1.0])
METRIC.setflags(write=False)
# indices with nonzero metric weight, the only ones a contraction visits
CONTRACTED = (0, 1, 3)

_LETTERS = "IXYZ"

PauliLike = Union[str, Sequence[int]]


def pauli_matrix(mu: int) -> np.ndarray:
    """sigma_mu for mu in {0, 1, 2, 3} (identity, x, y, z)."""
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {mu!r}")
    return PAULI[mu].copy()


def pauli_label(s: Sequence[int]) -> str:
    return "".join(_LETTERS[m] for m in s)


def as_pauli_string(s: PauliLike) -> tuple[int, ...]:
    """Normalize ``"XYZ"`` or ``[1, 2, 3]`` to a tuple of Pauli indices."""
    if isinstance(s, str):
        try:
            out = tuple(_LETTERS.index(c) for c in s.upper())
        except ValueError:
            raise ValueError(f"bad Pauli string {s!r}; use letters I, X, Y, Z") from None
    else:
        out = tuple(int(m) for m in s)
        if any(m not in (0, 1, 2, 3) for m in out):
            raise ValueError(f"Pauli indices must be 0..3, got {out}")
    if not out:
        raise ValueError("empty Pauli string")
    return out


def _apply_paulis(t: np.ndarray, slots: Sequence[int]) -> np.ndarray:
    """Apply sigma_{slots[k]} to qubit axis k of ``t`` (leading axis = batch)."""
    for k, mu in enumerate(slots):
        if mu == 0:
            continue
        ax = k + 1
        t = np.moveaxis(np.tensordot(t, PAULI[mu], axes=([ax], [1])), -1, ax)
    return t


def _bilinear(amps: np.ndarray, slots: Sequence[int]) -> np.ndarray:
    """Batched <sigma_slots>_C for amplitude rows ``amps`` of shape (B, 2**n)."""
    n = len(slots)
    conj = amps.conj().reshape((-1,) + (2,) * n)
    applied = _apply_paulis(conj, slots)
    return np.sum((conj * applied).reshape(conj.shape[0], -1), axis=1)


def bilinear_form(state: PureState, s: PauliLike, allow_unnormalized: bool = False) -> complex:
    """<psi| sigma_{s_1} x ... x sigma_{s_N} |psi*>.

    Args:
        state: the N-qubit state.
        s: Pauli string of length N, as letters or indices.
        allow_unnormalized: skip the normalization check, e.g. for
            homogeneity tests.
    """
    s = as_pauli_string(s)
    if len(s) != state.n_qubits:
        raise DimensionError(f"Pauli string of width {len(s)} on {state.n_qubits} qubits")
    if not allow_unnormalized:
        require_normalized(state)
    return complex(_bilinear(state.amplitudes[None, :], s)[0])


def parity_is_comb(s: PauliLike) -> bool:
    """A Pauli product is a comb iff it holds an odd number of sigma_y."""
    return as_pauli_string(s).count(2) % 2 == 1


def order2_comb_value(state: PureState) -> complex:
    """sum_mu g^{mu mu} <sigma_mu>_C^2 for a single qubit; identically zero."""
    if state.n_qubits != 1:
        raise DimensionError("the order-2 comb acts on one qubit")
    require_normalized(state)
    return complex(_order2_batch(state.amplitudes[None, :])[0])


def _order2_batch(amps: np.ndarray) -> np.ndarray:
    total = np.zeros(amps.shape[0], dtype=np.complex128)
    for mu in CONTRACTED:
        total += METRIC[mu] * _bilinear(amps, (mu,)) ** 2
    return total


@dataclass
class CombReport:
    check: str
    pauli_string: str
    trials: int
    seed: int | None
    tol: float
    max_abs: float
    passed: bool
    expected_comb: bool | None = None

    @property
    def consistent(self) -> bool:
        """Numerical verdict agrees with the parity rule (order-1 checks)."""
        return self.expected_comb is None or self.expected_comb == self.passed

    def to_dict(self) -> dict:
        d = asdict(self)
        d["consistent"] = self.consistent
        return d


def verify_comb_order1(
    s: PauliLike, trials: int = 1000, seed=0, tol: float = 1e-10
) -> CombReport:
    """Check <s>_C = 0 on ``trials`` Haar-random states.

    ``passed`` is the numerical verdict; ``expected_comb`` is the parity
    prediction. The two should always agree.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    s = as_pauli_string(s)
    amps = _haar_amplitudes(make_rng(seed), len(s), trials)
    vals = _bilinear(amps, s)
    max_abs = float(np.abs(vals).max())
    return CombReport(
        check="order1",
        pauli_string=pauli_label(s),
        trials=trials,
        seed=seed if isinstance(seed, int) else None,
        tol=tol,
        max_abs=max_abs,
        passed=max_abs < tol,
        expected_comb=parity_is_comb(s),
    )


def verify_comb_order2(trials: int = 1000, seed=0, tol: float = 1e-10) -> CombReport:
    """Check the metric identity -<1>_C^2 + <x>_C^2 + <z>_C^2 = 0 on one qubit."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    amps = _haar_amplitudes(make_rng(seed), 1, trials)
    max_abs = float(np.abs(_order2_batch(amps)).max())
    return CombReport(
        check="order2",
        pauli_string="mu.mu",
        trials=trials,
        seed=seed if isinstance(seed, int) else None,
        tol=tol,
        max_abs=max_abs,
        passed=max_abs < tol,
    )


def all_pauli_strings(n_qubits: int):
    return itertools.product(range(4), repeat=n_qubits)


def verify_parity_theorem(
    max_qubits: int = 3, trials: int = 1000, seed=0, tol: float = 1e-10
) -> list[CombReport]:
    """Run :func:`verify_comb_order1` on every Pauli string up to ``max_qubits``."""
    rng = make_rng(seed)
    return [
        verify_comb_order1(s, trials, rng, tol)
        for n in range(1, max_qubits + 1)
        for s in all_pauli_strings(n)
    ]
