"""Concurrence, 3-tangle and the two-qubit mixed-state matrices R and R^2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .comb import CONTRACTED, METRIC, PAULI
from .errors import DimensionError
from .filters import builtin, evaluate
from .qstate import DensityMatrix, PureState, make_density_matrix, require_normalized

__all__ = [
    "MEASURES",
    "MonotoneResult",
    "Tau3Terms",
    "build_R2",
    "compute",
    "concurrence_pure",
    "concurrence_sq_pure",
    "r_eigenvalues",
    "r_matrix",
    "tau3_filter",
    "tau3_poly",
    "tau3_terms",
    "wootters_concurrence",
]

YY = np.kron(PAULI[2], PAULI[2])


def _require(state: PureState, n_qubits: int, what: str) -> None:
    if state.n_qubits != n_qubits:
        raise DimensionError(f"{what} needs {n_qubits} qubits, got {state.n_qubits}")
    require_normalized(state)


def concurrence_pure(state: PureState) -> float:
    """C = |<sigma_y x sigma_y>_C| of a normalized two-qubit state."""
    _require(state, 2, "concurrence")
    return evaluate(builtin("F2_1"), state).modulus


def concurrence_sq_pure(state: PureState) -> float:
    """C^2 from the order-2 filter (1/3) <s_mu s_nu>_C <s^mu s^nu>_C."""
    _require(state, 2, "concurrence_sq")
    return evaluate(builtin("F2_2"), state).modulus


def tau3_filter(state: PureState, which: str = "F3_1") -> float:
    """3-tangle as the modulus of F3_1 or of the permutation-invariant F3_2."""
    if which.upper() not in ("F3_1", "F3_2"):
        raise ValueError(f"which must be F3_1 or F3_2, got {which!r}")
    _require(state, 3, "tau3")
    return evaluate(builtin(which), state).modulus


@dataclass(frozen=True)
class Tau3Terms:
    d1: complex
    d2: complex
    d3: complex

    @property
    def raw(self) -> complex:
        """d1 - 2 d2 + 4 d3 exactly as the monomial sums define it."""
        return self.d1 - 2 * self.d2 + 4 * self.d3

    @property
    def raw_modulus(self) -> float:
        return abs(self.raw)

    @property
    def value(self) -> float:
        # |d1 - 2 d2 + 4 d3| is 1/4 on GHZ; the factor 4 puts GHZ at 1 and
        # matches the filter values of F3_1 and F3_2.
        return 4 * self.raw_modulus

    def to_dict(self) -> dict:
        return {
            "d1": [self.d1.real, self.d1.imag],
            "d2": [self.d2.real, self.d2.imag],
            "d3": [self.d3.real, self.d3.imag],
            "raw_modulus": self.raw_modulus,
            "value": self.value,
        }


def tau3_terms(state: PureState) -> Tau3Terms:
    _require(state, 3, "tau3")
    p = state.tensor()
    a000, a001, a010, a011 = p[0, 0, 0], p[0, 0, 1], p[0, 1, 0], p[0, 1, 1]
    a100, a101, a110, a111 = p[1, 0, 0], p[1, 0, 1], p[1, 1, 0], p[1, 1, 1]
    d1 = a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return Tau3Terms(complex(d1), complex(d2), complex(d3))


def tau3_poly(state: PureState) -> float:
    """4 |d1 - 2 d2 + 4 d3| from the amplitude polynomial."""
    return tau3_terms(state).value


# -- mixed two-qubit states --------------------------------------------------


def _as_rho(rho) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        rho = make_density_matrix(rho)
    else:
        rho = make_density_matrix(rho.matrix, rho.n_qubits)
    if rho.n_qubits != 2:
        raise DimensionError(f"two-qubit density matrix required, got {rho.n_qubits} qubits")
    return rho


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def r_matrix(rho) -> np.ndarray:
    """R = sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho)."""
    m = _as_rho(rho).matrix
    s = _psd_sqrt(m)
    return s @ YY @ m.conj() @ YY @ s


def r_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of R, descending, from the similar matrix rho (YY) rho* (YY)."""
    m = _as_rho(rho).matrix
    lam = np.linalg.eigvals(m @ YY @ m.conj() @ YY)
    return np.sort(lam.real)[::-1]


def wootters_concurrence(rho) -> float:
    """Mixed-state concurrence max(0, s1 - s2 - s3 - s4).

    The s_i are square roots of the eigenvalues of R. They are computed as
    singular values of W^T (Y x Y) W with rho = W W^dagger, which keeps
    zero eigenvalues at round-off level instead of ~1e-8 after a square root.
    """
    m = _as_rho(rho).matrix
    w, v = np.linalg.eigh(m)
    half = v * np.sqrt(np.clip(w, 0, None))
    s = np.linalg.svd(half.T @ YY @ half, compute_uv=False)
    s = np.sort(s)[::-1]
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def _pair_ops():
    ops, weights = [], []
    for mu in CONTRACTED:
        for nu in CONTRACTED:
            ops.append(np.kron(PAULI[mu], PAULI[nu]))
            weights.append(METRIC[mu] * METRIC[nu])
    return np.array(ops), np.array(weights)


def build_R2(rho) -> np.ndarray:
    """sqrt(rho) s_mn rho* s_kl rho s^mn rho* s^kl sqrt(rho), all labels summed.

    No 1/3 prefactors are applied. For a pure state the trace is
    ``9 C^4``.
    """
    m = _as_rho(rho).matrix
    ops, wts = _pair_ops()
    left = ops @ m.conj()  # s_mn rho*
    right = ops @ m  # s_kl rho
    # s_mn rho* s_kl rho s^mn rho* s^kl
    inner = np.einsum("aij,bjk,akl,blm->abim", left, right, left, ops)
    total = np.einsum("a,b,abim->im", wts, wts, inner)
    s = _psd_sqrt(m)
    return s @ total @ s


# -- uniform records for reporting -------------------------------------------

MEASURES = ("concurrence", "concurrence_sq", "tau3_filter", "tau3_poly")


@dataclass
class MonotoneResult:
    measure: str
    value: float
    raw: complex | None = None
    terms: Tau3Terms | None = None

    def to_dict(self) -> dict:
        d = {"measure": self.measure, "value": self.value}
        if self.raw is not None:
            d["raw"] = [self.raw.real, self.raw.imag]
        if self.terms is not None:
            d["terms"] = self.terms.to_dict()
        return d


def compute(measure: str, state: PureState) -> MonotoneResult:
    """Evaluate one of :data:`MEASURES` and return a structured record."""
    if measure == "concurrence":
        _require(state, 2, measure)
        fv = evaluate(builtin("F2_1"), state)
        return MonotoneResult(measure, fv.modulus, fv.complex_value)
    if measure == "concurrence_sq":
        _require(state, 2, measure)
        fv = evaluate(builtin("F2_2"), state)
        return MonotoneResult(measure, fv.modulus, fv.complex_value)
    if measure == "tau3_filter":
        _require(state, 3, measure)
        fv = evaluate(builtin("F3_1"), state)
        return MonotoneResult(measure, fv.modulus, fv.complex_value)
    if measure == "tau3_poly":
        terms = tau3_terms(state)
        return MonotoneResult(measure, terms.value, terms.raw, terms)
    raise ValueError(f"unknown measure {measure!r}; known: {', '.join(MEASURES)}")
