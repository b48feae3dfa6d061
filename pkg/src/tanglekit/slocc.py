"""Local SL(2,C) / SU(2) operations, invariance checks and four-qubit signatures.

Filter values are exactly invariant under determinant-one local operators
applied without renormalization. A nonzero filter value therefore cannot
be driven to zero by SLOCC, which is what :func:`classify4` uses: its
labels are necessary conditions ("compatible with"), never a proof that
two states are SLOCC-equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, InvalidStateError
from .filters import FilterSpec, builtin, evaluate_many
from .qstate import PureState, make_rng, require_normalized

__all__ = [
    "CLASS_LABELS",
    "FilterSignature",
    "InvarianceReport",
    "apply_local",
    "check_local_ops",
    "classify4",
    "invariance_check",
    "random_local_ops",
    "random_sl2",
    "random_su2",
    "separating_filters",
]

ZERO_TOL = 1e-8
FOUR_QUBIT_FILTERS = ("F4_1", "F4_2", "F4_3")
CLASS_LABELS = ("ghz4", "phi2", "phi3", "none", "unclassified-signature")


def random_sl2(seed=None, max_attempts: int = 100) -> np.ndarray:
    """Complex Gaussian 2x2 matrix rescaled to determinant one.

    The principal square root of the determinant is used; the other branch
    only flips the overall sign.
    """
    rng = make_rng(seed)
    for _ in range(max_attempts):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        d = np.linalg.det(m)
        if abs(d) >= 1e-6:
            return m / np.sqrt(d)
    raise RuntimeError(f"no invertible sample in {max_attempts} attempts")


def random_su2(seed=None) -> np.ndarray:
    """Haar-random unitary with determinant one."""
    rng = make_rng(seed)
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    u = q * (d / np.abs(d))
    return u / np.sqrt(np.linalg.det(u))


def random_local_ops(n_qubits: int, mode: str = "SL", seed=None) -> tuple[np.ndarray, ...]:
    rng = make_rng(seed)
    draw = {"SL": random_sl2, "SU": random_su2}[mode.upper()]
    return tuple(draw(rng) for _ in range(n_qubits))


def check_local_ops(ops: Sequence[np.ndarray], mode: str | None = None, tol: float = 1e-10) -> list[str]:
    """Violations of the invertible / SL / SU contract for each site."""
    problems = []
    for k, op in enumerate(ops):
        op = np.asarray(op)
        if op.shape != (2, 2):
            problems.append(f"site {k}: shape {op.shape}, expected (2, 2)")
            continue
        det = np.linalg.det(op)
        if abs(det) < tol:
            problems.append(f"site {k}: not invertible")
        if mode and mode.upper() in ("SL", "SU") and abs(det - 1) >= tol:
            problems.append(f"site {k}: det = {det:.3g}, expected 1")
        if mode and mode.upper() == "SU" and np.abs(op @ op.conj().T - np.eye(2)).max() >= tol:
            problems.append(f"site {k}: not unitary")
    return problems


def _apply_local_amps(amps: np.ndarray, ops: Sequence[np.ndarray]) -> np.ndarray:
    """Apply ops[k] to qubit k of each row of ``amps`` (shape (B, 2**n))."""
    n = len(ops)
    t = amps.reshape((amps.shape[0],) + (2,) * n)
    for k, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(t, op, axes=([k + 1], [1])), -1, k + 1)
    return t.reshape(amps.shape[0], -1)


def apply_local(state: PureState, ops: Sequence[np.ndarray], renormalize: bool = False) -> PureState:
    """(op_0 x op_1 x ... ) |psi>, optionally renormalized."""
    if len(ops) != state.n_qubits:
        raise DimensionError(f"{len(ops)} local operators for {state.n_qubits} qubits")
    amps = _apply_local_amps(state.amplitudes[None, :], [np.asarray(o, dtype=complex) for o in ops])[0]
    out = PureState(state.n_qubits, amps)
    if renormalize:
        if out.norm() < 1e-300:
            raise InvalidStateError("local operation annihilated the state")
        out = out.normalized()
    return out


@dataclass
class InvarianceReport:
    filter_name: str
    mode: str
    trials: int
    tol: float
    reference: complex
    max_deviation: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tol

    def to_dict(self) -> dict:
        return {
            "filter": self.filter_name,
            "mode": self.mode,
            "trials": self.trials,
            "tol": self.tol,
            "reference": [self.reference.real, self.reference.imag],
            "max_deviation": self.max_deviation,
            "passed": self.passed,
        }


def invariance_check(
    f: FilterSpec,
    state: PureState,
    mode: str = "SL",
    trials: int = 100,
    seed=0,
    tol: float = 1e-8,
) -> InvarianceReport:
    """Compare filter values before and after random local operations.

    SL mode: complex values on the unrenormalized transformed states must
    match exactly. SU mode: moduli on renormalized states must match.
    """
    mode = mode.upper()
    if mode not in ("SL", "SU"):
        raise ValueError(f"mode must be SL or SU, got {mode!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if f.n_qubits != state.n_qubits:
        raise DimensionError(f"filter on {f.n_qubits} qubits, state on {state.n_qubits}")
    require_normalized(state)
    rng = make_rng(seed)
    ref = complex(evaluate_many(f, state.amplitudes)[0])
    moved = np.empty((trials, state.dim), dtype=np.complex128)
    for i in range(trials):
        ops = random_local_ops(state.n_qubits, mode, rng)
        moved[i] = _apply_local_amps(state.amplitudes[None, :], ops)[0]
    if mode == "SU":
        moved /= np.linalg.norm(moved, axis=1, keepdims=True)
        dev = np.abs(np.abs(evaluate_many(f, moved)) - abs(ref))
    else:
        dev = np.abs(evaluate_many(f, moved) - ref)
    return InvarianceReport(f.name or str(f), mode, trials, tol, ref, float(dev.max()))


@dataclass(frozen=True)
class FilterSignature:
    """Moduli of (F4_1, F4_2, F4_3) with zero flags at ``tol``."""

    values: tuple[float, float, float]
    tol: float = ZERO_TOL

    @property
    def zero_flags(self) -> tuple[bool, bool, bool]:
        return tuple(v < self.tol for v in self.values)

    @property
    def label(self) -> str:
        z1, z2, z3 = self.zero_flags
        if not (z1 or z2 or z3):
            return "ghz4"
        if not z1 and z2:
            return "phi2"
        if z1 and z2 and not z3:
            return "phi3"
        if z1 and z2 and z3:
            return "none"
        return "unclassified-signature"

    def to_dict(self) -> dict:
        return {
            "values": list(self.values),
            "zero_flags": list(self.zero_flags),
            "tol": self.tol,
            "label": self.label,
        }


def classify4(state: PureState, tol: float = ZERO_TOL) -> FilterSignature:
    """Filter signature of a normalized four-qubit state.

    Labels: ``ghz4`` (all three nonzero), ``phi2`` (F4_1 nonzero, F4_2 zero),
    ``phi3`` (only F4_3 nonzero), ``none`` (all zero), otherwise
    ``unclassified-signature``.
    """
    if state.n_qubits != 4:
        raise DimensionError(f"classify4 needs 4 qubits, got {state.n_qubits}")
    require_normalized(state)
    values = tuple(float(abs(evaluate_many(builtin(n), state.amplitudes)[0])) for n in FOUR_QUBIT_FILTERS)
    return FilterSignature(values, tol)


def separating_filters(a: FilterSignature, b: FilterSignature) -> list[str]:
    """Filters that vanish on exactly one of the two states.

    Any entry proves the two states are not related by SLOCC.
    """
    return [n for n, za, zb in zip(FOUR_QUBIT_FILTERS, a.zero_flags, b.zero_flags) if za != zb]
