"""Pure states and density matrices of N-qubit registers.

Ordering convention: qubit 0 is the leftmost tensor factor, i.e. the most
significant bit of the basis index. ``|1000>`` on four qubits is index 8,
so ket strings can be read off literally.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DimensionError, InvalidStateError, NormalizationError

__all__ = [
    "MAX_QUBITS",
    "NORM_TOL",
    "DensityMatrix",
    "Partition",
    "PureState",
    "bipartitions",
    "catalog_names",
    "catalog_state",
    "density_matrix",
    "dump_state",
    "from_kets",
    "load_state",
    "make_density_matrix",
    "make_rng",
    "make_state",
    "partial_trace",
    "random_haar_state",
    "random_product_state",
    "state_from_dict",
    "state_to_dict",
    "tensor_product",
]

MAX_QUBITS = 12
# tolerance used by every operation that requires a normalized input
NORM_TOL = 1e-9
DM_TOL = 1e-10


def make_rng(seed=None) -> np.random.Generator:
    """Return a counter-based (Philox) generator.

    ``seed`` may be an int, a ``SeedSequence``, ``None`` or an existing
    ``Generator``, which is returned unchanged so that callers can thread
    one stream through several draws.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def _check_width(n_qubits: int) -> int:
    n_qubits = int(n_qubits)
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise DimensionError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    return n_qubits


@dataclass(frozen=True, eq=False)
class PureState:
    """State vector of ``n_qubits`` qubits in the computational basis.

    The amplitude array is copied and made read-only on construction.
    Normalization is not enforced here; see :func:`make_state`.
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = _check_width(self.n_qubits)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2**n:
            raise DimensionError(
                f"{n} qubits need {2**n} amplitudes, got {amps.shape[0]}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> "PureState":
        nrm = self.norm()
        if nrm == 0:
            raise InvalidStateError("cannot normalize the zero vector")
        return PureState(self.n_qubits, self.amplitudes / nrm)

    def tensor(self) -> np.ndarray:
        """Amplitudes as a ``(2,)*n_qubits`` array, axis k = qubit k."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def __mul__(self, c) -> "PureState":
        if not np.isscalar(c):
            return NotImplemented
        return PureState(self.n_qubits, complex(c) * self.amplitudes)

    __rmul__ = __mul__

    def __repr__(self):
        return f"PureState(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


def require_normalized(state: PureState, tol: float = NORM_TOL) -> None:
    if not state.is_normalized(tol):
        raise NormalizationError(
            f"state must be normalized (norm = {state.norm():.3e}, tol {tol:g})"
        )


def make_state(n_qubits: int, amplitudes, normalize: bool = True) -> PureState:
    """Build a :class:`PureState`, normalizing the amplitudes if asked.

    Unnormalized states are allowed with ``normalize=False``; every monotone
    and filter evaluation rejects them later unless told otherwise.
    """
    state = PureState(n_qubits, amplitudes)
    return state.normalized() if normalize else state


def from_kets(terms: Mapping[str, complex], normalize: bool = True) -> PureState:
    """Build a state from ``{"0101": coeff, ...}`` ket strings."""
    if not terms:
        raise InvalidStateError("no kets given")
    widths = {len(k) for k in terms}
    if len(widths) != 1:
        raise DimensionError(f"ket strings have mixed widths {sorted(widths)}")
    n = _check_width(widths.pop())
    amps = np.zeros(2**n, dtype=np.complex128)
    for ket, c in terms.items():
        if set(ket) - {"0", "1"}:
            raise InvalidStateError(f"bad ket string {ket!r}")
        amps[int(ket, 2)] += c
    return make_state(n, amps, normalize=normalize)


_CATALOG = {
    "BELL": {"00": 1, "11": 1},
    "GHZ3": {"000": 1, "111": 1},
    "W3": {"001": 1, "010": 1, "100": 1},
    "GHZ4": {"0000": 1, "1111": 1},
    "W4": {"0111": 1, "1011": 1, "1101": 1, "1110": 1},
    "PHI2": {"1111": np.sqrt(2), "1000": 1, "0100": 1, "0010": 1, "0001": 1},
    "PHI3": {"1111": 1, "1100": 1, "0010": 1, "0001": 1},
}
_ALIASES = {"PHI1": "GHZ4", "BELL00": "BELL"}


def catalog_names() -> list[str]:
    return sorted(_CATALOG) + sorted(_ALIASES)


def catalog_state(name: str) -> PureState:
    """Return a named reference state, normalized.

    Known names: BELL, GHZ3, W3, GHZ4 (alias PHI1), W4, PHI2, PHI3.
    The four-qubit W state here is the one with a single ``0``, i.e.
    ``(|0111> + |1011> + |1101> + |1110>)/2``.
    """
    key = name.upper()
    key = _ALIASES.get(key, key)
    if key not in _CATALOG:
        raise KeyError(f"unknown catalog state {name!r}; known: {catalog_names()}")
    return from_kets(_CATALOG[key])


def tensor_product(a: PureState, b: PureState) -> PureState:
    """``a`` occupies the leading (most significant) qubits."""
    return PureState(a.n_qubits + b.n_qubits, np.kron(a.amplitudes, b.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        n = _check_width(self.n_qubits)
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2**n, 2**n):
            raise DimensionError(f"expected a {2**n}x{2**n} matrix, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "matrix", m)

    def violations(self, tol: float = DM_TOL) -> list[str]:
        m = self.matrix
        out = []
        if np.abs(m - m.conj().T).max() > tol:
            out.append("not Hermitian")
        if abs(np.trace(m) - 1) > tol:
            out.append(f"trace {np.trace(m).real:.3e} != 1")
        herm = (m + m.conj().T) / 2
        if np.linalg.eigvalsh(herm).min() < -tol:
            out.append("not positive semidefinite")
        return out


def make_density_matrix(matrix, n_qubits: int | None = None, tol: float = DM_TOL) -> DensityMatrix:
    """Validate ``matrix`` as a density matrix (Hermitian, unit trace, PSD)."""
    m = np.asarray(matrix, dtype=np.complex128)
    if n_qubits is None:
        n_qubits = int(round(np.log2(m.shape[0]))) if m.ndim == 2 and m.shape[0] > 0 else 0
    rho = DensityMatrix(n_qubits, m)
    bad = rho.violations(tol)
    if bad:
        raise InvalidStateError("invalid density matrix: " + "; ".join(bad))
    return rho


def density_matrix(state: PureState) -> DensityMatrix:
    """Projector ``|psi><psi|`` of a normalized state."""
    require_normalized(state)
    v = state.amplitudes
    return DensityMatrix(state.n_qubits, np.outer(v, v.conj()))


def _check_qubits(indices: Iterable[int], n_qubits: int) -> list[int]:
    idx = sorted({int(i) for i in indices})
    if not idx:
        raise DimensionError("at least one qubit index is required")
    if idx[0] < 0 or idx[-1] >= n_qubits:
        raise DimensionError(f"qubit indices {idx} out of range for {n_qubits} qubits")
    return idx


def partial_trace(rho: DensityMatrix | PureState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the qubits in ``keep`` (kept in ascending order)."""
    if isinstance(rho, PureState):
        rho = density_matrix(rho)
    n = rho.n_qubits
    keep = _check_qubits(keep, n)
    t = rho.matrix.reshape((2,) * (2 * n))
    # einsum labels: row axis q -> q, column axis q -> n+q, or q if traced out
    cols = [q if q not in keep else n + q for q in range(n)]
    out = keep + [n + q for q in keep]
    reduced = np.einsum(t, list(range(n)) + cols, out)
    k = len(keep)
    return DensityMatrix(k, reduced.reshape(2**k, 2**k))


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of qubit indices covering ``0..n_qubits-1``."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(q) for q in b)) for b in self.blocks)
        if not blocks or any(len(b) == 0 for b in blocks):
            raise InvalidStateError("partition blocks must be nonempty")
        flat = [q for b in blocks for q in b]
        if len(flat) != len(set(flat)):
            raise InvalidStateError(f"partition blocks overlap: {blocks}")
        if sorted(flat) != list(range(len(flat))):
            raise InvalidStateError(f"partition does not cover 0..{len(flat) - 1}: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n_qubits(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __str__(self):
        return "|".join("".join(str(q) for q in b) for b in self.blocks)


def bipartitions(n_qubits: int) -> Iterator[Partition]:
    """All splits of ``n_qubits`` qubits into exactly two blocks.

    The block holding qubit 0 comes first; there are ``2**(n-1) - 1`` of them.
    """
    rest = range(1, n_qubits)
    for size in range(0, n_qubits - 1):
        for extra in itertools.combinations(rest, size):
            first = (0,) + extra
            second = tuple(q for q in range(n_qubits) if q not in first)
            yield Partition((first, second))


def _haar_amplitudes(rng: np.random.Generator, n_qubits: int, size=None) -> np.ndarray:
    shape = (2**n_qubits,) if size is None else (size, 2**n_qubits)
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _product_amplitudes(rng: np.random.Generator, partition: Partition, size: int) -> np.ndarray:
    """``size`` random product states across ``partition``, shape (size, 2**n)."""
    n = partition.n_qubits
    t = np.ones((size,), dtype=np.complex128)
    for block in partition.blocks:
        part = _haar_amplitudes(rng, len(block), size)
        t = np.einsum("si,sj->sij", t.reshape(size, -1), part)
    order = [q for b in partition.blocks for q in b]
    t = t.reshape((size,) + (2,) * n)
    t = t.transpose([0] + [1 + int(i) for i in np.argsort(order)])
    return t.reshape(size, 2**n)


def random_haar_state(n_qubits: int, seed=None) -> PureState:
    """Unitarily invariant random state: normalized complex Gaussian vector."""
    n = _check_width(n_qubits)
    return PureState(n, _haar_amplitudes(make_rng(seed), n))


def random_product_state(partition: Partition | Sequence[Sequence[int]], seed=None) -> PureState:
    """Independent Haar-random states on each block, arranged in qubit order."""
    if not isinstance(partition, Partition):
        partition = Partition(tuple(tuple(b) for b in partition))
    amps = _product_amplitudes(make_rng(seed), partition, 1)[0]
    return PureState(partition.n_qubits, amps)


# -- state file format -------------------------------------------------------
#
# {"n_qubits": N, "amplitudes": [[re, im], ...]}   basis index ascending,
# qubit 0 most significant.  An optional "normalize": true rescales on load.


def state_to_dict(state: PureState) -> dict:
    return {
        "n_qubits": state.n_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }


def state_from_dict(data: Mapping) -> PureState:
    try:
        n = int(data["n_qubits"])
        pairs = np.asarray(data["amplitudes"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStateError(f"malformed state record: {exc}") from exc
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise InvalidStateError("amplitudes must be a list of [real, imaginary] pairs")
    return make_state(n, pairs[:, 0] + 1j * pairs[:, 1], normalize=bool(data.get("normalize", False)))


def dump_state(state: PureState, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=1) + "\n")


def load_state(path) -> PureState:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"{path}: not a valid state file ({exc})") from exc
    return state_from_dict(data)
