"""Filters: metric-contracted bullet products of Pauli-string bilinear forms.

A filter of order n is a list of n factors. Each factor is a row of
``n_qubits`` slots; a slot is either a fixed Pauli index (an int, sigma_y
in every built-in) or a contraction label (a str). Every label occurs in
exactly two slots and is summed over mu in {0, 1, 3} with the weight
``g^{mu mu}``. Factor k is evaluated on its own copy of the state, so

    <F>_C = prefactor * sum_labels prod(g) * prod_k <factor_k>_C

Text form (``•`` or ``.`` between factors, optional ``prefactor *``)::

    1/3 * (#m,#n,#l)•(#m,#n,#l)
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .comb import CONTRACTED, METRIC, _bilinear
from .errors import DimensionError, FilterSpecError
from .qstate import Partition, PureState, _product_amplitudes, bipartitions, make_rng, require_normalized

__all__ = [
    "BUILTIN_NAMES",
    "FilterSpec",
    "FilterValue",
    "NullityReport",
    "builtin",
    "components",
    "evaluate",
    "evaluate_many",
    "format_filter",
    "load_filter",
    "nullity_suite",
    "parse_filter",
    "validate",
]

Slot = Union[int, str]
Y = 2


@dataclass(frozen=True)
class FilterSpec:
    n_qubits: int
    factors: tuple[tuple[Slot, ...], ...]
    prefactor: float = 1.0
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(tuple(f) for f in self.factors))
        object.__setattr__(self, "prefactor", float(self.prefactor))

    @property
    def order(self) -> int:
        return len(self.factors)

    @property
    def labels(self) -> tuple[str, ...]:
        """Contraction labels in order of first appearance."""
        seen = {}
        for factor in self.factors:
            for slot in factor:
                if isinstance(slot, str):
                    seen.setdefault(slot, None)
        return tuple(seen)

    def __str__(self):
        return format_filter(self)


@dataclass(frozen=True)
class FilterValue:
    complex_value: complex
    modulus: float

    @property
    def phase(self) -> float:
        return float(np.angle(self.complex_value))

    def to_dict(self) -> dict:
        return {
            "real": self.complex_value.real,
            "imag": self.complex_value.imag,
            "modulus": self.modulus,
            "phase": self.phase,
        }


def validate(f: FilterSpec) -> list[str]:
    """List every violated invariant; empty when ``f`` is well formed."""
    problems = []
    if f.order < 1:
        problems.append("filter has no factors")
    counts = Counter()
    for k, factor in enumerate(f.factors):
        if len(factor) != f.n_qubits:
            problems.append(
                f"width mismatch: factor {k} has {len(factor)} slots, filter has {f.n_qubits} qubits"
            )
        for slot in factor:
            if isinstance(slot, str):
                counts[slot] += 1
            elif isinstance(slot, (int, np.integer)) and not isinstance(slot, bool) and 0 <= slot <= 3:
                pass
            else:
                problems.append(f"bad slot {slot!r} in factor {k}")
    for label, n in counts.items():
        if n == 1:
            problems.append(f"unpaired label {label!r}")
        elif n > 2:
            problems.append(f"label {label!r} used {n} times (must be exactly 2)")
    return problems


def _check(f: FilterSpec) -> None:
    problems = validate(f)
    if problems:
        raise FilterSpecError(f"invalid filter {f.name or ''}: " + "; ".join(problems))


def components(f: FilterSpec) -> list[list[int]]:
    """Group factor indices that are linked through shared labels."""
    parent = list(range(f.order))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first_seen: dict[str, int] = {}
    for k, factor in enumerate(f.factors):
        for s in factor:
            if isinstance(s, str):
                if s in first_seen:
                    parent[find(k)] = find(first_seen[s])
                else:
                    first_seen[s] = k
    groups: dict[int, list[int]] = {}
    for k in range(f.order):
        groups.setdefault(find(k), []).append(k)
    return list(groups.values())


def _contract(factors: Sequence[tuple[Slot, ...]], amps: np.ndarray, cache: dict) -> np.ndarray:
    """Sum over every label assignment of one connected group of factors."""
    labels = list(dict.fromkeys(s for factor in factors for s in factor if isinstance(s, str)))
    n_lab = len(labels)
    contracted = np.array(CONTRACTED)
    assign = np.array(list(itertools.product(range(3), repeat=n_lab)), dtype=int).reshape(3**n_lab, n_lab)
    weights = np.prod(METRIC[contracted[assign]], axis=1)

    product = np.ones((amps.shape[0], assign.shape[0]), dtype=np.complex128)
    for factor in factors:
        pos = [labels.index(s) for s in factor if isinstance(s, str)]
        local = np.empty((amps.shape[0], 3 ** len(pos)), dtype=np.complex128)
        for j, sub in enumerate(itertools.product(CONTRACTED, repeat=len(pos))):
            it = iter(sub)
            paulis = tuple(next(it) if isinstance(s, str) else int(s) for s in factor)
            if paulis not in cache:
                cache[paulis] = _bilinear(amps, paulis)
            local[:, j] = cache[paulis]
        if pos:
            idx = np.ravel_multi_index(tuple(assign[:, pos].T), (3,) * len(pos))
        else:
            idx = np.zeros(assign.shape[0], dtype=int)
        product *= local[:, idx]
    return product @ weights


def evaluate_many(f: FilterSpec, amps: np.ndarray) -> np.ndarray:
    """Complex filter values for each row of ``amps`` (shape (B, 2**n)).

    Groups of factors that share no labels are summed separately and then
    multiplied. The result is identical, but each group is invariant on its
    own, so cancellation stays within that group. This matters for
    unnormalized inputs, e.g. states after SL(2,C) operations. No
    normalization check is made here.
    """
    _check(f)
    amps = np.atleast_2d(np.asarray(amps, dtype=np.complex128))
    if amps.shape[1] != 2**f.n_qubits:
        raise DimensionError(f"filter on {f.n_qubits} qubits, state dimension {amps.shape[1]}")
    cache: dict[tuple[int, ...], np.ndarray] = {}
    value = np.full(amps.shape[0], f.prefactor, dtype=np.complex128)
    for group in components(f):
        value *= _contract([f.factors[k] for k in group], amps, cache)
    return value


def evaluate(f: FilterSpec, state: PureState, allow_unnormalized: bool = False) -> FilterValue:
    """<F>_C on the n-fold copy of ``state``.

    Raises:
        DimensionError: filter and state widths differ.
        NormalizationError: ``state`` is not normalized (unless allowed).
    """
    if f.n_qubits != state.n_qubits:
        raise DimensionError(f"filter on {f.n_qubits} qubits, state on {state.n_qubits}")
    if not allow_unnormalized:
        require_normalized(state)
    value = complex(evaluate_many(f, state.amplitudes)[0])
    return FilterValue(value, abs(value))


# -- built-ins ---------------------------------------------------------------

_BUILTIN_TEXT = {
    "F2_1": "(Y,Y)",
    "F2_2": "1/3 * (#m,#n)•(#m,#n)",
    "F3_1": "(#m,Y,Y)•(#m,Y,Y)",
    "F3_2": "1/3 * (#m,#n,#l)•(#m,#n,#l)",
    "F4_1": "(#m,#n,Y,Y)•(#m,Y,#l,Y)•(Y,#n,#l,Y)",
    "F4_2": "(#m,#n,Y,Y)•(#m,Y,#l,Y)•(Y,#n,Y,#t)•(Y,Y,#l,#t)",
    # rho/tau are summed separately within factors 3-4 and within 5-6
    "F4_3": "1/2 * (#m,#n,Y,Y)•(#m,#n,Y,Y)•(#r,Y,#t,Y)•(#r,Y,#t,Y)•(Y,#s,#u,Y)•(Y,#s,#u,Y)",
}
BUILTIN_NAMES = tuple(_BUILTIN_TEXT)


def builtin(name: str) -> FilterSpec:
    """One of F2_1, F2_2, F3_1, F3_2, F4_1, F4_2, F4_3."""
    key = name.upper()
    if key not in _BUILTIN_TEXT:
        raise KeyError(f"unknown built-in filter {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return parse_filter(_BUILTIN_TEXT[key], name=key)


# -- text format -------------------------------------------------------------

_FACTOR_RE = re.compile(r"\(([^()]*)\)")
_SEP_RE = re.compile(r"^\s*[•.]\s*$")
_LABEL_RE = re.compile(r"^#([A-Za-z_]\w*)$")


def _parse_prefactor(text: str) -> float:
    text = text.strip()
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(text)
    except ValueError:
        raise FilterSpecError(f"bad prefactor {text!r}") from None


def parse_filter(text: str, name: str | None = None) -> FilterSpec:
    """Parse the text form; raises :class:`FilterSpecError` on any violation."""
    text = text.strip()
    first = text.find("(")
    if first < 0:
        raise FilterSpecError("no factors found")
    head, body = text[:first], text[first:]
    prefactor = 1.0
    if head.strip():
        if not head.rstrip().endswith("*"):
            raise FilterSpecError(f"expected 'prefactor *' before the factors, got {head!r}")
        prefactor = _parse_prefactor(head.rstrip()[:-1])

    factors = []
    pos = 0
    for k, m in enumerate(_FACTOR_RE.finditer(body)):
        gap = body[pos:m.start()]
        if (k == 0 and gap.strip()) or (k > 0 and not _SEP_RE.match(gap)):
            raise FilterSpecError(f"unexpected text {gap!r} between factors")
        slots = []
        for tok in m.group(1).split(","):
            tok = tok.strip()
            lab = _LABEL_RE.match(tok)
            if lab:
                slots.append(lab.group(1))
            elif len(tok) == 1 and tok.upper() in "IXYZ":
                slots.append("IXYZ".index(tok.upper()))
            else:
                raise FilterSpecError(f"bad slot token {tok!r}")
        factors.append(tuple(slots))
        pos = m.end()
    if body[pos:].strip():
        raise FilterSpecError(f"trailing text {body[pos:]!r}")
    if not factors:
        raise FilterSpecError("no factors found")

    spec = FilterSpec(len(factors[0]), tuple(factors), prefactor, name)
    _check(spec)
    return spec


def format_filter(f: FilterSpec) -> str:
    body = "•".join(
        "(" + ",".join(f"#{s}" if isinstance(s, str) else "IXYZ"[s] for s in factor) + ")"
        for factor in f.factors
    )
    if f.prefactor == 1.0:
        return body
    frac = Fraction(f.prefactor).limit_denominator(1000)
    pref = str(frac) if float(frac) == f.prefactor else repr(f.prefactor)
    return f"{pref} * {body}"


def load_filter(path) -> FilterSpec:
    return parse_filter(Path(path).read_text(), name=Path(path).stem)


# -- product-state nullity ---------------------------------------------------


@dataclass
class NullityReport:
    filter_name: str
    trials: int
    tol: float
    per_partition: dict[str, float]

    @property
    def max_modulus(self) -> float:
        return max(self.per_partition.values())

    @property
    def passed(self) -> bool:
        return self.max_modulus < self.tol

    def to_dict(self) -> dict:
        return {
            "filter": self.filter_name,
            "trials": self.trials,
            "tol": self.tol,
            "per_partition": dict(self.per_partition),
            "max_modulus": self.max_modulus,
            "passed": self.passed,
        }


def nullity_suite(
    f: FilterSpec,
    trials: int = 200,
    seed=0,
    tol: float = 1e-10,
    partitions: Iterable[Partition] | None = None,
) -> NullityReport:
    """Max |<F>_C| over random product states for every two-block split.

    Finer product structures are special cases of some two-block split,
    so those are not enumerated.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check(f)
    rng = make_rng(seed)
    parts = list(bipartitions(f.n_qubits) if partitions is None else partitions)
    if not parts:
        raise DimensionError("a one-qubit filter has no bipartitions")
    per = {}
    for p in parts:
        amps = _product_amplitudes(rng, p, trials)
        per[str(p)] = float(np.abs(evaluate_many(f, amps)).max())
    return NullityReport(f.name or format_filter(f), trials, tol, per)
