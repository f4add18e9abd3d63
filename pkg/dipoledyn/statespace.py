"""
Four-dimensional state and operator algebra for two two-level ions.

Two bases are used throughout:

    Product     [|00>, |01>, |10>, |11>]
    Collective  [|g>,  |s>,  |a>,  |e>]

with |g> = |00>, |e> = |11>, |s> = (|01> + |10>)/sqrt2 and
|a> = (|01> - |10>)/sqrt2. Hence (|s> + |a>)/sqrt2 = |01> and
(|s> - |a>)/sqrt2 = |10>.

Values are immutable; the backing numpy arrays are made read-only.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatchError, ContractError

DIM = 4
TOL = 1e-12
NORM_SLACK = 1e-9

SQRT1_2 = 1.0 / np.sqrt(2.0)


class Basis(enum.Enum):
    PRODUCT = "product"
    COLLECTIVE = "collective"

    @property
    def labels(self):
        if self is Basis.PRODUCT:
            return ("00", "01", "10", "11")
        return ("g", "s", "a", "e")


# -------------------------------------------------------------
# BASIS TRANSFORM: rows are <g|, <s|, <a|, <e| in product coordinates
# -------------------------------------------------------------
U_B = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, SQRT1_2, SQRT1_2, 0.0],
        [0.0, SQRT1_2, -SQRT1_2, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=np.complex128,
)
U_B.setflags(write=False)


def _frozen(values, shape):
    arr = np.array(values, dtype=np.complex128)
    if arr.size != int(np.prod(shape)):
        raise ContractError(f"Expected {shape} complex entries, got shape {arr.shape}.")
    arr = arr.reshape(shape)
    if not np.all(np.isfinite(arr)):
        raise ContractError("Amplitudes must be finite (no NaN/Inf).")
    arr.setflags(write=False)
    return arr


def _check_basis(expected, got, what="input"):
    if got is not expected:
        raise BasisMismatchError(f"{what} is tagged {got.value}, expected {expected.value}.")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Four complex amplitudes with a basis tag. Squared norm lies in (0, 1 + 1e-9]."""

    amplitudes: np.ndarray
    basis: Basis = Basis.COLLECTIVE

    def __post_init__(self):
        arr = _frozen(self.amplitudes, (DIM,))
        n2 = float(np.vdot(arr, arr).real)
        if not 0.0 < n2 <= 1.0 + NORM_SLACK:
            raise ContractError(f"Squared norm {n2:.3e} outside (0, 1+1e-9].")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def __getitem__(self, label):
        return self.amplitudes[self.basis.labels.index(label)]

    def phase(self, phi):
        return StateVector(np.exp(1j * phi) * self.amplitudes, self.basis)

    def allclose(self, other, atol=TOL):
        _check_basis(self.basis, other.basis)
        return bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0.0, atol=atol))

    def __repr__(self):
        amps = ", ".join(f"{lbl}:{a:.4g}" for lbl, a in zip(self.basis.labels, self.amplitudes))
        return f"StateVector[{self.basis.value}]({amps})"


@dataclass(frozen=True, eq=False)
class Operator:
    """4x4 complex matrix with a basis tag. `hermitian=True` is verified to 1e-12."""

    entries: np.ndarray
    basis: Basis = Basis.COLLECTIVE
    hermitian: bool = False

    def __post_init__(self):
        arr = _frozen(self.entries, (DIM, DIM))
        if self.hermitian and np.max(np.abs(arr - arr.conj().T)) > TOL:
            raise ContractError("Operator claimed Hermitian but H - H^dagger exceeds 1e-12.")
        object.__setattr__(self, "entries", arr)

    @classmethod
    def identity(cls, basis=Basis.COLLECTIVE):
        return cls(np.eye(DIM), basis, hermitian=True)

    @classmethod
    def zero(cls, basis=Basis.COLLECTIVE):
        return cls(np.zeros((DIM, DIM)), basis, hermitian=True)

    @classmethod
    def projector(cls, state):
        v = state.amplitudes
        return cls(np.outer(v, v.conj()), state.basis, hermitian=True)

    def dagger(self):
        return Operator(self.entries.conj().T, self.basis, self.hermitian)

    def is_hermitian(self, tol=TOL):
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)

    def is_unitary(self, tol=TOL):
        return bool(np.max(np.abs(self.entries @ self.entries.conj().T - np.eye(DIM))) <= tol)

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            return apply(self, other)
        if isinstance(other, Operator):
            _check_basis(self.basis, other.basis, "right operand")
            return Operator(self.entries @ other.entries, self.basis)
        return NotImplemented

    def __add__(self, other):
        _check_basis(self.basis, other.basis, "right operand")
        return Operator(self.entries + other.entries, self.basis)

    def __getitem__(self, key):
        row, col = key
        labels = self.basis.labels
        return self.entries[labels.index(row), labels.index(col)]

    def to_collective(self):
        _check_basis(Basis.PRODUCT, self.basis)
        return Operator(U_B @ self.entries @ U_B.conj().T, Basis.COLLECTIVE, self.hermitian)

    def to_product(self):
        _check_basis(Basis.COLLECTIVE, self.basis)
        return Operator(U_B.conj().T @ self.entries @ U_B, Basis.PRODUCT, self.hermitian)


BASIS_TRANSFORM = Operator(U_B, Basis.PRODUCT)


# -------------------------------------------------------------
# CONSTRUCTORS
# -------------------------------------------------------------
def basis_state(label):
    """Collective basis state by label: 'g', 's', 'a' or 'e'."""
    amps = np.zeros(DIM, dtype=np.complex128)
    amps[Basis.COLLECTIVE.labels.index(label)] = 1.0
    return StateVector(amps, Basis.COLLECTIVE)


def product_state(label):
    """Product basis state by label: '00', '01', '10' or '11' (ion 1 first)."""
    amps = np.zeros(DIM, dtype=np.complex128)
    amps[Basis.PRODUCT.labels.index(label)] = 1.0
    return StateVector(amps, Basis.PRODUCT)


def combination(sign):
    """(|s> + sign*|a>)/sqrt2 in the collective basis; sign=+1 is |01>, sign=-1 is |10>."""
    if sign not in (1, -1):
        raise ContractError(f"sign must be +1 or -1, got {sign!r}.")
    return StateVector([0.0, SQRT1_2, sign * SQRT1_2, 0.0], Basis.COLLECTIVE)


# -------------------------------------------------------------
# OPERATIONS
# -------------------------------------------------------------
def to_collective(s):
    _check_basis(Basis.PRODUCT, s.basis)
    return StateVector(U_B @ s.amplitudes, Basis.COLLECTIVE)


def to_product(s):
    _check_basis(Basis.COLLECTIVE, s.basis)
    return StateVector(U_B.conj().T @ s.amplitudes, Basis.PRODUCT)


def apply(op, s):
    """Matrix-vector product, no renormalization."""
    _check_basis(op.basis, s.basis, "state")
    return StateVector(op.entries @ s.amplitudes, s.basis)


def populations(s):
    """(P_g, P_s, P_a, P_e); product-tagged input is transformed first."""
    if s.basis is Basis.PRODUCT:
        s = to_collective(s)
    p = np.abs(s.amplitudes) ** 2
    return tuple(float(x) for x in p)


def product_populations(s):
    """(P_00, P_01, P_10, P_11)."""
    if s.basis is Basis.COLLECTIVE:
        s = to_product(s)
    p = np.abs(s.amplitudes) ** 2
    return tuple(float(x) for x in p)
