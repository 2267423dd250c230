# tensor_core.py - small dense complex linear algebra
"""Dense complex matrices and vectors at the sizes spinor algebra needs.

Matrices are read-only ``numpy`` complex128 arrays; scalars are plain
``complex``. Everything here is a pure function.
"""
import json
from typing import Any, Dict, List, Sequence

import numpy as np
import scipy.linalg

from config import RANK_TOL


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(a: Any) -> np.ndarray:
    """Validate and convert to a read-only complex128 matrix."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"Expected a non-empty 2D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("Matrix entries must be finite")
    return _frozen(m)


def as_vector(v: Any) -> np.ndarray:
    """Validate and convert to a read-only complex128 vector."""
    x = np.array(v, dtype=np.complex128)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError(f"Expected a non-empty 1D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("Vector entries must be finite")
    return _frozen(x)


def as_scalar(z: Any) -> complex:
    c = complex(z)
    if not (np.isfinite(c.real) and np.isfinite(c.imag)):
        raise ValueError(f"Scalar must be finite, got {z!r}")
    return c


def identity(n: int) -> np.ndarray:
    return _frozen(np.eye(n, dtype=np.complex128))


def _require_square(a: np.ndarray, what: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{what} requires a square matrix, got {a.shape[0]}x{a.shape[1]}")


def kron(a: Any, b: Any) -> np.ndarray:
    """Kronecker product; entry [(i*rb+k),(j*cb+l)] = a[i,j]*b[k,l]."""
    return _frozen(np.kron(as_matrix(a), as_matrix(b)))


def kron_all(factors: Sequence[Any]) -> np.ndarray:
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def kron_vectors(vectors: Sequence[Any]) -> np.ndarray:
    if not vectors:
        raise ValueError("kron_vectors needs at least one factor")
    out = as_vector(vectors[0])
    for v in vectors[1:]:
        out = np.kron(out, as_vector(v))
    return _frozen(out)


def nullspace(a: Any, tol: float = RANK_TOL) -> List[np.ndarray]:
    """Orthonormal basis of {v : |a v| <= tol*|a|*|v|}, empty for full rank.

    Rank is decided on the singular values, relative to the largest one.
    """
    m = as_matrix(a)
    _require_square(m, "nullspace")
    if tol <= 0:
        raise ValueError("tol must be positive")
    basis = scipy.linalg.null_space(m, rcond=tol)
    return [_frozen(np.array(basis[:, k])) for k in range(basis.shape[1])]


def det(a: Any) -> complex:
    m = as_matrix(a)
    _require_square(m, "det")
    return complex(np.linalg.det(m))


def _same_square(a: np.ndarray, b: np.ndarray) -> None:
    _require_square(a, "commutator")
    if a.shape != b.shape:
        raise ValueError(f"Dimension mismatch: {a.shape} vs {b.shape}")


def anticommutator(a: Any, b: Any) -> np.ndarray:
    x, y = as_matrix(a), as_matrix(b)
    _same_square(x, y)
    return _frozen(x @ y + y @ x)


def commutator(a: Any, b: Any) -> np.ndarray:
    x, y = as_matrix(a), as_matrix(b)
    _same_square(x, y)
    return _frozen(x @ y - y @ x)


def dagger(a: Any) -> np.ndarray:
    return _frozen(np.conj(as_matrix(a)).T)


def max_abs(a: Any) -> float:
    """Largest entry modulus; the residual measure used by all reports."""
    return float(np.max(np.abs(np.asarray(a)))) if np.size(a) else 0.0


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary from the QR of a complex Gaussian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return _frozen(q * (d / np.abs(d)))


# --- JSON matrix format ---

def matrix_to_dict(a: Any) -> Dict[str, Any]:
    m = as_matrix(a)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_dict(data: Dict[str, Any]) -> np.ndarray:
    rows, cols = int(data["rows"]), int(data["cols"])
    entries = data["entries"]
    if len(entries) != rows * cols:
        raise ValueError(f"Expected {rows * cols} entries, got {len(entries)}")
    flat = [complex(re, im) for re, im in entries]
    return as_matrix(np.array(flat).reshape(rows, cols))


def vector_to_list(v: Any) -> List[List[float]]:
    return [[float(z.real), float(z.imag)] for z in as_vector(v)]


def matrix_to_json(a: Any) -> str:
    return json.dumps(matrix_to_dict(a))


def matrix_from_json(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))
