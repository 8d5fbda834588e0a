"""Counter-based random sampling keyed by (seed, suite, case).

Every random draw in the verification suites comes from a Philox stream
whose 128-bit key is derived from the run seed and the case identity, so
cases are reproducible in isolation, independent of execution order, and
safe to run concurrently without shared generator state.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import UsageError
from .liecore import GroupElement


def case_rng(seed: int, suite: str, case: str) -> np.random.Generator:
    digest = hashlib.sha256(f"{int(seed)}|{suite}|{case}".encode()).digest()
    key = int.from_bytes(digest[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))


def interior_vector(rng: np.random.Generator, dim: int, modes: int) -> np.ndarray:
    """Normalized complex Gaussian coefficients on the leading ``modes`` modes."""
    if not (1 <= modes <= dim):
        raise UsageError(f"modes must lie in 1..{dim}, got {modes}")
    phi = np.zeros(dim, dtype=complex)
    phi[:modes] = rng.standard_normal(modes) + 1j * rng.standard_normal(modes)
    nrm = np.linalg.norm(phi)
    if nrm == 0:
        phi[0] = 1.0
        nrm = 1.0
    return phi / nrm


def group_element(rng: np.random.Generator, box: float) -> GroupElement:
    """Uniform chart coordinates in the cube |xi_k| <= box."""
    v = rng.uniform(-box, box, size=3)
    return GroupElement(float(v[0]), float(v[1]), float(v[2]))
