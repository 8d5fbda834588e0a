"""The nilpotent group acting on L^2(R), truncated to a Hermite basis.

Generators are the exact tridiagonal matrices of d/dx and -ix; the central
generator is a multiple of the identity whose sign follows the package-wide
``x3_sign`` convention (see ``liecore``).  The group action is available by
two independent routes:

* ``group_action_analytic`` evaluates the phase/modulation/translation
  formula at shifted quadrature nodes and projects back onto the basis;
* ``group_action_factored`` multiplies one-parameter matrix exponentials
  in coordinates of the second kind.

Cross-validation of the two routes is one of the package's main checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from . import liecore
from .errors import AccuracyError, UsageError
from .hermite import (
    QuadratureSpec,
    derivative_matrix,
    evaluate_series,
    gauss_hermite,
    hermite_functions,
    position_matrix,
)
from .liecore import GroupElement, group_inverse, second_kind_coords
from .scale import BoundCheck, GeneratorFamily, ScaleChain, scale_norm

UNITARITY_DEFECT_TOL = 1e-6


def support_bound(phi) -> int:
    """Index of the highest nonzero coefficient (0 for the zero vector)."""
    phi = np.asarray(phi)
    nz = np.nonzero(np.abs(phi) > 0)[0]
    return int(nz[-1]) if nz.size else 0


def effective_support(phi, rtol: float = 1e-8) -> int:
    """Highest mode carrying more than ``rtol`` of the vector's norm.

    Action outputs acquire numerically tiny tails across the whole
    truncation; those are harmless to feed back in, so preconditions on
    support use this measure rather than exact zeros.  Mass the
    precondition cannot see is bounded by rtol^2 of the squared norm,
    far below the unitarity-defect guard that runs on every action.
    """
    phi = np.asarray(phi)
    cutoff = rtol * float(np.linalg.norm(phi))
    nz = np.nonzero(np.abs(phi) > cutoff)[0]
    return int(nz[-1]) if nz.size else 0


@dataclass(frozen=True)
class SchwartzVector:
    """Coefficient vector in the Hermite basis with an explicit support bound."""

    coeffs: np.ndarray
    support_bound: int

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 1:
            raise UsageError("coefficients must form a 1-d vector")
        if self.support_bound >= coeffs.size:
            raise UsageError("support_bound outside the truncation")
        if np.any(np.abs(coeffs[self.support_bound + 1 :]) > 0):
            raise UsageError("coefficients beyond support_bound must be exactly zero")
        object.__setattr__(self, "coeffs", coeffs)

    @staticmethod
    def from_coeffs(coeffs) -> "SchwartzVector":
        coeffs = np.asarray(coeffs, dtype=complex)
        return SchwartzVector(coeffs, support_bound(coeffs))


def _as_coeffs(phi) -> np.ndarray:
    if isinstance(phi, SchwartzVector):
        return phi.coeffs
    return np.asarray(phi, dtype=complex)


class HermiteHeisenberg:
    """Truncated generators and group action on N Hermite modes."""

    def __init__(self, N: int, x3_sign: str = "consistent"):
        if N < 4:
            raise UsageError("need at least 4 modes")
        self.N = int(N)
        self.x3_sign = x3_sign
        self.x1 = derivative_matrix(N).astype(complex)
        self.x2 = (-1j) * position_matrix(N).astype(complex)
        self.x3 = liecore.x3_sign_factor(x3_sign) * np.eye(N, dtype=complex)
        self.gens = (self.x1, self.x2, self.x3)
        self.quad = QuadratureSpec.for_dim(N)

    @property
    def scale_family(self) -> GeneratorFamily:
        """Family entering the norm recursion: the two non-central generators."""
        return GeneratorFamily(
            dim=self.N,
            gens=(self.x1, self.x2),
            labels=("X1", "X2"),
            interior_bound=self.N - 1,
        )

    def generator(self, x_coeffs) -> np.ndarray:
        """Matrix of the algebra element with the given basis coefficients."""
        a, b, c = (complex(v) for v in x_coeffs)
        return a * self.x1 + b * self.x2 + c * self.x3

    def automorphism(self, g: GroupElement) -> np.ndarray:
        return liecore.automorphism_matrix(g, self.x3_sign)

    @lru_cache(maxsize=4)
    def _action_tables(self, node_count: int):
        xs, ws = gauss_hermite(node_count)
        H = hermite_functions(xs, self.N)
        return xs, ws, H

    def action_analytic(
        self,
        g: GroupElement,
        phi,
        quad: QuadratureSpec | None = None,
        defect_tol: float = UNITARITY_DEFECT_TOL,
    ) -> np.ndarray:
        """Coefficients of x -> exp(-i xi3) exp(-i x xi2) phi(x + xi1).

        The represented function is evaluated at shifted quadrature nodes
        and projected back onto the first N modes.  The action is unitary,
        so any drop in the squared norm measures mass pushed past the
        truncation; a drop above ``defect_tol`` raises ``AccuracyError``.
        """
        phi = _as_coeffs(phi)
        if phi.shape != (self.N,):
            raise UsageError(f"vector must have {self.N} modes, got {phi.shape}")
        sb = effective_support(phi)
        if sb > self.N // 2:
            raise UsageError(
                f"effective support {sb} exceeds N/2 = {self.N // 2}; "
                "translation and modulation would spread past the guard band"
            )
        quad = quad or self.quad
        xs, ws, H = self._action_tables(quad.node_count)
        shifted = evaluate_series(phi, xs + g.xi1)
        integrand = np.exp(-1j * g.xi3) * np.exp(-1j * xs * g.xi2) * shifted
        out = H @ (ws * integrand)
        defect = float(np.vdot(phi, phi).real - np.vdot(out, out).real)
        if abs(defect) > defect_tol * max(1.0, float(np.vdot(phi, phi).real)):
            raise AccuracyError(
                f"projection lost {defect:.3e} of the squared norm for g="
                f"({g.xi1:g},{g.xi2:g},{g.xi3:g})",
                residual=defect,
            )
        return out

    @lru_cache(maxsize=2)
    def _factor_cache(self):
        # eigen-decompositions of the Hermitian squares i*X1 and x; the
        # factored action only needs exponentials of the two tridiagonals
        h1 = 1j * self.x1
        w1, v1 = np.linalg.eigh(0.5 * (h1 + h1.conj().T))
        x = position_matrix(self.N)
        w2, v2 = np.linalg.eigh(x)
        return (w1, v1), (w2, v2)

    def one_parameter(self, i: int, t: float, method: str = "expm") -> np.ndarray:
        """Matrix of exp(t X_i) for a basis generator (i in 1..3).

        ``method="expm"`` uses scaling-and-squaring; ``method="eigh"``
        exponentiates through the Hermitian eigendecomposition, which keeps
        the factors exactly unitary for arbitrarily large t.
        """
        if i == 3:
            return np.exp(t * liecore.x3_sign_factor(self.x3_sign)) * np.eye(
                self.N, dtype=complex
            )
        if i not in (1, 2):
            raise UsageError("generator index must be 1, 2, or 3")
        if method == "expm":
            X = self.x1 if i == 1 else self.x2
            return scipy.linalg.expm(t * X)
        if method != "eigh":
            raise UsageError("method must be 'expm' or 'eigh'")
        (w1, v1), (w2, v2) = self._factor_cache()
        w, v = (w1, v1) if i == 1 else (w2, v2)
        return (v * np.exp(-1j * t * w)) @ v.conj().T

    def action_factored(self, g: GroupElement, method: str = "expm") -> np.ndarray:
        """Matrix of the action as exp(t1 X1) exp(t2 X2) exp(t3 X3)."""
        t1, t2, t3 = second_kind_coords(g)
        U = self.one_parameter(1, t1, method) @ self.one_parameter(2, t2, method)
        return U * np.exp(t3 * liecore.x3_sign_factor(self.x3_sign))


def hermite_generators(N: int, x3_sign: str = "consistent") -> HermiteHeisenberg:
    return HermiteHeisenberg(N, x3_sign)


def conjugation_residual(
    fam: HermiteHeisenberg,
    chain: ScaleChain,
    g: GroupElement,
    i: int,
    phi,
    n: int,
) -> float:
    """Level-n residual of T(g) X_i T(g^-1) phi against the conjugation law."""
    phi = _as_coeffs(phi)
    chain.family.require_interior(support_bound(phi), n + 1, what="conjugation check")
    if i not in (1, 2, 3):
        raise UsageError("generator index must be 1, 2, or 3")
    ginv = group_inverse(g)
    lhs = fam.action_analytic(g, fam.gens[i - 1] @ fam.action_analytic(ginv, phi))
    f = fam.automorphism(ginv)
    rhs = sum(f[i - 1, j] * (fam.gens[j] @ phi) for j in range(3))
    return scale_norm(chain, lhs - rhs, n)


def measured_conjugation_offset(
    fam: HermiteHeisenberg, g: GroupElement, i: int, phi
) -> complex:
    """Scalar c with T(g) X_i T(g^-1) phi ~= (X_i + c) phi, measured directly.

    Used to record the sign of the central offset rather than assert it.
    """
    phi = _as_coeffs(phi)
    ginv = group_inverse(g)
    lhs = fam.action_analytic(g, fam.gens[i - 1] @ fam.action_analytic(ginv, phi))
    diff = lhs - fam.gens[i - 1] @ phi
    denom = float(np.vdot(phi, phi).real)
    return complex(np.vdot(phi, diff) / denom)


@dataclass(frozen=True)
class ProbeResult:
    t_values: tuple
    residuals: tuple
    ratios: tuple
    converged: bool


def differentiability_probe(
    fam: HermiteHeisenberg,
    chain: ScaleChain,
    x_coeffs,
    phi,
    n: int,
    t_grid,
) -> ProbeResult:
    """Residuals of the difference quotient (T(exp(t x)) - I)/t phi -> X phi.

    The grid must be decreasing; first-order convergence means consecutive
    residuals shrink roughly like the step ratio.
    """
    phi = _as_coeffs(phi)
    t_grid = [float(t) for t in t_grid]
    if any(t <= 0 for t in t_grid) or any(
        b >= a for a, b in zip(t_grid, t_grid[1:])
    ):
        raise UsageError("t_grid must be positive and strictly decreasing")
    chain.family.require_interior(support_bound(phi), n + 1, what="differentiability probe")
    X = fam.generator(x_coeffs)
    ref = X @ phi
    residuals = []
    for t in t_grid:
        g = liecore.chart_exp(x_coeffs, t)
        diff = (fam.action_analytic(g, phi) - phi) / t - ref
        residuals.append(scale_norm(chain, diff, n))
    ratios = tuple(
        residuals[k] / residuals[k + 1] if residuals[k + 1] > 0 else np.inf
        for k in range(len(residuals) - 1)
    )
    converged = all(
        residuals[k + 1] <= residuals[k] * 1.1 for k in range(len(residuals) - 1)
    )
    return ProbeResult(tuple(t_grid), tuple(residuals), ratios, converged)


def norm_bound_sharp_check(
    fam: HermiteHeisenberg,
    chain: ScaleChain,
    g: GroupElement,
    phi,
    n: int,
    rel_slack: float = 1e-6,
) -> BoundCheck:
    """Check ||T(g) phi||_n <= (1 + xi1^2 + xi2^2)^{n/2} ||phi||_n."""
    phi = _as_coeffs(phi)
    chain.family.require_interior(support_bound(phi), n, what="sharp growth bound")
    lhs = scale_norm(chain, fam.action_analytic(g, phi), n)
    factor = (1.0 + g.xi1**2 + g.xi2**2) ** (n / 2.0)
    bound = factor * scale_norm(chain, phi, n)
    return BoundCheck(lhs, bound, lhs <= bound * (1.0 + rel_slack))
