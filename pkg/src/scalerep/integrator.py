"""Assembling a group representation from one-parameter generator groups.

Given one evaluator per basis generator (a map t -> matrix satisfying the
one-parameter group law, with the generator as its derivative at 0), the
representation of a chart element is the ordered product of the evaluators
at the coordinates of the second kind.  The checks here probe everything
that construction promises: the homomorphism property on the chart, the
derivative identities on both sides, the conjugation series

    T(t, X_i) X_j T(-t, X_i) = sum_n (t^n / n!) ad(X_i)^n X_j,

the dual (contragredient) representation, and the ladder criterion for
whether the whole thing extends boundedly to the ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import liecore
from .errors import UsageError
from .liecore import GroupElement, ad_series, group_multiply, second_kind_coords
from .scale import ScaleChain, scale_norm

CHART_BOX_DEFAULT = 2.0


@dataclass(frozen=True)
class IntegrableFamily:
    """Generators with their one-parameter evaluators and a chart map."""

    gens: tuple                 # d square matrices
    evaluators: tuple           # d callables t -> matrix
    labels: tuple
    chart_box: float = CHART_BOX_DEFAULT

    def __post_init__(self):
        if not (len(self.gens) == len(self.evaluators) == len(self.labels)):
            raise UsageError("gens, evaluators, and labels must pair up")
        gens = tuple(np.asarray(g, dtype=complex) for g in self.gens)
        object.__setattr__(self, "gens", gens)

    @property
    def d(self) -> int:
        return len(self.gens)

    @property
    def dim(self) -> int:
        return self.gens[0].shape[0]

    def generator(self, x_coeffs) -> np.ndarray:
        x_coeffs = np.asarray(x_coeffs, dtype=complex)
        if x_coeffs.shape != (self.d,):
            raise UsageError(f"algebra vector must have {self.d} coefficients")
        return sum(c * X for c, X in zip(x_coeffs, self.gens))

    def check_in_chart(self, g: GroupElement):
        if max(abs(g.xi1), abs(g.xi2), abs(g.xi3)) > self.chart_box:
            raise UsageError(
                f"group element ({g.xi1:g},{g.xi2:g},{g.xi3:g}) outside the "
                f"chart box |xi| <= {self.chart_box:g}"
            )


@dataclass(frozen=True)
class EvaluatorCheck:
    label: str
    group_law_residual: float
    derivative_residual: float


def evaluator_invariants(
    ifam: IntegrableFamily,
    phis,
    s: float = 0.3,
    t: float = 0.45,
    h: float = 1e-6,
) -> list:
    """Per generator: E(s)E(t) = E(s+t) on samples, and dE/dt(0) = X."""
    phis = [np.asarray(p, dtype=complex) for p in phis]
    out = []
    for label, E, X in zip(ifam.labels, ifam.evaluators, ifam.gens):
        law = 0.0
        der = 0.0
        Es, Et, Est = E(s), E(t), E(s + t)
        Eh, Emh = E(h), E(-h)
        for phi in phis:
            nrm = max(float(np.linalg.norm(phi)), 1e-300)
            law = max(law, float(np.linalg.norm(Es @ (Et @ phi) - Est @ phi)) / nrm)
            fd = (Eh @ phi - Emh @ phi) / (2 * h)
            der = max(der, float(np.linalg.norm(fd - X @ phi)) / nrm)
        out.append(EvaluatorCheck(label, law, der))
    return out


def integrate_chart(ifam: IntegrableFamily, g: GroupElement) -> np.ndarray:
    """Ordered product of the evaluators at the second-kind coordinates of g."""
    ifam.check_in_chart(g)
    ts = second_kind_coords(g)
    if len(ts) != ifam.d:
        raise UsageError(
            f"chart provides {len(ts)} coordinates but the family has {ifam.d} generators"
        )
    out = ifam.evaluators[0](ts[0])
    for E, t in zip(ifam.evaluators[1:], ts[1:]):
        out = out @ E(t)
    return out


def homomorphism_residual(
    ifam: IntegrableFamily,
    g: GroupElement,
    h: GroupElement,
    phi,
    chain: ScaleChain,
    n: int,
) -> float:
    """Level-n norm of T(g) T(h) phi - T(gh) phi."""
    gh = group_multiply(g, h)
    for el in (g, h, gh):
        ifam.check_in_chart(el)
    phi = np.asarray(phi, dtype=complex)
    lhs = integrate_chart(ifam, g) @ (integrate_chart(ifam, h) @ phi)
    rhs = integrate_chart(ifam, gh) @ phi
    return scale_norm(chain, lhs - rhs, n)


def int_identity_residual(
    ifam: IntegrableFamily,
    i: int,
    j: int,
    t: float,
    phi,
    chain: ScaleChain,
    n: int,
    tol: float = 1e-14,
    max_terms: int = 64,
) -> float:
    """Residual of the conjugation series identity applied to phi.

    Left side conjugates X_j by the i-th one-parameter group; right side
    is the ad-series, which terminates after two terms for the nilpotent
    instances in scope.
    """
    if not (1 <= i <= ifam.d and 1 <= j <= ifam.d):
        raise UsageError(f"generator indices must lie in 1..{ifam.d}")
    phi = np.asarray(phi, dtype=complex)
    chain.family.require_interior(
        _support(phi), n + 2, what="conjugation series check"
    )
    E = ifam.evaluators[i - 1]
    lhs = E(t) @ (ifam.gens[j - 1] @ (E(-t) @ phi))
    series = ad_series(ifam.gens[i - 1], ifam.gens[j - 1], t, tol=tol, max_terms=max_terms)
    return scale_norm(chain, lhs - series @ phi, n)


def _support(phi) -> int:
    nz = np.nonzero(np.abs(phi) > 0)[0]
    return int(nz[-1]) if nz.size else 0


@dataclass(frozen=True)
class DerivativeCheckRow:
    h: float
    residual_left: float      # against X T(e^{tx}) phi
    residual_right: float     # against T(e^{tx}) X phi


def derivative_identity_check(
    ifam: IntegrableFamily,
    x_coeffs,
    t: float,
    phi,
    chain: ScaleChain,
    n: int,
    h_grid=(1e-2, 5e-3, 2.5e-3),
) -> list:
    """Central differences of t -> T(exp(t x)) phi against both derivative forms.

    The derivative of the integrated subgroup equals the generator applied
    on either side; central differencing makes both residuals O(h^2).
    """
    phi = np.asarray(phi, dtype=complex)
    X = ifam.generator(x_coeffs)
    U = integrate_chart(ifam, liecore.chart_exp(x_coeffs, t))
    rows = []
    for h in h_grid:
        Up = integrate_chart(ifam, liecore.chart_exp(x_coeffs, t + h))
        Um = integrate_chart(ifam, liecore.chart_exp(x_coeffs, t - h))
        fd = (Up @ phi - Um @ phi) / (2 * h)
        rows.append(
            DerivativeCheckRow(
                h,
                scale_norm(chain, fd - X @ (U @ phi), n),
                scale_norm(chain, fd - U @ (X @ phi), n),
            )
        )
    return rows


def translated_derivative_residual(
    ifam: IntegrableFamily,
    x_coeffs,
    t: float,
    g: GroupElement,
    phi,
    chain: ScaleChain,
    n: int,
    h: float = 1e-3,
) -> float:
    """Residual of d/dt T(exp(t x) g) phi = X T(exp(t x) g) phi."""
    phi = np.asarray(phi, dtype=complex)
    X = ifam.generator(x_coeffs)
    mid = group_multiply(liecore.chart_exp(x_coeffs, t), g)
    up = group_multiply(liecore.chart_exp(x_coeffs, t + h), g)
    dn = group_multiply(liecore.chart_exp(x_coeffs, t - h), g)
    fd = (integrate_chart(ifam, up) @ phi - integrate_chart(ifam, dn) @ phi) / (2 * h)
    return scale_norm(chain, fd - X @ (integrate_chart(ifam, mid) @ phi), n)


def interpolation_constancy_residual(
    ifam: IntegrableFamily,
    x_coeffs,
    t: float,
    g: GroupElement,
    phi,
    chain: ScaleChain,
    n: int,
    s_grid=(0.0, 0.25, 0.5, 0.75, 1.0),
) -> float:
    """Spread of s -> T(exp(s x)) T(exp((t-s) x) g) phi over the grid.

    Constancy of this interpolating path is what forces the chart product
    to be a homomorphism; the residual is the largest level-n distance
    from the s = 0 value.
    """
    phi = np.asarray(phi, dtype=complex)
    values = []
    for s in s_grid:
        left = integrate_chart(ifam, liecore.chart_exp(x_coeffs, s * t))
        right = integrate_chart(
            ifam, group_multiply(liecore.chart_exp(x_coeffs, (1 - s) * t), g)
        )
        values.append(left @ (right @ phi))
    return max(scale_norm(chain, v - values[0], n) for v in values[1:])


def conjugation_series_vs_automorphism(
    ifam: IntegrableFamily,
    hermite_family,
    i: int,
    t: float,
    phi,
    chain: ScaleChain,
    n: int,
) -> float:
    """Match the ad-series conjugate against the automorphism-matrix rows.

    For g = exp(t x_i) the series coefficients of the conjugated generators
    are exactly the rows of the conjugation-law matrix at g^{-1}; this ties
    the series identity to the induced-representation law.
    """
    phi = np.asarray(phi, dtype=complex)
    g = liecore.chart_exp(tuple(1.0 if k == i - 1 else 0.0 for k in range(3)), t)
    f = hermite_family.automorphism(liecore.group_inverse(g))
    worst = 0.0
    for j in range(1, 4):
        series = ad_series(ifam.gens[i - 1], ifam.gens[j - 1], t)
        rhs = sum(f[j - 1, k] * (ifam.gens[k] @ phi) for k in range(3))
        worst = max(worst, scale_norm(chain, series @ phi - rhs, n))
    return worst


@dataclass(frozen=True)
class DualPairing:
    """Standard sesquilinear pairing of the truncation against a scale level.

    At finite dimension the test space, the ambient space, and the
    antidual coincide as sets; only the norms differ, so the pairing is
    the ambient inner product and nondegeneracy is automatic.  ``n``
    names the scale level used for test-side norms in reports.
    """

    chain: ScaleChain
    n: int

    def __post_init__(self):
        if not (0 <= self.n <= self.chain.n_max):
            raise UsageError(f"level {self.n} outside the chain (0..{self.chain.n_max})")

    def pair(self, phi, F) -> complex:
        phi = np.asarray(phi, dtype=complex)
        F = np.asarray(F, dtype=complex)
        return complex(np.vdot(phi, F))


def dual_operator(A: np.ndarray) -> np.ndarray:
    """Operator on the antidual side: <A phi, F> = <phi, dual(A) F>.

    With the truncation's standard pairing this is the conjugate
    transpose; the construction is involutive on the nose.
    """
    return np.asarray(A, dtype=complex).conj().T


def dual_group_element(Tg_inv: np.ndarray) -> np.ndarray:
    """V(g) from the representation matrix of g^{-1}."""
    return dual_operator(Tg_inv)


def pairing_residual(Tg: np.ndarray, phi, F) -> float:
    """|<T(g) phi, F> - <phi, V(g^-1) F>| with V(g^-1) = dual(T(g))."""
    phi = np.asarray(phi, dtype=complex)
    F = np.asarray(F, dtype=complex)
    lhs = complex(np.vdot(np.asarray(Tg) @ phi, F))
    rhs = complex(np.vdot(phi, dual_operator(Tg) @ F))
    return abs(lhs - rhs)


def dual_generator_residual(
    ifam: IntegrableFamily, i: int, F, h: float = 1e-4
) -> float:
    """Finite-difference generator of t -> V(exp(t x_i)) against -dual(X_i).

    V(t) applied to a functional is dual(E(-t)); the derivative at 0 is
    minus the dual of the generator.
    """
    F = np.asarray(F, dtype=complex)
    E = ifam.evaluators[i - 1]
    Vp = dual_operator(E(-h)) @ F
    Vm = dual_operator(E(h)) @ F
    fd = (Vp - Vm) / (2 * h)
    target = -dual_operator(ifam.gens[i - 1]) @ F
    return float(np.linalg.norm(fd - target)) / max(float(np.linalg.norm(F)), 1e-300)


@dataclass(frozen=True)
class ExtensionVerdict:
    label: str
    sizes: tuple
    norms: tuple
    growth_exponent: float
    verdict: str            # "extends" | "does not extend"


def extension_probe(ladder, t: float, label: str = "") -> ExtensionVerdict:
    """Classify a generator by ambient-norm growth of exp(t X) along a ladder.

    ``ladder`` is a list of (size, matrix_of_exp_tX).  A bounded extension
    leaves the ambient operator norm flat as the truncation grows; an
    unbounded one shows power-law growth.  The verdict is read off the
    log-log slope: below 0.1 extends, above 0.5 does not; anything between
    is refused as inconclusive rather than guessed.
    """
    if len(ladder) < 3:
        raise UsageError("extension probe needs at least 3 ladder points")
    sizes = tuple(int(s) for s, _ in ladder)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise UsageError("ladder sizes must be strictly increasing")
    norms = tuple(float(np.linalg.norm(np.asarray(U), 2)) for _, U in ladder)
    slope = float(
        np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(np.asarray(norms)), 1)[0]
    )
    if slope < 0.1:
        verdict = "extends"
    elif slope > 0.5:
        verdict = "does not extend"
    else:
        verdict = "inconclusive"
    return ExtensionVerdict(label, sizes, norms, slope, verdict)
