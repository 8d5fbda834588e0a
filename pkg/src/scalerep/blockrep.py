"""Block generators on truncated l2 and their polynomial group representation.

Block n (1-based) of the three generators carries the 3x3 elementary
operators scaled by n, n, and n^2 respectively:

    chi1 (x, y, z) = (y, 0, 0)
    chi2 (x, y, z) = (0, z, 0)
    chi3 (x, y, z) = (z, 0, 0)

The n^2 weight on the third generator is what makes the product relation
X_i X_j = delta_{1i} delta_{2j} X_3 hold blockwise exactly (n * n = n^2),
so every exponential is affine, the representation

    T(xi) = I + xi1 X1 + xi2 X2 + xi3 X3

is an exact homomorphism, and the norm chain collapses to two inequivalent
norms.  At truncation M the operators have norm exactly M, which is the
measurable footprint of their unboundedness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .liecore import GroupElement
from .scale import GeneratorFamily, ScaleChain, build_scale_chain

CHI1 = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
CHI2 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
CHI3 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
CHIS = (CHI1, CHI2, CHI3)


def chi_matrix(coeffs) -> np.ndarray:
    """3x3 matrix of the algebra element (alpha, beta, gamma): v -> (alpha y + gamma z, beta z, 0)."""
    a, b, c = (float(v) for v in coeffs)
    return a * CHI1 + b * CHI2 + c * CHI3


@dataclass(frozen=True)
class BlockGeneratorFamily:
    """The three 3M x 3M block-diagonal generators at block count M."""

    M: int
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray

    @property
    def dim(self) -> int:
        return 3 * self.M

    @property
    def gens(self) -> tuple:
        return (self.x1, self.x2, self.x3)

    def scale_family(self) -> GeneratorFamily:
        # block-diagonal, hence exact at every truncation: applications
        # spread no support and no guard band is consumed
        return GeneratorFamily(
            dim=self.dim,
            gens=self.gens,
            labels=("X1", "X2", "X3"),
            interior_bound=self.dim,
            band_growth=0,
        )

    def product_relation_residual(self) -> float:
        """Max-entry residual of X_i X_j - delta_{1i} delta_{2j} X_3 over all pairs."""
        worst = 0.0
        for i, Xi in enumerate(self.gens):
            for j, Xj in enumerate(self.gens):
                target = self.x3 if (i, j) == (0, 1) else 0.0
                worst = max(worst, float(np.max(np.abs(Xi @ Xj - target))))
        return worst


def block_generators(M: int) -> BlockGeneratorFamily:
    if M < 1:
        raise UsageError("block count M must be >= 1")
    n = np.arange(1, M + 1, dtype=float)
    x1 = np.kron(np.diag(n), CHI1)
    x2 = np.kron(np.diag(n), CHI2)
    x3 = np.kron(np.diag(n * n), CHI3)
    fam = BlockGeneratorFamily(M, x1, x2, x3)
    residual = fam.product_relation_residual()
    if residual != 0.0:
        raise AssertionError(f"block weights broke the product relation: {residual}")
    return fam


def rep_operator(g: GroupElement, fam: BlockGeneratorFamily) -> np.ndarray:
    """Affine representation I + xi1 X1 + xi2 X2 + xi3 X3."""
    return (
        np.eye(fam.dim)
        + g.xi1 * fam.x1
        + g.xi2 * fam.x2
        + g.xi3 * fam.x3
    )


def rep_homomorphism_residual(
    fam: BlockGeneratorFamily, g: GroupElement, h: GroupElement
) -> float:
    """Relative max-entry residual of T(g) T(h) - T(gh).

    Zero in exact arithmetic; measured relative to the entry scale of
    T(gh), whose entries grow like M^2, so float rounding does not
    masquerade as an algebra failure.
    """
    from .liecore import group_multiply

    lhs = rep_operator(g, fam) @ rep_operator(h, fam)
    rhs = rep_operator(group_multiply(g, h), fam)
    scale = max(1.0, float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(lhs - rhs))) / scale


def two_norm_chain(fam: BlockGeneratorFamily, n_max: int = 2) -> ScaleChain:
    """Norm chain of the block family (collapses beyond level 1)."""
    return build_scale_chain(fam.scale_family(), n_max)


def collapse_identity_residual(fam: BlockGeneratorFamily, chain: ScaleChain) -> float:
    """Residual of G_2 = I + 2 sum_i X_i^T X_i + X_3^T X_3.

    Expanding the recursion with the product relation shows the level-2
    Gram form is this fixed polynomial in the generators; all higher
    levels follow the same collapse.
    """
    if chain.n_max < 2:
        raise UsageError("need the chain built to level 2")
    expected = np.eye(fam.dim, dtype=complex)
    for X in fam.gens:
        expected = expected + 2.0 * (X.T @ X)
    expected = expected + fam.x3.T @ fam.x3
    return float(np.max(np.abs(chain.gram(2) - expected)))


def norm_ratio_bounds() -> tuple:
    """Admissible range of ||phi||_2 / ||phi||_1 after the collapse."""
    return (1.0, np.sqrt(3.0))


@dataclass(frozen=True)
class NormEquivalenceReport:
    """Observed ||.||_2 / ||.||_1 ratio range against the collapse window."""

    ratio_min: float
    ratio_max: float
    sample_count: int
    within_bounds: bool


def norm_equivalence_report(
    chain: ScaleChain, phis, slack: float = 1e-12
) -> NormEquivalenceReport:
    """Measure the two-norm equivalence window on sample vectors."""
    from .scale import scale_norm

    lo_b, hi_b = norm_ratio_bounds()
    lo, hi = np.inf, 0.0
    count = 0
    for phi in phis:
        phi = np.asarray(phi, dtype=complex)
        denom = scale_norm(chain, phi, 1)
        if denom == 0:
            continue
        ratio = scale_norm(chain, phi, 2) / denom
        lo, hi = min(lo, ratio), max(hi, ratio)
        count += 1
    if count == 0:
        raise UsageError("need at least one nonzero sample vector")
    ok = lo >= lo_b - slack and hi <= hi_b + slack
    return NormEquivalenceReport(float(lo), float(hi), count, bool(ok))


def unboundedness_growth(fam_sizes) -> list:
    """Largest singular value of X_1 per truncation size; equals M exactly."""
    rows = []
    for M in fam_sizes:
        fam = block_generators(int(M))
        sigma = float(np.linalg.norm(fam.x1, 2))
        rows.append((int(M), sigma))
    return rows


@dataclass(frozen=True)
class NilpotentResolvent:
    matrix: np.ndarray
    identity_residual: float    # worst over both factor orders
    operator_norm: float


def nilpotent_resolvent(
    fam: BlockGeneratorFamily, i: int, lam: complex
) -> NilpotentResolvent:
    """Resolvent candidate (lam I + X_i) / lam^2 forced by nilpotency.

    The factorization (lam - X_i)(lam + X_i) = lam^2 I pins the resolvent
    to this unbounded candidate for every nonzero lam; its operator norm
    grows like M / |lam|^2, the truncation-level footprint of an empty
    resolvent set.  lam = 0 is refused: the range of X_i is not dense.
    """
    lam = complex(lam)
    if lam == 0:
        raise UsageError("lam = 0 is excluded: the generator range is not dense")
    if i not in (1, 2, 3):
        raise UsageError("generator index must be 1, 2, or 3")
    X = fam.gens[i - 1]
    I = np.eye(fam.dim)
    R = (lam * I + X) / lam**2
    A = lam * I - X
    residual = max(
        float(np.max(np.abs(A @ R - I))),
        float(np.max(np.abs(R @ A - I))),
    )
    return NilpotentResolvent(R, residual, float(np.linalg.norm(R, 2)))


def exp_generator(fam: BlockGeneratorFamily, i: int, t: float) -> np.ndarray:
    """exp(t X_i) = I + t X_i, exact by nilpotency of order two."""
    if i not in (1, 2, 3):
        raise UsageError("generator index must be 1, 2, or 3")
    return np.eye(fam.dim) + t * fam.gens[i - 1]


def exp_norm_closed_form(M: int, t: float) -> float:
    """Largest singular value of I + t X_1: (|t| M + sqrt(t^2 M^2 + 4)) / 2."""
    tm = abs(t) * M
    return 0.5 * (tm + np.sqrt(tm * tm + 4.0))


def nonextendability_evidence(fam_sizes, t: float) -> list:
    """Rows (M, measured ||exp(t X_1)||, closed form); diverges with M."""
    rows = []
    for M in fam_sizes:
        fam = block_generators(int(M))
        measured = float(np.linalg.norm(exp_generator(fam, 1, t), 2))
        rows.append((int(M), measured, exp_norm_closed_form(int(M), t)))
    return rows


def h1_operator_norm(fam: BlockGeneratorFamily, g: GroupElement) -> float:
    """Exact level-1 operator norm of T(g), computed blockwise.

    On block n the level-1 Gram form is diag(1, 1 + n^2, 1 + n^2 + n^4)
    and T(g) is the unit upper-triangular 3x3 with entries (xi1 n,
    xi2 n, xi3 n^2), so the norm is a max over M tiny similarity
    transforms.  Its limit as n grows is finite, which is the measured
    form of continuity surviving every truncation size.
    """
    worst = 0.0
    for n in range(1, fam.M + 1):
        d = np.array([1.0, 1.0 + n**2, 1.0 + n**2 + n**4])
        T = np.array(
            [
                [1.0, g.xi1 * n, g.xi3 * n**2],
                [0.0, 1.0, g.xi2 * n],
                [0.0, 0.0, 1.0],
            ]
        )
        Mblk = (np.sqrt(d)[:, None] * T) / np.sqrt(d)[None, :]
        worst = max(worst, float(np.linalg.norm(Mblk, 2)))
    return worst
