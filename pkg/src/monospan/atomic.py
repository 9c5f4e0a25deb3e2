"""Atomic subspaces, singular inner functions, and model-space projections.

A boundary atom tau (|tau| = 1) of mass w determines the singular inner
function S_{tau,w}(z) = exp(-w (tau+z)/(tau-z)) and an atomic subspace of
L2[0,1] whose transform is the model space (S_{tau,w} H^2)-perp.  The
squared norm of the projection of x^s onto the atomic space has an exact
closed form: with s = u + iv,

    tau = 1:   [1 - exp(-2w (1+2u))] / (1+2u)
    tau != 1:  [1 - exp(-2 wp (1+2u) / ((1+2u)^2 + 4 (delta-v)^2))] / (1+2u)

where c is the real number with tau = (2ic + 1)/(2ic - 1), and
wp = (1 + 4c^2) w.  The first line is the c -> infinity limit of the
second.  For finitely atomic measures there is no closed form; a
truncated Toeplitz projection T_phi T_phibar serves as the independent
numerical route, with its truncation sensitivity always reported.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import ExponentLike, as_exponent
from .errors import (
    ConvergenceWarning,
    DomainError,
    NumericalError,
    SizeLimitError,
    TruncationWarning,
)
from .laguerre import LaguerreExpansion

_MODEL_N_MAX = 8192
_ATOM_COLLISION = 1e-14


def _check_unimodular(tau: complex) -> complex:
    tau = complex(tau)
    if abs(abs(tau) - 1) > 1e-12:
        raise DomainError(f"atom must lie on the unit circle, got |tau| = {abs(tau)}")
    return tau


@dataclass(frozen=True)
class AtomicSpaceParams:
    """A single boundary atom tau with mass w, plus the derived (c, wp).

    c solves 2ic = (tau+1)/(tau-1); it is provably real for unimodular tau
    and asserted so (a complex residue above 1e-12 is an error, not
    something to round away silently).  At tau = 1 the quotient
    degenerates: c is None and wp = (1+4c^2) w collapses to w.
    """

    tau: complex
    w: float
    c: float | None = field(init=False)
    wp: float = field(init=False)

    def __post_init__(self) -> None:
        tau = _check_unimodular(self.tau)
        object.__setattr__(self, "tau", tau)
        if not self.w > 0:
            raise DomainError(f"atom mass must be positive, got {self.w}")
        if abs(tau - 1) < 1e-12:
            object.__setattr__(self, "c", None)
            object.__setattr__(self, "wp", float(self.w))
            return
        d = -0.5j * (tau + 1) / (tau - 1)
        # a unimodularity defect of eps in tau shows up as about eps*|c|^2
        # in the imaginary part, so the reality assertion must scale with it
        if abs(d.imag) > 1e-12 * (1 + abs(d) ** 2):
            raise NumericalError(f"derived c = {d} is not real for tau = {tau}")
        cval = float(d.real)
        object.__setattr__(self, "c", cval)
        object.__setattr__(self, "wp", (1 + 4 * cval**2) * float(self.w))


def proj_norm_sq(p: AtomicSpaceParams, s: ExponentLike) -> float:
    """Squared norm of the projection of x^s onto the atomic space of p."""
    e = as_exponent(s)
    if e.logpow != 0:
        raise DomainError("projection formula requires logpow = 0")
    u, v = e.re, e.im
    if p.c is None:
        return (1 - math.exp(-2 * p.w * (1 + 2 * u))) / (1 + 2 * u)
    rate = (1 + 2 * u) / ((1 + 2 * u) ** 2 + 4 * (p.c - v) ** 2)
    return (1 - math.exp(-2 * p.wp * rate)) / (1 + 2 * u)


_DEFAULT_PROBES = (0.0, 0.5 + 0.5j, 1.0 - 1.0j)


def proj_profile(p: AtomicSpaceParams, probes=_DEFAULT_PROBES) -> tuple[float, ...]:
    """The projection-norm fingerprint of a space over a few probe exponents.

    Distinct (tau, w) produce distinct profiles; three probes suffice to
    separate the two parameters in practice, which is the formula-level
    shadow of the uniqueness theory.
    """
    return tuple(proj_norm_sq(p, s) for s in probes)


@dataclass(frozen=True)
class AtomicMeasure:
    """A finitely atomic measure on the circle: distinct atoms with masses."""

    atoms: tuple[tuple[complex, float], ...]

    def __post_init__(self) -> None:
        clean = []
        for tau, w in self.atoms:
            tau = _check_unimodular(tau)
            if not w > 0:
                raise DomainError(f"atom mass must be positive, got {w}")
            clean.append((tau, float(w)))
        for i in range(len(clean)):
            for j in range(i + 1, len(clean)):
                if abs(clean[i][0] - clean[j][0]) < _ATOM_COLLISION:
                    raise DomainError(f"atoms must be distinct, {clean[i][0]} repeats")
        object.__setattr__(self, "atoms", tuple(clean))

    @property
    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms)

    def moments(self, J: int) -> np.ndarray:
        """Trigonometric moments m_j = sum_k w_k tau_k^j for j = 0..J."""
        out = np.zeros(J + 1, dtype=complex)
        for tau, w in self.atoms:
            out += w * tau ** np.arange(J + 1)
        return out

    @classmethod
    def single(cls, tau: complex, w: float) -> "AtomicMeasure":
        return cls(((tau, w),))

    @classmethod
    def from_json(cls, payload: dict) -> "AtomicMeasure":
        try:
            raw = payload["atoms"]
        except (TypeError, KeyError):
            raise DomainError('measure JSON must be {"atoms": [...]}') from None
        atoms = []
        for a in raw:
            t = a["tau"]
            tau = complex(t[0], t[1]) if isinstance(t, (list, tuple)) else complex(t)
            atoms.append((tau, float(a["w"])))
        return cls(tuple(atoms))

    def to_json(self) -> dict:
        return {"atoms": [{"tau": [t.real, t.imag], "w": w} for t, w in self.atoms]}


def singular_inner_taylor(tau: complex, w: float, N: int) -> np.ndarray:
    """First N Taylor coefficients of exp(-w (tau+z)/(tau-z)).

    For the atom at 1 the series B(z) satisfies (1-z)^2 B' = -2w B, giving
    the three-term recurrence

        (n+1) b_{n+1} = (2n - 2w) b_n - (n-1) b_{n-1},  b_0 = e^-w,

    which is stable to machine precision at every admissible length; a
    general atom is the rotation b_n tau^-n.
    """
    tau = _check_unimodular(tau)
    if w < 0:
        raise DomainError("singular inner mass must be nonnegative")
    if N < 1:
        raise DomainError("need at least one coefficient")
    b = np.zeros(N)
    b[0] = math.exp(-w)
    if N > 1:
        b[1] = -2 * w * b[0]
    for n in range(1, N - 1):
        b[n + 1] = ((2 * n - 2 * w) * b[n] - (n - 1) * b[n - 1]) / (n + 1)
    if abs(tau - 1) < 1e-15:
        return b.astype(complex)
    return b * tau ** (-np.arange(N))


@dataclass(frozen=True)
class InnerFunction:
    """The singular inner function attached to a finitely atomic measure."""

    measure: AtomicMeasure

    def evaluate(self, z) -> complex:
        from .sarason import DiskPoint

        zv = z.z if isinstance(z, DiskPoint) else DiskPoint(z).z
        for tau, _ in self.measure.atoms:
            if abs(zv - tau) < _ATOM_COLLISION:
                raise NumericalError(f"evaluation point {zv} collides with the atom {tau}")
        acc = 1.0 + 0j
        for tau, w in self.measure.atoms:
            acc *= cmath.exp(-w * (tau + zv) / (tau - zv))
        return acc

    def modulus(self, z) -> float:
        """|S(z)| = exp(-sum w_k Re((tau_k+z)/(tau_k-z))), without the phase."""
        from .sarason import DiskPoint

        zv = z.z if isinstance(z, DiskPoint) else DiskPoint(z).z
        expo = 0.0
        for tau, w in self.measure.atoms:
            expo -= w * ((tau + zv) / (tau - zv)).real
        return math.exp(expo)

    def taylor(self, N: int) -> np.ndarray:
        """First N Taylor coefficients of the product over all atoms."""
        if not self.measure.atoms:
            out = np.zeros(max(N, 1), dtype=complex)
            out[0] = 1.0
            return out
        acc = None
        for tau, w in self.measure.atoms:
            part = singular_inner_taylor(tau, w, N)
            acc = part if acc is None else np.convolve(acc, part)[:N]
        return acc


def inner_eval(S: InnerFunction, z) -> complex:
    """Value of the inner function at a disk point."""
    return S.evaluate(z)


def conjugation_identity_check(c: float, wp: float, z_grid) -> tuple[float, complex]:
    """Check S_{-1,wp} composed with psi against a constant times S_{tau,w}.

    psi(z) = ((1-ic) z + ic)/(1 + ic - ic z) is the disk automorphism with
    psi(tau) = -1, where tau = (2ic+1)/(2ic-1) and w = wp/(1+4c^2).  The
    two sides are computed independently on the grid; the constant is
    recovered as their ratio and returned together with the largest
    absolute deviation from exact proportionality.  The constant must come
    out unimodular; its failure would falsify the conjugation identity.
    """
    c = float(c)
    if not wp > 0:
        raise DomainError("mass parameter must be positive")
    if c == 0.0:
        tau = -1.0 + 0j
        w = float(wp)
    else:
        tau = (2j * c + 1) / (2j * c - 1)
        w = float(wp) / (1 + 4 * c * c)
    # Moebius sanity: the pole of the composed side must sit over the atom
    psi_tau = ((1 - 1j * c) * tau + 1j * c) / (1 + 1j * c - 1j * c * tau)
    if abs(psi_tau + 1) > 1e-10:
        raise NumericalError(f"psi(tau) = {psi_tau}, expected -1; parameterization broken")

    S_minus1 = InnerFunction(AtomicMeasure.single(-1.0, wp))
    S_tau = InnerFunction(AtomicMeasure.single(tau, w))
    lhs = []
    rhs = []
    for z in z_grid:
        from .sarason import DiskPoint

        zv = z.z if isinstance(z, DiskPoint) else DiskPoint(z).z
        psi_z = ((1 - 1j * c) * zv + 1j * c) / (1 + 1j * c - 1j * c * zv)
        lhs.append(S_minus1.evaluate(psi_z))
        rhs.append(S_tau.evaluate(zv))
    lhs_a = np.array(lhs)
    rhs_a = np.array(rhs)
    if np.any(np.abs(rhs_a) < 1e-280):
        raise DomainError("grid point too close to an atom: ratio not computable")
    ratios = lhs_a / rhs_a
    const = complex(np.mean(ratios))
    deviation = float(np.max(np.abs(lhs_a - const * rhs_a)))
    return deviation, const


def _toeplitz_analytic_apply(phi: np.ndarray, g: np.ndarray) -> np.ndarray:
    """T_phi g: multiply by phi and keep the first N coefficients."""
    return np.convolve(phi, g)[: len(g)]


def _toeplitz_coanalytic_apply(phi: np.ndarray, f: np.ndarray) -> np.ndarray:
    """T_phibar f: (T f)_m = sum_j conj(phi_j) f_{m+j}.

    Exact (not merely truncated) whenever f is supported on indices < N,
    because the discarded products all involve coefficients of f beyond N.
    """
    N = len(f)
    out = np.empty(N, dtype=complex)
    pc = np.conj(phi)
    for m in range(N):
        out[m] = np.dot(pc[: N - m], f[m:])
    return out


def model_space_distance(
    f: LaguerreExpansion,
    mu: AtomicMeasure,
    N: int = 4096,
    *,
    sensitivity_tol: float = 0.01,
) -> float:
    """Distance from f to the atomic space of mu, via Toeplitz truncation.

    In transform coordinates the atomic space is (phi H^2)-perp for the
    inner function phi of mu, so the distance is ||T_phi T_phibar f||.
    Both factors are compressions to N coefficients; the same quantity is
    recomputed at N/2 and a TruncationWarning is issued when the two
    disagree by more than sensitivity_tol relative.  The truncated value
    approaches the distance from below as N grows.

    An empty measure spans the whole space, so every distance is zero;
    this is a guarded special case, not a limit of the formula.
    """
    if N < 2:
        raise DomainError("truncation order too small")
    if N > _MODEL_N_MAX:
        raise SizeLimitError(f"truncation order {N} exceeds the limit {_MODEL_N_MAX}")
    if not mu.atoms:
        return 0.0

    def at(n: int) -> float:
        phi = InnerFunction(mu).taylor(n)
        fc = np.zeros(n, dtype=complex)
        m = min(n, len(f.coeffs))
        fc[:m] = f.coeffs[:m]
        g = _toeplitz_coanalytic_apply(phi, fc)
        h = _toeplitz_analytic_apply(phi, g)
        return float(np.linalg.norm(h))

    d_full = at(N)
    d_half = at(N // 2)
    if abs(d_full - d_half) > sensitivity_tol * max(d_full, 1e-9):
        warnings.warn(
            f"model-space distance is truncation-sensitive: {d_half:.6g} at N={N // 2} "
            f"vs {d_full:.6g} at N={N}",
            TruncationWarning,
            stacklevel=2,
        )
    return d_full


@dataclass(frozen=True)
class WeakStarReport:
    """Distances along a measure sequence, one row per test function."""

    distances: np.ndarray  # shape (num_functions, num_measures)
    limit_distances: np.ndarray  # shape (num_functions,)
    phi_gaps: np.ndarray  # H2 gap ||phi_n - phi|| per measure
    moment_deviations: np.ndarray  # weak-* test residuals per measure


def weakstar_experiment(
    mu_seq: list[AtomicMeasure],
    mu_limit: AtomicMeasure,
    test_functions: list[LaguerreExpansion],
    N: int = 2048,
    *,
    moment_order: int = 8,
) -> WeakStarReport:
    """Track dist(f, M(mu_n)) along a weak-star convergent measure sequence.

    Weak-star convergence is checked on trigonometric moments up to
    moment_order; a sequence whose final deviation has not shrunk below
    its initial deviation draws a ConvergenceWarning (the experiment still
    runs).  The H2 gap between the inner functions of mu_n and of the
    limit is reported alongside, since it controls the distance gap.
    """
    if not mu_seq:
        raise DomainError("empty measure sequence")
    if not test_functions:
        raise DomainError("no test functions supplied")
    m_limit = mu_limit.moments(moment_order)
    devs = np.array(
        [float(np.max(np.abs(mu.moments(moment_order) - m_limit))) for mu in mu_seq]
    )
    if len(mu_seq) >= 2 and devs[-1] > 1e-9 and devs[-1] > 0.9 * devs[0]:
        warnings.warn(
            f"moment test does not look weak-* convergent: deviation {devs[0]:.3g} -> "
            f"{devs[-1]:.3g} over the sequence",
            ConvergenceWarning,
            stacklevel=2,
        )
    phi_limit = InnerFunction(mu_limit).taylor(N)
    gaps = np.array(
        [float(np.linalg.norm(InnerFunction(mu).taylor(N) - phi_limit)) for mu in mu_seq]
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        dist = np.array(
            [
                [model_space_distance(f, mu, N) for mu in mu_seq]
                for f in test_functions
            ]
        )
        lim = np.array([model_space_distance(f, mu_limit, N) for f in test_functions])
    return WeakStarReport(dist, lim, gaps, devs)
