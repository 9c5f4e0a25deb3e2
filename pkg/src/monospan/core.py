"""Exponents, monomial inner products, Gram systems, and density verdicts.

Monomials live in L2[0,1]: x^s (ln x)^k with Re s > -1/2 (the half-plane S)
and log-multiplicity k >= 0.  The inner product <f, g> = integral of f(x)
conj(g(x)) over [0,1] is conjugate-linear in the second slot; this convention
is fixed here and used everywhere else in the package.  The closed form
behind every Gram entry is

    <x^a (ln x)^j, x^b (ln x)^k> = (-1)^(j+k) (j+k)! / (1 + a + conj(b))^(j+k+1),

the (j+k)-fold derivative of the Cauchy kernel 1/(1 + a + conj(b)).  Gram
matrices of monomial sets are therefore Cauchy-structured, Hermitian positive
definite, and exponentially ill-conditioned; solves fall back to extended
precision (mpmath) when the condition estimate passes EXTENDED_THRESHOLD.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

import mpmath as mp
import numpy as np

from .errors import (
    DomainError,
    IllConditioningWarning,
    NumericalError,
    SizeLimitError,
    WrongCriterionError,
)

HALF_PLANE_EDGE = -0.5
EXTENDED_THRESHOLD = 1e12
_EXTENDED_DPS_LADDER = (34, 50, 80, 120, 160)

ExponentLike = Union["Exponent", complex, float, int]


@dataclass(frozen=True)
class Exponent:
    """A monomial exponent: the function x^(re + i*im) * (ln x)^logpow."""

    re: float
    im: float = 0.0
    logpow: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"exponent components must be finite, got {self.re}+{self.im}j")
        if not self.re > HALF_PLANE_EDGE:
            raise DomainError(
                f"exponent {self.re}+{self.im}j lies outside the half-plane Re s > -1/2"
            )
        if not (isinstance(self.logpow, (int, np.integer)) and self.logpow >= 0):
            raise DomainError(f"logpow must be a nonnegative integer, got {self.logpow!r}")

    @property
    def s(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, z: complex, logpow: int = 0) -> "Exponent":
        z = complex(z)
        return cls(z.real, z.imag, logpow)

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "logpow": self.logpow}


def as_exponent(value: ExponentLike) -> Exponent:
    if isinstance(value, Exponent):
        return value
    return Exponent.from_complex(complex(value))


@dataclass(frozen=True)
class MonomialSet:
    """Ordered finite multiset of exponents generating a span M(S).

    Repeated (re, im) pairs must carry logpow values 0..m-1 exactly once
    each: a log power k > 0 is only admitted together with k-1.
    """

    entries: tuple[Exponent, ...]

    def __post_init__(self) -> None:
        keys = [(e.re, e.im, e.logpow) for e in self.entries]
        if len(set(keys)) != len(keys):
            seen = set()
            for e in self.entries:
                key = (e.re, e.im, e.logpow)
                if key in seen:
                    raise DomainError(
                        f"duplicate exponent entry (s={e.s}, logpow={e.logpow})"
                    )
                seen.add(key)
        if any(e.logpow for e in self.entries):
            powers: dict[tuple[float, float], set[int]] = {}
            for e in self.entries:
                powers.setdefault((e.re, e.im), set()).add(e.logpow)
            for (sr, si), ks in powers.items():
                if ks != set(range(len(ks))):
                    raise DomainError(
                        f"log powers for s={sr}+{si}j must be contiguous from 0, got {sorted(ks)}"
                    )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def from_exponents(cls, values: Iterable[ExponentLike]) -> "MonomialSet":
        return cls(tuple(as_exponent(v) for v in values))

    @classmethod
    def from_json(cls, payload: dict) -> "MonomialSet":
        try:
            raw = payload["exponents"]
        except (TypeError, KeyError):
            raise DomainError('monomial set JSON must be {"exponents": [...]}') from None
        entries = tuple(
            Exponent(float(e.get("re", 0.0)), float(e.get("im", 0.0)), int(e.get("logpow", 0)))
            for e in raw
        )
        return cls(entries)

    def to_json(self) -> dict:
        return {"exponents": [e.to_json() for e in self.entries]}


def as_monomial_set(values) -> MonomialSet:
    if isinstance(values, MonomialSet):
        return values
    return MonomialSet.from_exponents(values)


@dataclass(frozen=True)
class GramSystem:
    """Gram matrix of a monomial set with a condition estimate.

    Entry convention: matrix[i, j] = <m_i, m_j> (conjugation on the column
    entry), so for logpow-0 sets matrix[i, j] = 1/(1 + s_i + conj(s_j)).
    The matrix is Hermitian positive definite.  condition_estimate is the
    2-norm condition number from a double-precision SVD; for matrices that
    are singular at working precision it saturates near 1/eps and should be
    read as "at least this large".
    """

    set: MonomialSet
    matrix: np.ndarray
    condition_estimate: float


def monomial_inner(a: ExponentLike, b: ExponentLike) -> complex:
    """Inner product <x^a (ln x)^j, x^b (ln x)^k>, conjugating the b slot."""
    ea, eb = as_exponent(a), as_exponent(b)
    m = ea.logpow + eb.logpow
    denom = 1 + ea.s + eb.s.conjugate()
    return (-1) ** m * math.factorial(m) / denom ** (m + 1)


def gram_build(S, max_size: int = 64) -> GramSystem:
    """Assemble the Hermitian Gram matrix of a monomial set."""
    S = as_monomial_set(S)
    if len(S) == 0:
        raise DomainError("cannot build the Gram system of an empty set")
    if len(S) > max_size:
        raise SizeLimitError(f"monomial set has {len(S)} entries, limit is {max_size}")
    n = len(S)
    G = np.empty((n, n), dtype=complex)
    for i, mi in enumerate(S):
        for j, mj in enumerate(S):
            if j < i:
                G[i, j] = np.conj(G[j, i])
            else:
                G[i, j] = monomial_inner(mi, mj)
    try:
        cond = float(np.linalg.cond(G))
    except np.linalg.LinAlgError:
        cond = math.inf
    if not math.isfinite(cond):
        cond = math.inf
    return GramSystem(set=S, matrix=G, condition_estimate=cond)


@dataclass(frozen=True)
class DistanceResult:
    distance: float
    coefficients: np.ndarray
    condition_estimate: float
    precision: str


def _mp_inner(a: Exponent, b: Exponent):
    m = a.logpow + b.logpow
    denom = 1 + mp.mpc(a.re, a.im) + mp.mpc(b.re, -b.im)
    return (-1) ** m * mp.factorial(m) / denom ** (m + 1)


def _solve_extended(
    S: MonomialSet, f_moments: Callable[[Exponent], complex], f_norm_sq
) -> tuple[float, np.ndarray, int]:
    """Gram solve with an escalating-precision ladder.

    The Gram entries are rebuilt from the closed form at each precision and
    the pairing oracle is re-evaluated inside the precision context, so an
    mpmath-aware oracle contributes full-precision values.  A plain float
    oracle caps accuracy at double, which is the best its data supports.
    Escalation stops when two consecutive precisions agree on the distance.
    """
    n = len(S)
    prev = None
    for dps in _EXTENDED_DPS_LADDER:
        with mp.workdps(dps):
            G = mp.matrix(n, n)
            for i, mi in enumerate(S):
                for j, mj in enumerate(S):
                    # normal-equation matrix: row i pairs against m_i in the
                    # second slot, i.e. A[i,j] = <m_j, m_i>
                    G[i, j] = _mp_inner(mj, mi)
            r = mp.matrix([mp.mpc(f_moments(m)) for m in S])
            try:
                c = mp.lu_solve(G, r)
            except (ZeroDivisionError, ValueError) as exc:
                raise NumericalError(f"extended-precision Gram solve failed: {exc}") from exc
            q = mp.re(sum(mp.conj(c[i]) * r[i] for i in range(n)))
            d2 = mp.mpf(f_norm_sq) - q
            dist = float(mp.sqrt(d2)) if d2 > 0 else 0.0
        if prev is not None and abs(dist - prev) <= 1e-13 * (1.0 + dist):
            coeffs = np.array([complex(c[i]) for i in range(n)])
            return dist, coeffs, dps
        prev = dist
    raise NumericalError(
        "Gram solve did not stabilize on the extended-precision ladder "
        f"(last distance {prev})"
    )


def distance_to_span(
    f_moments: Callable[[Exponent], complex],
    f_norm_sq: float,
    S,
    *,
    precision: str = "double",
    max_size: int = 64,
) -> DistanceResult:
    """Distance from f to the span of a monomial set via Gram normal equations.

    `f_moments` must return <f, m> for each m in S (conjugation on m).  The
    returned distance is sqrt(max(0, f_norm_sq - quadratic form)).  With
    precision="double" the solve runs in float64 and falls back to mpmath
    once the condition estimate passes EXTENDED_THRESHOLD (a warning is
    issued); precision="extended" forces the mpmath path.  Pairing values
    may be mpmath numbers, which the extended path uses at full precision.
    """
    if precision not in ("double", "extended"):
        raise DomainError(f"unknown precision mode {precision!r}")
    if f_norm_sq < 0:
        raise DomainError("f_norm_sq must be nonnegative")
    S = as_monomial_set(S)
    gram = gram_build(S, max_size=max_size)
    cond = gram.condition_estimate
    use_extended = precision == "extended" or cond > EXTENDED_THRESHOLD
    if precision == "double" and cond > EXTENDED_THRESHOLD:
        warnings.warn(
            f"Gram condition estimate {cond:.2e} exceeds {EXTENDED_THRESHOLD:.0e}; "
            "switching to extended precision",
            IllConditioningWarning,
            stacklevel=2,
        )
    if use_extended:
        dist, coeffs, dps = _solve_extended(S, f_moments, f_norm_sq)
        return DistanceResult(dist, coeffs, cond, f"extended(dps={dps})")
    r = np.array([complex(f_moments(m)) for m in S])
    # <f - sum c_j m_j, m_i> = 0 gives conj(G) c = r with G[i,j] = <m_i, m_j>
    c = np.conj(np.linalg.solve(gram.matrix, np.conj(r)))
    q = float(np.real(np.vdot(c, r)))  # vdot conjugates its first argument
    d2 = f_norm_sq - q
    dist = math.sqrt(d2) if d2 > 0 else 0.0
    return DistanceResult(dist, c, cond, "double")


def monomial_pairing_oracle(t: ExponentLike) -> Callable[[Exponent], complex]:
    """Pairing oracle for a single monomial f = x^t (ln x)^k.

    Precision-aware: under an mpmath working precision above double (as set
    by the extended solve ladder) it returns full-precision mpc values, so
    ill-conditioned Gram solves are not capped by double-rounded pairings.
    """
    et = as_exponent(t)

    def oracle(m: Exponent):
        if mp.mp.dps > 25:
            return _mp_inner(et, m)
        return monomial_inner(et, m)

    return oracle


def monomial_distance_closed_form(t: ExponentLike, S) -> float:
    """dist(x^t, M(S)) for logpow-0 data, as a stable product of factors.

    Equals (2 Re t + 1)^(-1/2) * prod over s in S of |t - s| / |t + conj(s) + 1|.
    Every factor is < 1 (a pseudo-hyperbolic distance on the half-plane), so
    the running product is monotone; underflow to 0 is reported as 0.
    """
    et = as_exponent(t)
    S = as_monomial_set(S)
    if et.logpow != 0 or any(e.logpow != 0 for e in S):
        raise DomainError("closed-form distance requires logpow = 0 throughout")
    # set validation already guarantees distinct exponents once logpows are 0
    s_vals = np.fromiter((e.s for e in S), dtype=complex, count=len(S))
    t_val = et.s
    num = np.abs(t_val - s_vals)
    if np.any(num == 0.0):
        return 0.0
    factors = num / np.abs(t_val + np.conj(s_vals) + 1.0)
    return float(np.prod(factors)) / math.sqrt(2 * et.re + 1)


# --- density sequences and the Muntz-Szasz verdict ---------------------------


@dataclass(frozen=True)
class AffineSequence:
    """s_k = a*k + b for k = 0, 1, 2, ..."""

    a: complex
    b: complex = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    def term(self, k: int) -> complex:
        return self.a * k + self.b


@dataclass(frozen=True)
class GeometricSequence:
    """s_k = base * ratio^k for k = 0, 1, 2, ..."""

    base: complex
    ratio: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", complex(self.base))
        object.__setattr__(self, "ratio", float(self.ratio))
        if not self.ratio > 0:
            raise DomainError("geometric sequence ratio must be positive")
        if self.base == 0:
            raise DomainError("geometric sequence base must be nonzero")

    def term(self, k: int) -> complex:
        return self.base * self.ratio**k


SequenceLike = Union[AffineSequence, GeometricSequence, Sequence]


def _parse_complex_field(value) -> complex:
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(float(re), float(im))
    return complex(value)


def sequence_from_spec(spec) -> SequenceLike:
    """Build a sequence from JSON: affine, geometric, or explicit."""
    if isinstance(spec, (AffineSequence, GeometricSequence)):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "affine":
            return AffineSequence(
                _parse_complex_field(spec["a"]), _parse_complex_field(spec.get("b", 0.0))
            )
        if kind == "geometric":
            return GeometricSequence(
                _parse_complex_field(spec.get("base", 1.0)), float(spec["ratio"])
            )
        if kind == "explicit":
            return [_parse_complex_field(v) for v in spec["values"]]
        raise DomainError(f"unknown sequence kind {kind!r}")
    return list(spec)


def materialize_sequence(seq: SequenceLike, count: int) -> list[complex]:
    """First `count` terms; fast-growing generators stop before float overflow."""
    if isinstance(seq, (AffineSequence, GeometricSequence)):
        out: list[complex] = []
        for k in range(count):
            try:
                s = seq.term(k)
            except OverflowError:
                break
            if abs(s) > 1e300:
                break
            out.append(s)
        return out
    values = [complex(as_exponent(v).s) if isinstance(v, Exponent) else complex(v) for v in seq]
    return values[:count]


@dataclass(frozen=True)
class DensityVerdict:
    """Three-valued density verdict with the partial sums that support it."""

    verdict: str  # "dense" | "not-dense" | "undetermined"
    partial_sums: list[float] = field(repr=False)
    criterion: str = "complex"
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "criterion": self.criterion,
            "reason": self.reason,
            "terms_used": len(self.partial_sums),
            "final_partial_sum": self.partial_sums[-1] if self.partial_sums else 0.0,
        }


_CRITERIA = ("classical", "real", "complex")


def _criterion_terms(values: list[complex], criterion: str) -> np.ndarray:
    if criterion == "classical":
        for k, s in enumerate(values):
            if s.imag != 0 or s.real != int(s.real) or s.real < 0:
                raise WrongCriterionError(
                    f"classical criterion needs nonnegative integers, got s_{k} = {s}"
                )
            if k > 0 and not s.real > values[k - 1].real:
                raise WrongCriterionError("classical criterion needs a strictly increasing sequence")
        # the series starts where the exponents are positive; a leading 0 is legal
        return np.array([1.0 / s.real for s in values if s.real > 0])
    if criterion == "real":
        for k, s in enumerate(values):
            if s.imag != 0:
                raise WrongCriterionError(
                    f"real criterion needs real exponents, got s_{k} = {s}"
                )
        return np.array([(2 * s.real + 1) / ((2 * s.real + 1) ** 2 + 1) for s in values])
    if criterion == "complex":
        return np.array([(2 * s.real + 1) / abs(s + 1) ** 2 for s in values])
    raise DomainError(f"unknown criterion {criterion!r}; expected one of {_CRITERIA}")


def _symbolic_certificate(seq: SequenceLike, criterion: str) -> tuple[str, str] | None:
    """Pattern-match generator specs against the built-in comparison patterns."""
    if isinstance(seq, AffineSequence):
        a = complex(seq.a)
        if a == 0:
            return None
        if a.real > 0:
            return "dense", "harmonic-type lower bound: affine growth gives terms ~ C/k"
        if a.real == 0:
            if criterion == "complex":
                return "not-dense", "p-series majorant: imaginary affine growth gives terms ~ C/k^2"
            return None
    if isinstance(seq, GeometricSequence):
        if seq.ratio > 1:
            return "not-dense", f"geometric majorant: terms decay like {1 / seq.ratio:.3g}^k"
        if seq.ratio < 1:
            return "dense", "terms bounded below: exponents accumulate inside the half-plane"
    return None


def muntz_verdict(
    seq: SequenceLike,
    criterion: str = "complex",
    tail_window: int = 64,
    *,
    max_terms: int = 10000,
    sum_bound: float = 50.0,
    harmonic_floor: float = 1e-2,
    ratio_ceiling: float = 0.98,
) -> DensityVerdict:
    """Three-valued Muntz-Szasz density verdict for the span of {x^(s_k)}.

    criterion selects the series: "classical" sums 1/s_k over strictly
    increasing nonnegative integers, "real" sums (2s+1)/((2s+1)^2+1) over
    real exponents, "complex" sums (2 Re s + 1)/|s+1|^2.  The verdict is
    "dense" when a divergence certificate matches (symbolic pattern for
    generator specs, partial sums passing `sum_bound`, or a harmonic-type
    lower bound k*t_k >= harmonic_floor holding flat over the tail window),
    "not-dense" when a convergent majorant matches (geometric ratio under
    `ratio_ceiling`, or a p-series log-log slope <= -1.1 over the window),
    and "undetermined" otherwise.  A finite machine cannot decide series
    divergence; these are heuristic certificates and the third value is the
    honest fallback.
    """
    if criterion not in _CRITERIA:
        raise DomainError(f"unknown criterion {criterion!r}; expected one of {_CRITERIA}")
    if tail_window < 2:
        raise DomainError("tail_window must be at least 2")
    seq = sequence_from_spec(seq) if isinstance(seq, dict) else seq
    symbolic = _symbolic_certificate(seq, criterion)
    # a symbolic certificate decides the verdict from the generator alone;
    # keep the supporting partial sums short so fast growth cannot overflow
    count = max_terms if symbolic is None else min(max_terms, 256)
    values = materialize_sequence(seq, count)
    if not values:
        raise DomainError("empty exponent sequence")
    seen = set()
    for k, s in enumerate(values):
        if s.real <= HALF_PLANE_EDGE:
            raise DomainError(f"sequence entry s_{k} = {s} leaves the half-plane Re s > -1/2")
        if s in seen:
            raise DomainError(f"sequence entries must be distinct, s = {s} repeats")
        seen.add(s)
    terms = _criterion_terms(values, criterion)
    partial = list(np.cumsum(terms)) if len(terms) else [0.0]

    if symbolic is not None:
        verdict, reason = symbolic
        return DensityVerdict(verdict, partial, criterion, reason)

    if partial[-1] >= sum_bound:
        return DensityVerdict(
            "dense", partial, criterion,
            f"partial sums exceeded the configured bound {sum_bound:g} with positive terms",
        )
    window = terms[-min(tail_window, len(terms)):]
    k_idx = np.arange(len(terms) - len(window), len(terms)) + 1.0
    if len(window) >= 2 and np.all(window > 0):
        kt = k_idx * window
        log_k = np.log(k_idx)
        # slope of log(k t_k) against log k: ~0 for harmonic-type tails
        kt_slope = np.polyfit(log_k, np.log(kt), 1)[0]
        if np.min(kt) >= harmonic_floor and kt_slope >= -0.05:
            return DensityVerdict(
                "dense", partial, criterion,
                f"harmonic-type lower bound: k*t_k >= {np.min(kt):.3g} over the tail window",
            )
        ratios = window[1:] / window[:-1]
        if np.max(ratios) <= ratio_ceiling:
            return DensityVerdict(
                "not-dense", partial, criterion,
                f"geometric majorant: consecutive term ratios <= {np.max(ratios):.3g}",
            )
        fit = np.polyfit(log_k, np.log(window), 1)
        residual = float(np.max(np.abs(np.log(window) - np.polyval(fit, log_k))))
        if fit[0] <= -1.1 and residual <= 0.2:
            return DensityVerdict(
                "not-dense", partial, criterion,
                f"p-series majorant: tail decays like k^{fit[0]:.2f}",
            )
    return DensityVerdict(
        "undetermined", partial, criterion,
        "no divergence or convergent-majorant certificate matched",
    )
