"""The indexed zero family of f(l) = e^l + A*l^k.

Large zeros sit on the branch ladder
    l_nu ~ [ln|A| + k ln(2*pi*|nu|)] + i*[2*pi*nu + pi + sign(nu)*k*pi/2 + arg A],
one per nonzero integer nu, with consecutive gaps approaching 2*pi.  Seeds
from the asymptotic formula are polished by Newton (quadratic near simple
zeros) with a branch-anchored fixed-point iteration as the robust fallback.
nu = 0 is excluded: the formula degenerates there, and any zeros it misses
are recovered exhaustively by the disk search in the certify module.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from . import core
from .errors import (
    DerivativeVanishesError,
    DomainError,
    DuplicateZeroError,
    EscapedBasinError,
    InvalidIndexError,
    MaxIterationsError,
    NotConvergedError,
    TooFewRecordsError,
)

TWO_PI = 2.0 * math.pi

#: refined values closer than this collapse onto one zero
DUPLICATE_DISTANCE = 1e-6

#: Newton iterates farther than this from the seed abandon the branch; kept
#: below half the ladder spacing so an escape cannot silently land on a
#: neighboring branch's zero.
ESCAPE_RADIUS = 3.0


@dataclass(frozen=True)
class ZeroRecord:
    """One computed zero.

    nu is None for zeros found in the origin disk (outside the indexed
    family).  residual is the relative residual |f|/max(|e^l|, |A l^k|) at
    value.  certified means a winding count over the isolation disk equals
    multiplicity.
    """

    nu: Optional[int]
    value: complex
    residual: float
    seed: complex
    iterations: int
    certified: bool = False
    isolation_radius: Optional[float] = None
    multiplicity: int = 1


@dataclass(frozen=True)
class IterationTrace:
    """Fixed-point iterates in the shifted variable xi = l - 2*pi*nu*i."""

    xi_sequence: Tuple[complex, ...]
    converged: bool


@dataclass(frozen=True)
class GapStats:
    """Consecutive gaps |l_(nu+1) - l_nu| within one half-plane.

    deviations_scaled multiplies |gap - 2*pi| by |nu|/ln(|nu|+2) to expose
    the decay trend of the remainder.
    """

    gaps: Tuple[float, ...]
    max_deviation: float
    deviations_scaled: Tuple[float, ...]


def asymptotic_zero(qp, nu):
    """Asymptotic position of the nu-th zero (nu != 0).

    The imaginary part uses sign(nu)*k*pi/2, the principal branch of
    k*ln(2*pi*nu*i) for either sign of nu.
    """
    if nu == 0:
        raise InvalidIndexError("nu = 0 is outside the indexed family")
    re = qp.log_abs_a + qp.k * math.log(TWO_PI * abs(nu))
    im = TWO_PI * nu + math.pi + math.copysign(0.5 * math.pi * qp.k, nu) + qp.arg_a
    return complex(re, im)


def branch_index(qp, value):
    """Nearest branch index of a zero from its imaginary part (may be 0)."""
    y = complex(value).imag
    s = 1.0 if y > 0 else (-1.0 if y < 0 else 0.0)
    return round((y - math.pi - s * 0.5 * math.pi * qp.k - qp.arg_a) / TWO_PI)


def fixed_point_refine(qp, nu, tolerance=1e-13, max_iterations=200):
    """Refine the nu-th zero by the branch-anchored fixed-point iteration.

    Iterates xi <- ln|A| + i(arg A + pi) + k Log(2*pi*nu*i + xi) from the
    asymptotic seed until the successive change drops below tolerance.  The
    map contracts like k/(2*pi*|nu|); indices with 2*pi*|nu| <= 2k are
    rejected.  The recorded residual carries the intrinsic conditioning floor
    ~|Im l| * eps of evaluating f at huge heights.
    """
    if nu == 0:
        raise InvalidIndexError("nu = 0 is outside the indexed family")
    if TWO_PI * abs(nu) <= 2.0 * qp.k:
        raise InvalidIndexError(
            f"fixed-point map does not contract for nu = {nu} with k = {qp.k}")
    if tolerance <= 0:
        raise InvalidIndexError("tolerance must be positive")
    seed = asymptotic_zero(qp, nu)
    base = complex(0.0, TWO_PI * nu)
    const = complex(qp.log_abs_a, qp.arg_a + math.pi)
    xi = seed - base
    trace = [xi]
    for it in range(1, max_iterations + 1):
        z = base + xi
        nxt = const + qp.k * complex(math.log(abs(z)), math.atan2(z.imag, z.real))
        trace.append(nxt)
        step = abs(nxt - xi)
        xi = nxt
        if step < tolerance:
            lam = base + xi
            residual = core.relative_residual(qp, lam)
            rec = ZeroRecord(nu=nu, value=lam, residual=residual, seed=seed,
                             iterations=it)
            return rec, IterationTrace(tuple(trace), True)
    raise NotConvergedError(
        f"fixed-point refinement for nu = {nu} did not reach {tolerance:g} "
        f"in {max_iterations} iterations")


def newton_refine(qp, seed, tolerance=1e-13, max_iterations=60,
                  escape_radius=ESCAPE_RADIUS):
    """Polish a seed by Newton iteration until the relative residual passes.

    Raises EscapedBasinError when an iterate strays more than escape_radius
    from the seed (protects the index bookkeeping), and propagates
    DerivativeVanishesError from critical points.
    """
    if tolerance <= 0:
        raise InvalidIndexError("tolerance must be positive")
    seed = complex(seed)
    lam = seed
    for it in range(max_iterations + 1):
        residual = core.relative_residual(qp, lam)
        if residual < tolerance:
            idx = branch_index(qp, lam)
            return ZeroRecord(nu=idx if idx != 0 else None, value=lam,
                              residual=residual, seed=seed, iterations=it)
        lam = lam - core.newton_ratio(qp, lam)
        if abs(lam - seed) > escape_radius:
            raise EscapedBasinError(
                f"Newton iterate left the seed basin (|l - seed| > {escape_radius:g})")
    raise MaxIterationsError(
        f"Newton refinement from {seed:.6g} did not reach {tolerance:g} "
        f"in {max_iterations} iterations")


def _check_duplicates(records):
    ordered = sorted(records, key=lambda r: (r.value.imag, r.value.real))
    for a, b in zip(ordered, ordered[1:]):
        if abs(a.value - b.value) < DUPLICATE_DISTANCE:
            raise DuplicateZeroError(
                f"indices {a.nu} and {b.nu} converged to the same zero "
                f"{a.value:.9g}")


def isolation_radii(records):
    """min(1, half nearest-neighbor distance) for each record."""
    radii = []
    for rec in records:
        nearest = math.inf
        for other in records:
            if other is rec:
                continue
            d = abs(rec.value - other.value)
            if d < nearest:
                nearest = d
        radii.append(min(1.0, 0.5 * nearest) if nearest < math.inf else 1.0)
    return radii


def zeros_in_index_range(qp, nu_min, nu_max, tolerance=1e-12, certify=True):
    """Refined zeros for every index in [nu_min, nu_max] (nu = 0 skipped).

    Newton from the asymptotic seed, falling back to the fixed-point
    iteration when Newton escapes the branch or stalls.  Records are sorted
    by nu; values collapsing within 1e-6 raise DuplicateZeroError.  With
    certify=True each record gets a winding-count certificate over its
    isolation disk.
    """
    if nu_min > nu_max:
        raise InvalidIndexError(f"empty index range [{nu_min}, {nu_max}]")
    records = []
    for nu in range(nu_min, nu_max + 1):
        if nu == 0:
            continue
        seed = asymptotic_zero(qp, nu)
        rec = None
        try:
            cand = newton_refine(qp, seed, tolerance)
            if cand.nu == nu and branch_index(qp, cand.value) == nu:
                rec = cand
        except (EscapedBasinError, MaxIterationsError, DerivativeVanishesError):
            rec = None
        if rec is None:
            try:
                rec, _trace = fixed_point_refine(qp, nu, tolerance)
                if rec.residual >= tolerance:
                    # polish locally; the fixed point is already on-branch
                    rec = replace(newton_refine(qp, rec.value, tolerance,
                                                escape_radius=1.0), nu=nu)
            except (InvalidIndexError, NotConvergedError, EscapedBasinError,
                    MaxIterationsError, DerivativeVanishesError) as exc:
                raise NotConvergedError(f"refinement failed for nu = {nu}: {exc}") from exc
        records.append(rec)
    _check_duplicates(records)
    if certify:
        from . import certify as certify_mod

        radii = isolation_radii(records)
        records = [certify_mod.certify_record(qp, rec, radius)
                   for rec, radius in zip(records, radii)]
    return records


def gap_statistics(records):
    """Consecutive distances within one half-plane, ordered by Im value."""
    if len(records) < 2:
        raise TooFewRecordsError("gap statistics need at least two records")
    signs = {1 if r.value.imag > 0 else -1 for r in records}
    if len(signs) != 1:
        raise DomainError("records must lie in a single half-plane")
    if any(r.nu is None for r in records):
        raise DomainError("gap statistics need indexed records")
    ordered = sorted(records, key=lambda r: r.value.imag)
    gaps = []
    scaled = []
    for a, b in zip(ordered, ordered[1:]):
        gap = abs(b.value - a.value)
        gaps.append(gap)
        nu = min(abs(a.nu), abs(b.nu))
        scaled.append(abs(gap - TWO_PI) * nu / math.log(nu + 2))
    max_dev = max(abs(g - TWO_PI) for g in gaps)
    return GapStats(tuple(gaps), max_dev, tuple(scaled))


def separation_radius(records):
    """Half the minimum pairwise distance; disks of this radius are disjoint."""
    if len(records) < 2:
        raise TooFewRecordsError("separation radius needs at least two records")
    ordered = sorted(records, key=lambda r: (r.value.imag, r.value.real))
    best = math.inf
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if b.value.imag - a.value.imag > best:
                break
            d = abs(a.value - b.value)
            if d < best:
                best = d
    if best < DUPLICATE_DISTANCE:
        raise DuplicateZeroError(f"records contain a duplicate (distance {best:.3g})")
    return 0.5 * best

