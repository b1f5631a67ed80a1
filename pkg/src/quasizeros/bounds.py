"""Sampled verification of the lower-bound estimates.

Exterior bounds: with offset = Re l - k ln|l| (branch S=1),
    offset < -h, h > ln(2/|A|)  =>  |f| >= (1/2) |A| |l|^k
    offset >  h, h > ln(2|A|)   =>  |f| >= (1/2) |e^l|.
Both follow from |subdominant/dominant| <= e^(-h) * (2 e^(-h') ...) < 1/2.
Note the second estimate lives on the S=1 offset's right side: its proof
needs Re l - k ln|l| > h, and the S=2 right side provably contains zeros of
f (where no lower bound can hold) -- that variant stays available through
s_branch=2 for demonstration.

Strip bound: away from delta-disks around the zeros, |f| >= C_delta |l|^k
with C_delta > 0 estimated empirically as the sampled infimum of |f|/|l|^k.

All sampling is seeded and deterministic: a fixed number of splitmix64
substreams is derived from the seed, so reports are bit-for-bit reproducible
regardless of the QZ_THREADS worker count.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

from . import certify as certify_mod, zeros as zeros_mod
from ._backend import BACKEND, kernels
from .errors import (
    DeltaTooLargeError,
    DomainError,
    EmptyRegionSampleError,
    IncompleteZeroListError,
    PreconditionHError,
)

M64 = 0xFFFFFFFFFFFFFFFF
TWO_PI = 2.0 * math.pi

#: fixed substream count; independent of the worker thread count so that
#: results never depend on scheduling
SUBSTREAMS = 16

#: outer radius cap for the radially unbounded exterior regions
DEFAULT_R_MAX = 1e3

#: clamp for threshold formulas that come out nonpositive (the region
#: definitions require h > 0)
H_CLAMP = 1e-3


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one sampled lower-bound verification."""

    region: str
    samples: int
    min_margin: float
    worst_point: complex
    threshold_h_used: float
    passed: bool


@dataclass(frozen=True)
class SectorCoverReport:
    """Outcome of a sampled sector-containment check for the strip."""

    r_used: float
    samples: int
    min_margin: float
    worst_point: complex
    violations: int
    passed: bool


@dataclass(frozen=True)
class CDeltaEstimate:
    """Empirical infimum of |f(l)|/|l|^k over the punctured strip."""

    c_hat: float
    argmin: complex
    delta_used: float
    h_used: float
    r_used: float
    sample_count: int


def _thread_count():
    raw = os.environ.get("QZ_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def derive_substream(seed, index):
    """Deterministic 64-bit substream seed (same derivation in every backend)."""
    state = (seed + (index + 1) * 0x9E3779B97F4A7C15) & M64
    state, _ = kernels.sm64(state)
    state, z = kernels.sm64(state)
    return z


def _chunk_sizes(n):
    chunks = min(SUBSTREAMS, n)
    base, extra = divmod(n, chunks)
    return [base + (1 if i < extra else 0) for i in range(chunks)]


def _run_chunks(worker, n, seed):
    """Run the sampler in fixed chunks and merge deterministically.

    QZ_THREADS > 1 parallelizes the chunks (the compiled kernels release the
    GIL); the chunk layout and merge order never change, so the merged result
    is identical for any worker count.
    """
    sizes = _chunk_sizes(n)
    jobs = [(worker, size, derive_substream(seed, i)) for i, size in enumerate(sizes)]
    threads = _thread_count()
    if threads > 1 and BACKEND == "compiled" and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: j[0](j[1], j[2]), jobs))
    else:
        results = [w(size, s) for w, size, s in jobs]
    return results


def h_threshold(qp, which):
    """Admissible half-width threshold: T1 -> ln(2/|A|), T2 -> ln(2|A|).

    Clamped below at 1e-3 because the region definitions require h > 0.
    """
    if which == "T1":
        value = math.log(2.0 * qp.b_magnitude)
    elif which == "T2":
        value = math.log(2.0 * abs(qp.a))
    else:
        raise DomainError("which must be 'T1' or 'T2'")
    return max(value, H_CLAMP)


def _exterior_report(qp, region_name, s_branch, side, h, r_cut, sample_count,
                     seed, r_max, bound_kind, threshold):
    if r_cut <= 0:
        raise DomainError("R must be positive")
    if sample_count < 1:
        raise DomainError("sample count must be at least 1")
    if r_max <= r_cut:
        raise DomainError("r_max must exceed R")

    def worker(size, sub_seed):
        return kernels.sample_exterior_margin(
            qp.k, qp.a.real, qp.a.imag, s_branch, side, h, r_cut, r_max,
            bound_kind, size, sub_seed)

    results = _run_chunks(worker, sample_count, seed)
    if any(r[3] == 0 for r in results):
        raise EmptyRegionSampleError(
            f"rejection sampling of {region_name} stalled (region empty?)")
    best = min(range(len(results)), key=lambda i: (results[i][0], i))
    min_log, wre, wim, _ = results[best]
    margin = math.exp(min_log)
    return BoundReport(
        region=f"{region_name}(h={h:g}, R={r_cut:g}, r_max={r_max:g})",
        samples=sample_count,
        min_margin=margin,
        worst_point=complex(wre, wim),
        threshold_h_used=threshold,
        passed=margin >= 1.0,
    )


def verify_T1_bound(qp, h, r_cut, sample_count, seed, r_max=DEFAULT_R_MAX):
    """Check |f| >= (1/2)|A||l|^k over sampled points of the left exterior
    (offset < -h for branch S=1, R <= |l| <= r_max)."""
    threshold = h_threshold(qp, "T1")
    if h <= threshold:
        raise PreconditionHError(
            f"h = {h:g} must exceed the T1 threshold {threshold:g}")
    return _exterior_report(qp, "T1 exterior: offset(S=1) < -h", 1, -1, h,
                            r_cut, sample_count, seed, r_max, 1, threshold)


def verify_T2_bound(qp, h, r_cut, sample_count, seed, r_max=DEFAULT_R_MAX,
                    s_branch=1):
    """Check |f| >= (1/2)|e^l| over sampled points of the right exterior.

    The default region is offset(S=1) > h, the side on which the estimate
    actually holds (the dominant term is e^l there).  s_branch=2 samples the
    S=2 right side instead; that region contains zeros of f, so the check is
    expected to fail there -- it exists to demonstrate the distinction.
    """
    threshold = h_threshold(qp, "T2")
    if h <= threshold:
        raise PreconditionHError(
            f"h = {h:g} must exceed the T2 threshold {threshold:g}")
    if s_branch not in (1, 2):
        raise DomainError("s_branch must be 1 or 2")
    name = f"T2 exterior: offset(S={s_branch}) > h"
    return _exterior_report(qp, name, s_branch, +1, h, r_cut, sample_count,
                            seed, r_max, 2, threshold)


def verify_sector_cover(qp, h, delta, r_cut, sample_count, seed,
                        r_max=DEFAULT_R_MAX, s_branch=None):
    """Sample strip points with |l| >= R and check sector containment.

    With s_branch None both branches are sampled (half the budget each).
    Passes when every sampled point lies within delta of +-pi/2 in argument.
    """
    if sample_count < 1:
        raise DomainError("sample count must be at least 1")
    branches = (1, 2) if s_branch is None else (s_branch,)
    per_branch = sample_count // len(branches)
    counts = [per_branch] * len(branches)
    counts[0] += sample_count - per_branch * len(branches)
    merged: Optional[Tuple[float, float, float]] = None
    violations = 0
    for branch, count in zip(branches, counts):
        if count < 1:
            continue

        def worker(size, sub_seed, _b=branch):
            return kernels.sample_strip_sector(
                qp.k, qp.a.real, qp.a.imag, _b, h, r_cut, r_max, delta,
                size, sub_seed)

        results = _run_chunks(worker, count, seed + branch)
        if any(r[4] == 0 for r in results):
            raise EmptyRegionSampleError("strip rejection sampling stalled")
        for mm, wre, wim, viol, _ok in results:
            violations += viol
            if merged is None or mm < merged[0]:
                merged = (mm, wre, wim)
    assert merged is not None
    return SectorCoverReport(
        r_used=r_cut,
        samples=sample_count,
        min_margin=merged[0],
        worst_point=complex(merged[1], merged[2]),
        violations=violations,
        passed=violations == 0,
    )


def _completeness_window(qp, h, r_cut, im_cap, delta, strip_zeros,
                         quadrature_tolerance):
    """Verify the zero list covers the sampled strip window (both halves)."""
    k = qp.k
    # smallest |Im| reachable by a strip sample: |l| >= R with |Re| bounded
    re_at_r = min(r_cut, h + k * math.log(r_cut))
    y_min = math.sqrt(max(r_cut * r_cut - re_at_r * re_at_r, 0.0))
    pad = delta + 1.0
    y_hi = im_cap + pad
    x_lo = k * math.log(r_cut) - h - pad
    x_hi = h + k * math.log(y_hi + 5.0) + pad
    y_lo = max(y_min - pad, 1.0)
    if y_lo >= y_hi:
        return
    for half in (1, -1):
        if half == 1:
            box = certify_mod.Rectangle(complex(x_lo, y_lo), complex(x_hi, y_hi))
        else:
            box = certify_mod.Rectangle(complex(x_lo, -y_hi), complex(x_hi, -y_lo))
        inside = [rec for rec in strip_zeros if box.contains(rec.value)]
        report = certify_mod.winding_count(qp, box, quadrature_tolerance)
        if report.count != sum(rec.multiplicity for rec in inside):
            raise IncompleteZeroListError(
                f"zero list covers {sum(r.multiplicity for r in inside)} zeros in "
                f"the sampled window (half {half}) but the winding count is "
                f"{report.count}")


def estimate_C_delta(qp, h, r_cut, delta, sample_count, seed, strip_zeros,
                     im_cap=TWO_PI * 60.0, verify_completeness=True,
                     quadrature_tolerance=1e-6):
    """Sampled infimum of |f(l)|/|l|^k over the punctured strip.

    Samples the S=1 strip with |Im l| <= im_cap and |l| >= R, rejecting
    points within delta of any listed zero.  delta must stay below the
    separation radius of the list; the list must be certified and cover the
    sampled window (checked by winding counts unless verify_completeness is
    disabled).
    """
    if sample_count < 1:
        raise DomainError("sample count must be at least 1")
    if not strip_zeros:
        raise IncompleteZeroListError("an empty zero list cannot cover the strip")
    if any(not rec.certified for rec in strip_zeros):
        raise IncompleteZeroListError("strip zeros must be certified")
    sep = zeros_mod.separation_radius(strip_zeros)
    if delta >= sep:
        raise DeltaTooLargeError(
            f"delta = {delta:g} is not below the separation radius {sep:g}")
    if verify_completeness:
        _completeness_window(qp, h, r_cut, im_cap, delta, strip_zeros,
                             quadrature_tolerance)
    ordered = sorted(strip_zeros, key=lambda rec: rec.value.imag)
    import array

    zre = array.array("d", [rec.value.real for rec in ordered])
    zim = array.array("d", [rec.value.imag for rec in ordered])

    def worker(size, sub_seed):
        return kernels.sample_strip_ratio(
            qp.k, qp.a.real, qp.a.imag, h, r_cut, im_cap, delta, zre, zim,
            size, sub_seed)

    results = _run_chunks(worker, sample_count, seed)
    if any(r[3] == 0 for r in results):
        raise EmptyRegionSampleError("punctured-strip rejection sampling stalled")
    best = min(range(len(results)), key=lambda i: (results[i][0], i))
    min_log, wre, wim, _ = results[best]
    return CDeltaEstimate(
        c_hat=math.exp(min_log),
        argmin=complex(wre, wim),
        delta_used=delta,
        h_used=h,
        r_used=r_cut,
        sample_count=sample_count,
    )
