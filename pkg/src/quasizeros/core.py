"""The quasipolynomial f(l) = e^l + A*l^k and its numerically stable evaluation.

Direct evaluation is exact double-precision complex arithmetic and is limited
to the range where e^l and A*l^k representable; the scaled forms factor out
the dominant of the two terms, so they work across the whole plane (the
co-factor 1 + subdominant/dominant has magnitude at most 2).
"""

import cmath
import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import DerivativeVanishesError, DomainError, OverflowRangeError

#: |Re l| and k*ln|l| limit for the direct (unscaled) forms.
DIRECT_RANGE = 700.0


@dataclass(frozen=True)
class QuasiPolynomial:
    """The pair (k, A) defining f(l) = e^l + A*l^k.

    k must be a positive integer and A a nonzero complex coefficient.
    """

    k: int
    a: complex

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        a = complex(self.a)
        object.__setattr__(self, "a", a)
        if a == 0:
            raise DomainError("coefficient A must be nonzero")

    @property
    def b_magnitude(self):
        """1/|A|, the reciprocal coefficient magnitude."""
        return 1.0 / abs(self.a)

    @property
    def log_abs_a(self):
        return math.log(abs(self.a))

    @property
    def arg_a(self):
        """Principal argument of A in (-pi, pi]."""
        return kernels.wrap_angle(math.atan2(self.a.imag, self.a.real))


@dataclass(frozen=True)
class EvalScale:
    """Overflow-safe value of f: natural log of |f| plus principal phase.

    log_magnitude is -inf exactly when f vanishes.
    """

    log_magnitude: float
    phase: float

    @property
    def value(self):
        """Reconstructed complex value; overflows for log_magnitude > ~709."""
        if self.log_magnitude == -math.inf:
            return 0j
        m = math.exp(self.log_magnitude)
        return complex(m * math.cos(self.phase), m * math.sin(self.phase))


def _check_direct_range(qp, lam):
    lam = complex(lam)
    if abs(lam.real) > DIRECT_RANGE:
        raise OverflowRangeError(
            f"|Re l| = {abs(lam.real):.3g} exceeds the direct range {DIRECT_RANGE:g}")
    if lam != 0 and qp.k * math.log(abs(lam)) > DIRECT_RANGE:
        raise OverflowRangeError(
            f"k*ln|l| = {qp.k * math.log(abs(lam)):.3g} exceeds the direct range")
    return lam


def evaluate(qp, lam):
    """f(l) = e^l + A*l^k by direct complex arithmetic.

    Raises OverflowRangeError outside |Re l| <= 700, k*ln|l| <= 700; use
    evaluate_scaled there.
    """
    lam = _check_direct_range(qp, lam)
    return cmath.exp(lam) + qp.a * lam ** qp.k


def derivative(qp, lam):
    """f'(l) = e^l + k*A*l^(k-1); for k = 1 the second term is the constant A."""
    lam = _check_direct_range(qp, lam)
    if qp.k == 1:
        return cmath.exp(lam) + qp.a
    return cmath.exp(lam) + qp.k * qp.a * lam ** (qp.k - 1)


def second_derivative(qp, lam):
    """f''(l) = e^l + k(k-1)*A*l^(k-2) (direct range only)."""
    lam = _check_direct_range(qp, lam)
    if qp.k == 1:
        return cmath.exp(lam)
    if qp.k == 2:
        return cmath.exp(lam) + 2 * qp.a
    return cmath.exp(lam) + qp.k * (qp.k - 1) * qp.a * lam ** (qp.k - 2)


def evaluate_scaled(qp, lam):
    """log|f| and arg f with the dominant term factored out.

    Never overflows.  An exact zero of f yields the sentinel
    EvalScale(-inf, 0.0) rather than an error, so contour integrands can
    detect near-zeros uniformly.
    """
    lam = complex(lam)
    logmag, phase = kernels.eval_scaled(qp.k, qp.a.real, qp.a.imag, lam.real, lam.imag)
    return EvalScale(logmag, phase)


def relative_residual(qp, lam):
    """|f(l)| / max(|e^l|, |A*l^k|): the scale-free size of f at l."""
    lam = complex(lam)
    return kernels.relative_residual(qp.k, qp.a.real, qp.a.imag, lam.real, lam.imag)


def newton_ratio(qp, lam):
    """The Newton step f/f', computed in dominance-factored form.

    Raises DerivativeVanishesError when |f'| is below
    1e-14 * max(|e^l|, k|A||l|^(k-1)).
    """
    lam = complex(lam)
    rre, rim, flag = kernels.newton_step(qp.k, qp.a.real, qp.a.imag, lam.real, lam.imag)
    if flag:
        raise DerivativeVanishesError(f"f' vanishes near l = {lam:.6g}")
    return complex(rre, rim)
