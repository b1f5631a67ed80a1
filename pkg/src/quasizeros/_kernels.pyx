# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled kernels: the Cython twin of _kernels_py.

Every function mirrors the pure-Python reference expression for expression
(same libm calls, same operation order; compiled with -ffp-contract=off), so
the two backends agree bit-for-bit.  Keep the modules in sync.
"""

from libc.math cimport atan2, cos, exp, floor, log, sin, sqrt

cdef extern from "math.h":
    double INFINITY

cdef double U53 = 1.0 / 9007199254740992.0  # 2**-53
cdef double PI = 3.141592653589793
cdef double TWO_PI = 6.283185307179586
cdef double LN2 = 0.6931471805599453
cdef long REJECTION_BUDGET = 1000000

M64 = 0xFFFFFFFFFFFFFFFF


cdef inline unsigned long long _sm64_step(unsigned long long *state) noexcept nogil:
    cdef unsigned long long z
    state[0] = state[0] + 0x9E3779B97F4A7C15ULL
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    z = z ^ (z >> 31)
    return z


def sm64(state):
    """One splitmix64 step: returns (new_state, 64-bit output)."""
    cdef unsigned long long s = state & 0xFFFFFFFFFFFFFFFF
    cdef unsigned long long z = _sm64_step(&s)
    return s, z


cdef inline double _wrap(double x) noexcept nogil:
    cdef double n, y
    if -PI < x <= PI:
        return x
    n = floor(x / TWO_PI + 0.5)
    y = x - TWO_PI * n
    if y <= -PI:
        y += TWO_PI
    elif y > PI:
        y -= TWO_PI
    return y


def wrap_angle(x):
    """Reduce to the principal branch (-pi, pi]."""
    return _wrap(x)


cdef struct CoFactor:
    bint expdom
    double co_re
    double co_im
    double t_re
    double t_im
    double lnr
    double theta
    double la
    double aarg


cdef inline CoFactor _cofactor(int k, double are, double aim,
                               double xre, double xim) noexcept nogil:
    cdef CoFactor out
    cdef double r2, d, gre, gim, qre, qim, m
    r2 = xre * xre + xim * xim
    out.lnr = 0.5 * log(r2)
    out.theta = atan2(xim, xre)
    out.la = 0.5 * log(are * are + aim * aim)
    out.aarg = atan2(aim, are)
    d = xre - k * out.lnr - out.la
    if d >= 0.0:
        gre = -d
        gim = out.aarg + k * out.theta - xim
        m = exp(gre)
        out.t_re = m * cos(gim)
        out.t_im = m * sin(gim)
        out.co_re = 1.0 + out.t_re
        out.co_im = out.t_im
        out.expdom = 1
    else:
        qre = d
        qim = xim - k * out.theta - out.aarg
        m = exp(qre)
        out.t_re = m * cos(qim)
        out.t_im = m * sin(qim)
        out.co_re = 1.0 + out.t_re
        out.co_im = out.t_im
        out.expdom = 0
    return out


cdef inline double _logmag_c(int k, double are, double aim, double xre,
                             double xim, double *lnr, double *la) noexcept nogil:
    cdef CoFactor cf = _cofactor(k, are, aim, xre, xim)
    cdef double c2 = cf.co_re * cf.co_re + cf.co_im * cf.co_im
    cdef double lnco
    if c2 > 0.0:
        lnco = 0.5 * log(c2)
    else:
        lnco = -INFINITY
    lnr[0] = cf.lnr
    la[0] = cf.la
    if cf.expdom:
        return xre + lnco
    return cf.la + k * cf.lnr + lnco


def eval_scaled(k, are, aim, xre, xim):
    """log|f| and principal arg f at x+iy.  Exact zeros give -inf magnitude."""
    cdef int kk = k
    cdef double ar = are, ai = aim, xr = xre, xi = xim
    cdef CoFactor cf
    cdef double c2, lnco
    if xr == 0.0 and xi == 0.0:
        return 0.0, 0.0
    cf = _cofactor(kk, ar, ai, xr, xi)
    c2 = cf.co_re * cf.co_re + cf.co_im * cf.co_im
    if c2 == 0.0:
        return -INFINITY, 0.0
    lnco = 0.5 * log(c2)
    if cf.expdom:
        return xr + lnco, _wrap(xi + atan2(cf.co_im, cf.co_re))
    return cf.la + kk * cf.lnr + lnco, _wrap(cf.aarg + kk * cf.theta
                                             + atan2(cf.co_im, cf.co_re))


def relative_residual(k, are, aim, xre, xim):
    """|f| / max(|e^l|, |A l^k|) at x+iy; equals |1 + subdominant/dominant|."""
    cdef int kk = k
    cdef double ar = are, ai = aim, xr = xre, xi = xim
    cdef CoFactor cf
    if xr == 0.0 and xi == 0.0:
        return 1.0
    cf = _cofactor(kk, ar, ai, xr, xi)
    return sqrt(cf.co_re * cf.co_re + cf.co_im * cf.co_im)


def newton_step(k, are, aim, xre, xim):
    """Newton ratio f/f' in dominance-factored form; flag 1 = f' vanishes."""
    cdef int kk = k
    cdef double ar = are, ai = aim, xr = xre, xi = xim
    cdef CoFactor cf
    cdef double dre, dim, dd, scale, r2, r, kre, kim, tmag, ure, uim, den
    if xr == 0.0 and xi == 0.0:
        if kk == 1:
            dre = 1.0 + ar
            dim = ai
            scale = sqrt(ar * ar + ai * ai)
            if scale < 1.0:
                scale = 1.0
        else:
            dre = 1.0
            dim = 0.0
            scale = 1.0
        dd = dre * dre + dim * dim
        if sqrt(dd) < 1e-14 * scale:
            return 0.0, 0.0, 1
        return dre / dd, -dim / dd, 0
    cf = _cofactor(kk, ar, ai, xr, xi)
    r2 = xr * xr + xi * xi
    r = sqrt(r2)
    kre = kk * xr / r2
    kim = -kk * xi / r2
    tmag = sqrt(cf.t_re * cf.t_re + cf.t_im * cf.t_im)
    if cf.expdom:
        ure = 1.0 + (kre * cf.t_re - kim * cf.t_im)
        uim = kre * cf.t_im + kim * cf.t_re
        scale = (kk / r) * tmag
        if scale < 1.0:
            scale = 1.0
    else:
        ure = kre + cf.t_re
        uim = kim + cf.t_im
        scale = kk / r
        if tmag > scale:
            scale = tmag
    if sqrt(ure * ure + uim * uim) < 1e-14 * scale:
        return 0.0, 0.0, 1
    den = ure * ure + uim * uim
    return (cf.co_re * ure + cf.co_im * uim) / den, \
           (cf.co_im * ure - cf.co_re * uim) / den, 0


cdef inline double _logderiv_c(int k, double are, double aim, double xre,
                               double xim, double *gre, double *gim) noexcept nogil:
    cdef CoFactor cf
    cdef double c2, r2, kre, kim, ure, uim
    if xre == 0.0 and xim == 0.0:
        if k == 1:
            gre[0] = 1.0 + are
            gim[0] = aim
        else:
            gre[0] = 1.0
            gim[0] = 0.0
        return 1.0
    cf = _cofactor(k, are, aim, xre, xim)
    c2 = cf.co_re * cf.co_re + cf.co_im * cf.co_im
    if c2 == 0.0:
        gre[0] = 0.0
        gim[0] = 0.0
        return 0.0
    r2 = xre * xre + xim * xim
    kre = k * xre / r2
    kim = -k * xim / r2
    if cf.expdom:
        ure = 1.0 + (kre * cf.t_re - kim * cf.t_im)
        uim = kre * cf.t_im + kim * cf.t_re
    else:
        ure = kre + cf.t_re
        uim = kim + cf.t_im
    gre[0] = (ure * cf.co_re + uim * cf.co_im) / c2
    gim[0] = (uim * cf.co_re - ure * cf.co_im) / c2
    return sqrt(c2)


def line_segment_logderiv(k, are, aim, z0re, z0im, z1re, z1im,
                          double[::1] nodes, double[::1] weights):
    """Gauss sum of (f'/f) dz over the segment z0 -> z1."""
    cdef int kk = k
    cdef double ar = are, ai = aim
    cdef double mre = 0.5 * (z0re + z1re)
    cdef double mim = 0.5 * (z0im + z1im)
    cdef double hre = 0.5 * (z1re - z0re)
    cdef double him = 0.5 * (z1im - z0im)
    cdef double sre = 0.0, sim = 0.0, minmod = INFINITY
    cdef double t, w, gre = 0.0, gim = 0.0, mod
    cdef Py_ssize_t j, n = nodes.shape[0]
    with nogil:
        for j in range(n):
            t = nodes[j]
            mod = _logderiv_c(kk, ar, ai, mre + hre * t, mim + him * t, &gre, &gim)
            if mod < minmod:
                minmod = mod
            w = weights[j]
            sre += w * gre
            sim += w * gim
    return sre * hre - sim * him, sre * him + sim * hre, minmod


def arc_segment_logderiv(k, are, aim, cre, cim, radius, t0, t1,
                         double[::1] nodes, double[::1] weights):
    """Gauss sum of (f'/f) dz over the arc angle range [t0, t1] of a circle."""
    cdef int kk = k
    cdef double ar = are, ai = aim, ccre = cre, ccim = cim, rad = radius
    cdef double mt = 0.5 * (t0 + t1)
    cdef double ht = 0.5 * (t1 - t0)
    cdef double sre = 0.0, sim = 0.0, minmod = INFINITY
    cdef double th, c, s, w, dre, dim, gre = 0.0, gim = 0.0, mod
    cdef Py_ssize_t j, n = nodes.shape[0]
    with nogil:
        for j in range(n):
            th = mt + ht * nodes[j]
            c = cos(th)
            s = sin(th)
            mod = _logderiv_c(kk, ar, ai, ccre + rad * c, ccim + rad * s, &gre, &gim)
            if mod < minmod:
                minmod = mod
            dre = -rad * s
            dim = rad * c
            w = weights[j]
            sre += w * (gre * dre - gim * dim)
            sim += w * (gre * dim + gim * dre)
    return sre * ht, sim * ht, minmod


def sample_exterior_margin(k, are, aim, s_branch, side, h, r_in, r_max,
                           bound_kind, n, seed):
    """Sample an exterior region and track the worst lower-bound margin.

    See the pure-Python twin for the full contract.
    """
    cdef int kk = k, kind = bound_kind, sd = side
    cdef double ar = are, ai = aim, hh = h
    cdef double lr0 = log(r_in)
    cdef double lspan = log(r_max) - lr0
    cdef double sgn = -1.0 if s_branch == 1 else 1.0
    cdef unsigned long long state = seed & 0xFFFFFFFFFFFFFFFF
    cdef unsigned long long z
    cdef long nn = n, accepted = 0, consec = 0
    cdef double minlog = INFINITY, wre = 0.0, wim = 0.0
    cdef double u1, u2, lr, r, th, xre, xim, off, logf, lm, lnr = 0.0, la = 0.0
    cdef bint inside
    cdef int ok = 1
    with nogil:
        while accepted < nn:
            z = _sm64_step(&state)
            u1 = (z >> 11) * U53
            z = _sm64_step(&state)
            u2 = (z >> 11) * U53
            lr = lr0 + u1 * lspan
            r = exp(lr)
            th = -PI + TWO_PI * u2
            xre = r * cos(th)
            xim = r * sin(th)
            off = xre + sgn * (kk * lr)
            if sd < 0:
                inside = off < -hh
            else:
                inside = off > hh
            if not inside:
                consec += 1
                if consec > REJECTION_BUDGET:
                    ok = 0
                    break
                continue
            consec = 0
            logf = _logmag_c(kk, ar, ai, xre, xim, &lnr, &la)
            if kind == 1:
                lm = logf - (la - LN2 + kk * lnr)
            else:
                lm = logf - (xre - LN2)
            if lm < minlog:
                minlog = lm
                wre = xre
                wim = xim
            accepted += 1
    return minlog, wre, wim, ok


def sample_strip_sector(k, are, aim, s_branch, h, r_in, r_max, delta, n, seed):
    """Sample the curvilinear strip and measure sector containment."""
    cdef int kk = k
    cdef double ar = are, ai = aim, hh = h, dlt = delta
    cdef double lr0 = log(r_in)
    cdef double lspan = log(r_max) - lr0
    cdef double sgn = -1.0 if s_branch == 1 else 1.0
    cdef unsigned long long state = seed & 0xFFFFFFFFFFFFFFFF
    cdef unsigned long long z
    cdef long nn = n, accepted = 0, consec = 0, violations = 0
    cdef double minmargin = INFINITY, wre = 0.0, wim = 0.0
    cdef double u1, u2, lr, r, th, xre, xim, off, dev, margin
    cdef int ok = 1
    with nogil:
        while accepted < nn:
            z = _sm64_step(&state)
            u1 = (z >> 11) * U53
            z = _sm64_step(&state)
            u2 = (z >> 11) * U53
            lr = lr0 + u1 * lspan
            r = exp(lr)
            th = -PI + TWO_PI * u2
            xre = r * cos(th)
            xim = r * sin(th)
            off = xre + sgn * (kk * lr)
            if off < -hh or off > hh:
                consec += 1
                if consec > REJECTION_BUDGET:
                    ok = 0
                    break
                continue
            consec = 0
            if xim >= 0.0:
                dev = th - 0.5 * PI
            else:
                dev = th + 0.5 * PI
            if dev < 0.0:
                dev = -dev
            margin = dlt - dev
            if margin <= 0.0:
                violations += 1
            if margin < minmargin:
                minmargin = margin
                wre = xre
                wim = xim
            accepted += 1
    return minmargin, wre, wim, violations, ok


def sample_strip_ratio(k, are, aim, h, r_in, im_cap, delta,
                       double[::1] zre, double[::1] zim, n, seed):
    """Sample the punctured strip and track the minimum of |f|/|l|^k."""
    cdef int kk = k
    cdef double ar = are, ai = aim, hh = h, rin = r_in, cap = im_cap, dlt = delta
    cdef Py_ssize_t nz = zre.shape[0]
    cdef double d2 = dlt * dlt
    cdef unsigned long long state = seed & 0xFFFFFFFFFFFFFFFF
    cdef unsigned long long z
    cdef long nn = n, accepted = 0, consec = 0
    cdef double minlog = INFINITY, wre = 0.0, wim = 0.0
    cdef double u1, u2, y, t, ay, x, r2, g, gp, r, resid, ylo, yhi, dx, dy
    cdef double logf, lm, lnr = 0.0, la = 0.0
    cdef Py_ssize_t lo, hi, mid, i
    cdef int it
    cdef bint bad
    cdef int ok = 1
    with nogil:
        while accepted < nn:
            z = _sm64_step(&state)
            u1 = (z >> 11) * U53
            z = _sm64_step(&state)
            u2 = (z >> 11) * U53
            y = -cap + (2.0 * cap) * u1
            t = -hh + (2.0 * hh) * u2
            ay = y if y >= 0.0 else -y
            if ay < 1e-300:
                ay = 1e-300
            x = t + kk * log(ay)
            bad = 0
            for it in range(3):
                r2 = x * x + y * y
                if r2 == 0.0:
                    bad = 1
                    break
                x = t + 0.5 * kk * log(r2)
            if not bad:
                for it in range(6):
                    r2 = x * x + y * y
                    if r2 == 0.0:
                        bad = 1
                        break
                    g = x - t - 0.5 * kk * log(r2)
                    gp = 1.0 - kk * x / r2
                    if gp < 0.5 and gp > -0.5:
                        x = t + 0.5 * kk * log(r2)
                    else:
                        x = x - g / gp
            if not bad:
                r2 = x * x + y * y
                r = sqrt(r2)
                if r < rin:
                    bad = 1
                else:
                    resid = x - t - 0.5 * kk * log(r2)
                    if resid > 1e-9 or resid < -1e-9:
                        bad = 1
            if not bad and nz > 0:
                ylo = y - dlt
                lo = 0
                hi = nz
                while lo < hi:
                    mid = (lo + hi) // 2
                    if zim[mid] < ylo:
                        lo = mid + 1
                    else:
                        hi = mid
                i = lo
                yhi = y + dlt
                while i < nz and zim[i] <= yhi:
                    dx = x - zre[i]
                    dy = y - zim[i]
                    if dx * dx + dy * dy < d2:
                        bad = 1
                        break
                    i += 1
            if bad:
                consec += 1
                if consec > REJECTION_BUDGET:
                    ok = 0
                    break
                continue
            consec = 0
            logf = _logmag_c(kk, ar, ai, x, y, &lnr, &la)
            lm = logf - kk * lnr
            if lm < minlog:
                minlog = lm
                wre = x
                wim = y
            accepted += 1
    return minlog, wre, wim, ok
