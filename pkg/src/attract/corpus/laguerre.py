"""Polynomial root finding by Laguerre's method with deflation.

The kernel finds every complex root of an integer-coefficient polynomial:
one Laguerre refinement per root starting from zero, then synthetic
division to deflate the polynomial before hunting the next root.  The
refinement evaluates the polynomial and its first two derivatives in a
single Horner pass and applies the classic step

    z' = z - n / (G +- sqrt((n - 1) * (n * H - G^2)))

picking the larger-magnitude denominator.  Integer hooks cover degrees,
loop counters and every coefficient-index read; boolean hooks cover loop
conditions, both convergence checks and the denominator selection.

The oracle re-evaluates the original polynomial at every reported root
and accepts when each residual is tiny and exactly degree-many finite
roots come back.
"""

from __future__ import annotations

import cmath

import numpy as np

from .._accel import kernel
from ..engine import SubjectFault, p_bool, p_int
from .base import Subject, bool_point, int_point, rng_for

_ABS_ACC = 1.0e-12  # absolute accuracy on the root location
_REL_ACC = 1.0e-14  # relative accuracy on the root location
_FVAL_ACC = 1.0e-15  # polynomial values below this count as converged
_MAX_ITER = 200  # refinement steps allowed per root
_BREAK_EVERY = 10  # take a fractional step this often to break limit cycles
_FRAC = np.array([0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0])

_POINTS = (
    int_point(0, "polynomial degree 'coefficients.length - 1' in the refinement"),
    int_point(1, "delta prefactor 'n - 1'"),
    int_point(2, "iteration counter initialiser 0"),
    bool_point(3, "refinement loop condition literal 'true'"),
    int_point(4, "read of it in the increment 'it + 1'"),
    int_point(5, "read of it in the cap check 'it > MAX_ITER'"),
    bool_point(6, "iteration cap check 'it > MAX_ITER'"),
    int_point(7, "read of n as leading coefficient index 'coefficients[n]'"),
    int_point(8, "Horner loop initialiser 'n - 1'"),
    int_point(9, "read of j in the Horner loop condition 'j >= 0'"),
    bool_point(10, "Horner loop condition 'j >= 0'"),
    int_point(11, "read of j as coefficient index 'coefficients[j]'"),
    int_point(12, "read of j in the Horner loop decrement 'j - 1'"),
    bool_point(13, "step-size convergence check '|z - oldz| <= tol'"),
    bool_point(14, "function-value convergence check '|pv| <= eps'"),
    bool_point(15, "denominator choice '|G + sqrt| > |G - sqrt|'"),
    bool_point(16, "zero denominator check"),
    int_point(17, "overall degree 'coefficients.length - 1' in the driver"),
    int_point(18, "working array allocation length 'n + 1'"),
    int_point(19, "root array allocation length 'n'"),
    int_point(20, "copy loop initialiser 0"),
    int_point(21, "read of i in the copy loop condition 'i <= n'"),
    int_point(22, "read of n in the copy loop condition 'i <= n'"),
    bool_point(23, "copy loop condition 'i <= n'"),
    int_point(24, "read of i as working store index 'c[i]'"),
    int_point(25, "read of i as input load index 'coefficients[i]'"),
    int_point(26, "read of i in the copy loop increment"),
    int_point(27, "root loop initialiser 0"),
    int_point(28, "read of i in the root loop condition 'i < n'"),
    int_point(29, "read of n in the root loop condition 'i < n'"),
    bool_point(30, "root loop condition 'i < n'"),
    int_point(31, "active coefficient count 'n - i + 1'"),
    int_point(32, "read of i storing the root 'root[i]'"),
    int_point(33, "deflation seed index 'n - i'"),
    int_point(34, "deflation loop initialiser 'n - i - 1'"),
    int_point(35, "read of j in the deflation loop condition 'j >= 0'"),
    bool_point(36, "deflation loop condition 'j >= 0'"),
    int_point(37, "read of j loading the old coefficient 'c[j]'"),
    int_point(38, "read of j storing the shifted coefficient 'c[j]'"),
    int_point(39, "read of i loading the root during deflation 'root[i]'"),
    int_point(40, "read of j in the deflation loop decrement 'j - 1'"),
    int_point(41, "read of i in the root loop increment"),
)


@kernel
def _solve_one(ctl, coef, m, z0):
    n = p_int(ctl, 0, m - 1)
    if n <= 0:
        raise SubjectFault("cannot refine a root of a constant polynomial")
    n1 = p_int(ctl, 1, n - 1)
    nc = complex(n, 0.0)
    n1c = complex(n1, 0.0)
    z = z0
    oldz = complex(np.inf, np.inf)
    it = p_int(ctl, 2, 0)
    while p_bool(ctl, 3, True):
        it = p_int(ctl, 4, it) + 1
        if p_bool(ctl, 6, p_int(ctl, 5, it) > _MAX_ITER):
            raise SubjectFault("Laguerre refinement failed to converge")
        hi = p_int(ctl, 7, n)
        if hi < 0 or hi >= m:
            raise SubjectFault("coefficient index out of range")
        pv = coef[hi]
        dv = 0j
        d2v = 0j
        j = p_int(ctl, 8, n - 1)
        while p_bool(ctl, 10, p_int(ctl, 9, j) >= 0):
            d2v = dv + z * d2v
            dv = pv + z * dv
            cj = p_int(ctl, 11, j)
            if cj < 0 or cj >= m:
                raise SubjectFault("coefficient index out of range")
            pv = coef[cj] + z * pv
            j = p_int(ctl, 12, j) - 1
        d2v = d2v * 2.0
        tol = _REL_ACC * abs(z)
        if tol < _ABS_ACC:
            tol = _ABS_ACC
        if p_bool(ctl, 13, abs(z - oldz) <= tol):
            return z
        if p_bool(ctl, 14, abs(pv) <= _FVAL_ACC):
            return z
        g = dv / pv
        g2 = g * g
        h = g2 - d2v / pv
        delta = n1c * (nc * h - g2)
        dsq = cmath.sqrt(delta)
        dplus = g + dsq
        dminus = g - dsq
        if p_bool(ctl, 15, abs(dplus) > abs(dminus)):
            den = dplus
        else:
            den = dminus
        if p_bool(ctl, 16, den == 0j):
            z = z + complex(_ABS_ACC, _ABS_ACC)
            oldz = complex(np.inf, np.inf)
        else:
            oldz = z
            step = nc / den
            if it % _BREAK_EVERY == 0:
                step = step * _FRAC[(it // _BREAK_EVERY - 1) % 8]
            z = z - step
    return z


@kernel
def _solve_all(ctl, coef0):
    n = p_int(ctl, 17, coef0.shape[0] - 1)
    if n <= 0:
        raise SubjectFault("polynomial degree must be at least one")
    alen = p_int(ctl, 18, n + 1)
    if alen < 0:
        raise SubjectFault("negative array size")
    c = np.zeros(alen, np.complex128)
    rlen = p_int(ctl, 19, n)
    if rlen < 0:
        raise SubjectFault("negative array size")
    roots = np.zeros(rlen, np.complex128)
    i = p_int(ctl, 20, 0)
    while p_bool(ctl, 23, p_int(ctl, 21, i) <= p_int(ctl, 22, n)):
        si = p_int(ctl, 24, i)
        if si < 0 or si >= alen:
            raise SubjectFault("working index out of range")
        li = p_int(ctl, 25, i)
        if li < 0 or li >= coef0.shape[0]:
            raise SubjectFault("coefficient index out of range")
        c[si] = coef0[li]
        i = p_int(ctl, 26, i) + 1
    i = p_int(ctl, 27, 0)
    while p_bool(ctl, 30, p_int(ctl, 28, i) < p_int(ctl, 29, n)):
        m = p_int(ctl, 31, n - i + 1)
        if m < 0:
            raise SubjectFault("negative array size")
        if m > alen:
            raise SubjectFault("active prefix exceeds the working array")
        zroot = _solve_one(ctl, c, m, 0j)
        ri = p_int(ctl, 32, i)
        if ri < 0 or ri >= rlen:
            raise SubjectFault("root index out of range")
        roots[ri] = zroot
        di = p_int(ctl, 33, n - i)
        if di < 0 or di >= alen:
            raise SubjectFault("deflation index out of range")
        newc = c[di]
        j = p_int(ctl, 34, n - i - 1)
        while p_bool(ctl, 36, p_int(ctl, 35, j) >= 0):
            lj = p_int(ctl, 37, j)
            if lj < 0 or lj >= alen:
                raise SubjectFault("deflation index out of range")
            oldc = c[lj]
            sj = p_int(ctl, 38, j)
            if sj < 0 or sj >= alen:
                raise SubjectFault("deflation index out of range")
            c[sj] = newc
            qi = p_int(ctl, 39, i)
            if qi < 0 or qi >= rlen:
                raise SubjectFault("root index out of range")
            newc = oldc + newc * roots[qi]
            j = p_int(ctl, 40, j) - 1
        i = p_int(ctl, 41, i) + 1
    return roots


def _run(coeffs, state):
    coef = np.asarray(coeffs, dtype=np.complex128)
    roots = _solve_all(state.buf, coef)
    return tuple(complex(r) for r in roots)


def _oracle(coeffs, output):
    degree = len(coeffs) - 1
    if not isinstance(output, tuple) or len(output) != degree:
        return False
    desc = np.asarray(coeffs, dtype=np.complex128)[::-1]
    tolerance = 1.0e-6 * max(1.0, float(np.abs(desc).sum()))
    for z in output:
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            return False
        if abs(np.polyval(desc, z)) > tolerance:
            return False
    return True


def _generate(seed, count):
    inputs = []
    for index in range(count):
        rng = rng_for(seed, index)
        degree = int(rng.integers(2, 6))
        coeffs = [int(v) for v in rng.integers(-9, 10, size=degree)]
        lead = 0
        while lead == 0:
            lead = int(rng.integers(-9, 10))
        coeffs.append(lead)
        inputs.append(tuple(coeffs))
    return inputs


def _repr(coeffs):
    return f"degree {len(coeffs) - 1} coefficients {list(coeffs)}"


SUBJECT = Subject(
    name="laguerre",
    title="Laguerre polynomial root finding with deflation",
    points=_POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate,
    input_repr=_repr,
)
