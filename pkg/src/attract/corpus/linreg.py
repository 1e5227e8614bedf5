"""Ridge regression with explicit normal-equation loops, instrumented.

The design matrix gets an intercept column; the normal equations are
accumulated with hooked index loops; the system is solved by Gaussian
elimination wrapped in a do-while that multiplies the ridge by 10 and
retries whenever elimination reports a singular pivot.  The hooked
allocation length of the A^T*y vector is the interesting point: one more
slot is never read, one fewer crashes the fill loop.
"""

import numpy as np

from .._accel import kernel
from ..engine.errors import SubjectFault
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point, rng_for

POINTS = (
    int_point(0, "data row count read 'X.rows'"),
    int_point(1, "feature count read 'X.cols'"),
    int_point(2, "intercept-extended column count 'X.cols + 1'"),
    int_point(3, "literal 0 starting design fill outer loop"),
    int_point(4, "read of i in design outer loop condition"),
    int_point(5, "row count read in design outer loop condition"),
    bool_point(6, "design outer loop condition 'i < n'"),
    int_point(7, "literal 0 starting design fill inner loop"),
    int_point(8, "read of j in design inner loop condition"),
    int_point(9, "feature count read in design inner loop condition"),
    bool_point(10, "design inner loop condition 'j < k'"),
    int_point(11, "read of i as design store row"),
    int_point(12, "read of j as design store column"),
    int_point(13, "read of i as data load row"),
    int_point(14, "read of j as data load column"),
    int_point(15, "design inner loop update 'j++' (value discarded)"),
    int_point(16, "read of i as intercept store row"),
    int_point(17, "feature count read as intercept store column"),
    int_point(18, "design outer loop update 'i++' (value discarded)"),
    int_point(19, "column count read as A^T*y allocation length"),
    int_point(20, "literal 0 starting A^T*y fill loop"),
    int_point(21, "read of c in A^T*y fill condition"),
    int_point(22, "column count read in A^T*y fill condition"),
    bool_point(23, "A^T*y fill condition 'c < nc'"),
    int_point(24, "literal 0 starting row-sum loop"),
    int_point(25, "read of r in row-sum condition"),
    int_point(26, "row count read in row-sum condition"),
    bool_point(27, "row-sum condition 'r < n'"),
    int_point(28, "read of r as design load row in A^T*y"),
    int_point(29, "read of c as design load column in A^T*y"),
    int_point(30, "read of r as target load index"),
    int_point(31, "row-sum update 'r++' (value discarded)"),
    int_point(32, "read of c as A^T*y store index"),
    int_point(33, "A^T*y fill update 'c++' (value discarded)"),
    int_point(34, "column count read as A^T*A allocation rows"),
    int_point(35, "column count read as A^T*A allocation columns"),
    int_point(36, "literal 0 starting A^T*A outer loop"),
    int_point(37, "read of r1 in A^T*A outer condition"),
    int_point(38, "column count read in A^T*A outer condition"),
    bool_point(39, "A^T*A outer condition 'r1 < nc'"),
    int_point(40, "literal 0 starting A^T*A inner loop"),
    int_point(41, "read of c1 in A^T*A inner condition"),
    int_point(42, "column count read in A^T*A inner condition"),
    bool_point(43, "A^T*A inner condition 'c1 < nc'"),
    int_point(44, "literal 0 starting A^T*A sum loop"),
    int_point(45, "read of t in A^T*A sum condition"),
    int_point(46, "row count read in A^T*A sum condition"),
    bool_point(47, "A^T*A sum condition 't < n'"),
    int_point(48, "read of t as first factor row"),
    int_point(49, "read of r1 as first factor column"),
    int_point(50, "read of t as second factor row"),
    int_point(51, "read of c1 as second factor column"),
    int_point(52, "A^T*A sum update 't++' (value discarded)"),
    int_point(53, "read of r1 as A^T*A store row"),
    int_point(54, "read of c1 as A^T*A store column"),
    int_point(55, "A^T*A inner update 'c1++' (value discarded)"),
    int_point(56, "A^T*A outer update 'r1++' (value discarded)"),
    int_point(57, "literal 0 starting ridge diagonal loop"),
    int_point(58, "read of d in ridge diagonal condition"),
    int_point(59, "column count read in ridge diagonal condition"),
    bool_point(60, "ridge diagonal condition 'd < nc'"),
    int_point(61, "read of d as diagonal row index"),
    int_point(62, "read of d as diagonal column index"),
    int_point(63, "ridge diagonal update 'd++' (value discarded)"),
    bool_point(64, "solver-outcome check (catch-equivalent) 'ok'"),
    bool_point(65, "read of success in do-while exit"),
    bool_point(66, "do-while retry condition '!success'"),
)


@kernel
def _gauss_solve(m, v):
    """Partial-pivot elimination; reports failure on a tiny pivot.

    Iterates over the matrix's own dimension, so a longer right-hand
    side vector is simply ignored past n entries.
    """
    n = m.shape[0]
    a = np.empty((n, n + 1))
    for r in range(n):
        for c in range(n):
            a[r, c] = m[r, c]
        a[r, n] = v[r]
    for col in range(n):
        piv = col
        for r in range(col + 1, n):
            if abs(a[r, col]) > abs(a[piv, col]):
                piv = r
        if abs(a[piv, col]) < 1e-10:
            return False, np.zeros(n)
        if piv != col:
            for c in range(n + 1):
                t = a[col, c]
                a[col, c] = a[piv, c]
                a[piv, c] = t
        for r in range(col + 1, n):
            f = a[r, col] / a[col, col]
            for c in range(col, n + 1):
                a[r, c] = a[r, c] - f * a[col, c]
    x = np.zeros(n)
    for r in range(n - 1, -1, -1):
        s = a[r, n]
        for c in range(r + 1, n):
            s = s - a[r, c] * x[c]
        x[r] = s / a[r, r]
    return True, x


@kernel
def _linreg_kernel(ctl, X, y):
    n = p_int(ctl, 0, X.shape[0])
    k = p_int(ctl, 1, X.shape[1])
    nc = p_int(ctl, 2, k + 1)
    if n < 0 or nc < 0:
        raise SubjectFault("negative array size")
    A = np.zeros((n, nc))
    i = p_int(ctl, 3, 0)
    while p_bool(ctl, 6, p_int(ctl, 4, i) < p_int(ctl, 5, n)):
        j = p_int(ctl, 7, 0)
        while p_bool(ctl, 10, p_int(ctl, 8, j) < p_int(ctl, 9, k)):
            A[p_int(ctl, 11, i), p_int(ctl, 12, j)] = X[
                p_int(ctl, 13, i), p_int(ctl, 14, j)
            ]
            _ = p_int(ctl, 15, j)
            j = j + 1
        A[p_int(ctl, 16, i), p_int(ctl, 17, k)] = 1.0
        _ = p_int(ctl, 18, i)
        i = i + 1

    alen = p_int(ctl, 19, nc)
    if alen < 0:
        raise SubjectFault("negative array size")
    aty = np.zeros(alen)
    c = p_int(ctl, 20, 0)
    while p_bool(ctl, 23, p_int(ctl, 21, c) < p_int(ctl, 22, nc)):
        acc = 0.0
        r = p_int(ctl, 24, 0)
        while p_bool(ctl, 27, p_int(ctl, 25, r) < p_int(ctl, 26, n)):
            acc = acc + A[p_int(ctl, 28, r), p_int(ctl, 29, c)] * y[p_int(ctl, 30, r)]
            _ = p_int(ctl, 31, r)
            r = r + 1
        aty[p_int(ctl, 32, c)] = acc
        _ = p_int(ctl, 33, c)
        c = c + 1

    ar = p_int(ctl, 34, nc)
    ac = p_int(ctl, 35, nc)
    if ar < 0 or ac < 0:
        raise SubjectFault("negative array size")
    ata = np.zeros((ar, ac))
    r1 = p_int(ctl, 36, 0)
    while p_bool(ctl, 39, p_int(ctl, 37, r1) < p_int(ctl, 38, nc)):
        c1 = p_int(ctl, 40, 0)
        while p_bool(ctl, 43, p_int(ctl, 41, c1) < p_int(ctl, 42, nc)):
            acc = 0.0
            t = p_int(ctl, 44, 0)
            while p_bool(ctl, 47, p_int(ctl, 45, t) < p_int(ctl, 46, n)):
                acc = acc + (
                    A[p_int(ctl, 48, t), p_int(ctl, 49, r1)]
                    * A[p_int(ctl, 50, t), p_int(ctl, 51, c1)]
                )
                _ = p_int(ctl, 52, t)
                t = t + 1
            ata[p_int(ctl, 53, r1), p_int(ctl, 54, c1)] = acc
            _ = p_int(ctl, 55, c1)
            c1 = c1 + 1
        _ = p_int(ctl, 56, r1)
        r1 = r1 + 1

    ridge = 1e-8
    beta = np.zeros(1)
    while True:
        m = ata.copy()
        d = p_int(ctl, 57, 0)
        while p_bool(ctl, 60, p_int(ctl, 58, d) < p_int(ctl, 59, nc)):
            m[p_int(ctl, 61, d), p_int(ctl, 62, d)] += ridge
            _ = p_int(ctl, 63, d)
            d = d + 1
        ok, beta = _gauss_solve(m, aty)
        if p_bool(ctl, 64, ok):
            success = True
        else:
            ridge = ridge * 10.0
            success = False
        if not p_bool(ctl, 66, not p_bool(ctl, 65, success)):
            break
    return beta


def _run(sample, state):
    X, y = sample
    return _linreg_kernel(state.buf, np.array(X, dtype=np.float64), np.array(y, dtype=np.float64))


def _oracle(sample, output) -> bool:
    X, y = sample
    A = np.column_stack([X, np.ones(len(y))])
    ref = np.linalg.solve(A.T @ A + 1e-8 * np.eye(A.shape[1]), A.T @ y)
    if not isinstance(output, np.ndarray) or output.shape != ref.shape:
        return False
    if not np.all(np.isfinite(output)):
        return False
    return bool(np.max(np.abs(output - ref)) < 1e-6)


def _generate_inputs(seed: int, count: int) -> list:
    inputs = []
    for index in range(count):
        rng = rng_for(seed, index)
        X = rng.normal(0.0, 1.0, size=(25, 2))
        coef = rng.uniform(-3.0, 3.0, size=3)
        y = X @ coef[:2] + coef[2] + rng.normal(0.0, 0.05, size=25)
        inputs.append((X, y))
    return inputs


def _input_repr(sample) -> str:
    X, y = sample
    return f"X{X.shape} y[{len(y)}] mean {float(np.mean(y)):.3f}"


SUBJECT = Subject(
    name="linreg",
    title="ridge regression via explicit normal equations and retry loop",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
