"""Recursive in-place quicksort with dense expression instrumentation.

The structure is the classic two-index partition scheme: pick the middle
element as pivot, scan from both ends, swap, recurse on both halves.
Every integer expression (variable reads, literals, compounds, array
element reads) and every boolean condition carries a hook, numbered in
source order.  The boolean points are the two recursion guards, the swap
guard, both scan conditions and the outer loop condition.
"""

import numpy as np

from .._accel import kernel
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point

POINTS = (
    int_point(0, "literal 0 as initial lo argument"),
    int_point(1, "array length read in initial hi argument"),
    int_point(2, "compound 'array.length - 1' initial hi argument"),
    int_point(3, "read of beg in 'left = beg'"),
    int_point(4, "read of end in 'right = end'"),
    int_point(5, "read of beg in pivot index expression"),
    int_point(6, "read of end in 'end - beg'"),
    int_point(7, "read of beg in 'end - beg'"),
    int_point(8, "compound 'end - beg' in pivot index expression"),
    int_point(9, "literal 2 divisor in pivot index expression"),
    int_point(10, "compound '(end - beg) / 2' in pivot index expression"),
    int_point(11, "pivot index expression 'beg + ((end - beg) / 2)'"),
    int_point(12, "pivot value read 'array[pivotIndex]'"),
    int_point(13, "read of left in outer loop condition"),
    int_point(14, "read of right in outer loop condition"),
    bool_point(15, "outer loop condition 'left <= right'"),
    int_point(16, "read of left as left-scan index"),
    int_point(17, "element read 'array[left]' in left scan"),
    int_point(18, "read of pivot in left-scan condition"),
    bool_point(19, "left-scan condition 'array[left] < pivot'"),
    int_point(20, "increment 'left + 1' in left scan"),
    int_point(21, "read of right as right-scan index"),
    int_point(22, "element read 'array[right]' in right scan"),
    int_point(23, "read of pivot in right-scan condition"),
    bool_point(24, "right-scan condition 'array[right] > pivot'"),
    int_point(25, "decrement 'right - 1' in right scan"),
    int_point(26, "read of left in swap guard"),
    int_point(27, "read of right in swap guard"),
    bool_point(28, "swap guard condition 'left <= right'"),
    int_point(29, "read of left as index in 'tmp = array[left]'"),
    int_point(30, "element read 'array[left]' into tmp"),
    int_point(31, "read of left as store index in 'array[left] = array[right]'"),
    int_point(32, "read of right as load index in 'array[left] = array[right]'"),
    int_point(33, "element read 'array[right]' in swap"),
    int_point(34, "read of right as store index in 'array[right] = tmp'"),
    int_point(35, "read of tmp in 'array[right] = tmp'"),
    int_point(36, "post-swap increment 'left + 1'"),
    int_point(37, "post-swap decrement 'right - 1'"),
    int_point(38, "read of beg in left-recursion guard"),
    int_point(39, "read of right in left-recursion guard"),
    bool_point(40, "left-recursion guard 'beg < right'"),
    int_point(41, "read of beg as left-recursion argument"),
    int_point(42, "read of right as left-recursion argument"),
    int_point(43, "read of left in right-recursion guard"),
    int_point(44, "read of end in right-recursion guard"),
    bool_point(45, "right-recursion guard 'left < end'"),
    int_point(46, "read of left as right-recursion argument"),
    int_point(47, "read of end as right-recursion argument"),
)


@kernel
def _qs(ctl, arr, beg, end):
    left = p_int(ctl, 3, beg)
    right = p_int(ctl, 4, end)
    pidx = p_int(
        ctl,
        11,
        p_int(ctl, 5, beg)
        + p_int(
            ctl,
            10,
            p_int(ctl, 8, p_int(ctl, 6, end) - p_int(ctl, 7, beg))
            // p_int(ctl, 9, 2),
        ),
    )
    pivot = p_int(ctl, 12, arr[pidx])
    while p_bool(ctl, 15, p_int(ctl, 13, left) <= p_int(ctl, 14, right)):
        while p_bool(ctl, 19, p_int(ctl, 17, arr[p_int(ctl, 16, left)]) < p_int(ctl, 18, pivot)):
            left = p_int(ctl, 20, left + 1)
        while p_bool(ctl, 24, p_int(ctl, 22, arr[p_int(ctl, 21, right)]) > p_int(ctl, 23, pivot)):
            right = p_int(ctl, 25, right - 1)
        if p_bool(ctl, 28, p_int(ctl, 26, left) <= p_int(ctl, 27, right)):
            tmp = p_int(ctl, 30, arr[p_int(ctl, 29, left)])
            arr[p_int(ctl, 31, left)] = p_int(ctl, 33, arr[p_int(ctl, 32, right)])
            arr[p_int(ctl, 34, right)] = p_int(ctl, 35, tmp)
            left = p_int(ctl, 36, left + 1)
            right = p_int(ctl, 37, right - 1)
    if p_bool(ctl, 40, p_int(ctl, 38, beg) < p_int(ctl, 39, right)):
        _qs(ctl, arr, p_int(ctl, 41, beg), p_int(ctl, 42, right))
    if p_bool(ctl, 45, p_int(ctl, 43, left) < p_int(ctl, 44, end)):
        _qs(ctl, arr, p_int(ctl, 46, left), p_int(ctl, 47, end))


@kernel
def _qs_main(ctl, arr):
    lo = p_int(ctl, 0, 0)
    hi = p_int(ctl, 2, p_int(ctl, 1, arr.shape[0]) - 1)
    _qs(ctl, arr, lo, hi)


def _run(values, state):
    arr = np.array(values, dtype=np.int64)
    _qs_main(state.buf, arr)
    return arr


def _oracle(values, output) -> bool:
    if not isinstance(output, np.ndarray) or output.shape != np.shape(values):
        return False
    if np.any(np.diff(output) < 0):
        return False
    return bool(np.array_equal(np.sort(np.asarray(values)), np.sort(output)))


def _generate_inputs(seed: int, count: int) -> list:
    from .base import rng_for

    inputs = []
    for index in range(count):
        rng = rng_for(seed, index)
        inputs.append(
            rng.integers(-(2**31), 2**31, size=100, dtype=np.int64)
        )
    return inputs


def _input_repr(values) -> str:
    values = np.asarray(values)
    return f"int[{values.size}] starting {values[:4].tolist()}..."


SUBJECT = Subject(
    name="quicksort",
    title="recursive two-index partition quicksort over 32-bit values",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
