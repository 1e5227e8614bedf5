"""Longest common subsequence via the classic DP matrix, instrumented.

The matrix is allocated as ``new int[a.length()+1][b.length()+1]``; both
dimension expressions are hooked, as are the fill loops, the cell reads
and the backtracking read-out that reconstructs the subsequence.  The
oracle recomputes the LCS length independently and checks that the
output is a common subsequence of both strings with that length.
"""

import numpy as np

from .._accel import kernel
from ..engine.errors import SubjectFault
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point, load_data_lines

POINTS = (
    int_point(0, "a.length() read in row dimension"),
    int_point(1, "row dimension 'a.length() + 1' of the DP matrix"),
    int_point(2, "b.length() read in column dimension"),
    int_point(3, "column dimension 'b.length() + 1' of the DP matrix"),
    int_point(4, "literal 0 starting the outer fill loop"),
    int_point(5, "read of i in outer fill loop condition"),
    int_point(6, "a.length() read in outer fill loop condition"),
    bool_point(7, "outer fill loop condition 'i < a.length()'"),
    int_point(8, "literal 0 starting the inner fill loop"),
    int_point(9, "read of j in inner fill loop condition"),
    int_point(10, "b.length() read in inner fill loop condition"),
    bool_point(11, "inner fill loop condition 'j < b.length()'"),
    int_point(12, "read of i as charAt argument"),
    int_point(13, "read of j as charAt argument"),
    bool_point(14, "char equality 'a.charAt(i) == b.charAt(j)'"),
    int_point(15, "read of i in match-store row 'i+1'"),
    int_point(16, "match-store row compound 'i+1'"),
    int_point(17, "read of j in match-store column 'j+1'"),
    int_point(18, "match-store column compound 'j+1'"),
    int_point(19, "read of i in diagonal load 'lengths[i][j]'"),
    int_point(20, "read of j in diagonal load 'lengths[i][j]'"),
    int_point(21, "diagonal load 'lengths[i][j]' value"),
    int_point(22, "match-store value 'lengths[i][j] + 1'"),
    int_point(23, "read of i in miss-store row 'i+1'"),
    int_point(24, "miss-store row compound 'i+1'"),
    int_point(25, "read of j in miss-store column 'j+1'"),
    int_point(26, "miss-store column compound 'j+1'"),
    int_point(27, "read of i in up-neighbour row 'i+1'"),
    int_point(28, "up-neighbour row compound 'i+1'"),
    int_point(29, "read of j in up-neighbour load"),
    int_point(30, "up-neighbour load 'lengths[i+1][j]' value"),
    int_point(31, "read of i in left-neighbour load"),
    int_point(32, "read of j in left-neighbour column 'j+1'"),
    int_point(33, "left-neighbour column compound 'j+1'"),
    int_point(34, "left-neighbour load 'lengths[i][j+1]' value"),
    int_point(35, "miss-store value 'Math.max(...)' result"),
    int_point(36, "inner fill loop update 'j++' (value discarded)"),
    int_point(37, "outer fill loop update 'i++' (value discarded)"),
    int_point(38, "a.length() read initialising backtrack x"),
    int_point(39, "b.length() read initialising backtrack y"),
    int_point(40, "read of x in 'x != 0'"),
    bool_point(41, "backtrack condition operand 'x != 0'"),
    int_point(42, "read of y in 'y != 0'"),
    bool_point(43, "backtrack condition operand 'y != 0'"),
    bool_point(44, "combined backtrack condition 'x != 0 && y != 0'"),
    int_point(45, "read of x in first backtrack load"),
    int_point(46, "read of y in first backtrack load"),
    int_point(47, "first backtrack load 'lengths[x][y]' value"),
    int_point(48, "read of x in 'x-1' (up comparison)"),
    int_point(49, "compound 'x-1' in up comparison"),
    int_point(50, "read of y in up-comparison load"),
    int_point(51, "up-comparison load 'lengths[x-1][y]' value"),
    bool_point(52, "up-move condition 'lengths[x][y] == lengths[x-1][y]'"),
    int_point(53, "statement 'x--' after up move (value discarded)"),
    int_point(54, "read of x in second backtrack load"),
    int_point(55, "read of y in second backtrack load"),
    int_point(56, "second backtrack load 'lengths[x][y]' value"),
    int_point(57, "read of x in left-comparison load"),
    int_point(58, "read of y in 'y-1' (left comparison)"),
    int_point(59, "compound 'y-1' in left comparison"),
    int_point(60, "left-comparison load 'lengths[x][y-1]' value"),
    bool_point(61, "left-move condition 'lengths[x][y] == lengths[x][y-1]'"),
    int_point(62, "statement 'y--' after left move (value discarded)"),
    int_point(63, "read of x in append 'a.charAt(x-1)'"),
    int_point(64, "compound 'x-1' as append charAt argument"),
    int_point(65, "statement 'x--' after append (value discarded)"),
    int_point(66, "statement 'y--' after append (value discarded)"),
)


@kernel
def _lcs_kernel(ctl, a, b):
    la = a.shape[0]
    lb = b.shape[0]
    d1 = p_int(ctl, 1, p_int(ctl, 0, la) + 1)
    d2 = p_int(ctl, 3, p_int(ctl, 2, lb) + 1)
    if d1 < 0 or d2 < 0:
        raise SubjectFault("negative array size")
    lengths = np.zeros((d1, d2), np.int64)

    i = p_int(ctl, 4, 0)
    while p_bool(ctl, 7, p_int(ctl, 5, i) < p_int(ctl, 6, la)):
        j = p_int(ctl, 8, 0)
        while p_bool(ctl, 11, p_int(ctl, 9, j) < p_int(ctl, 10, lb)):
            if p_bool(ctl, 14, int(a[p_int(ctl, 12, i)]) == int(b[p_int(ctl, 13, j)])):
                lengths[
                    p_int(ctl, 16, p_int(ctl, 15, i) + 1),
                    p_int(ctl, 18, p_int(ctl, 17, j) + 1),
                ] = p_int(
                    ctl,
                    22,
                    p_int(ctl, 21, lengths[p_int(ctl, 19, i), p_int(ctl, 20, j)]) + 1,
                )
            else:
                m1 = p_int(
                    ctl,
                    30,
                    lengths[p_int(ctl, 28, p_int(ctl, 27, i) + 1), p_int(ctl, 29, j)],
                )
                m2 = p_int(
                    ctl,
                    34,
                    lengths[p_int(ctl, 31, i), p_int(ctl, 33, p_int(ctl, 32, j) + 1)],
                )
                lengths[
                    p_int(ctl, 24, p_int(ctl, 23, i) + 1),
                    p_int(ctl, 26, p_int(ctl, 25, j) + 1),
                ] = p_int(ctl, 35, max(m1, m2))
            _ = p_int(ctl, 36, j)
            j = j + 1
        _ = p_int(ctl, 37, i)
        i = i + 1

    out = np.empty(la + lb + 4, np.uint8)
    m = 0
    x = p_int(ctl, 38, la)
    y = p_int(ctl, 39, lb)
    while True:
        c1 = p_bool(ctl, 41, p_int(ctl, 40, x) != 0)
        if c1:
            c2 = p_bool(ctl, 43, p_int(ctl, 42, y) != 0)
            cond = p_bool(ctl, 44, c2)
        else:
            cond = p_bool(ctl, 44, False)
        if not cond:
            break
        v_here = p_int(ctl, 47, lengths[p_int(ctl, 45, x), p_int(ctl, 46, y)])
        v_up = p_int(
            ctl,
            51,
            lengths[p_int(ctl, 49, p_int(ctl, 48, x) - 1), p_int(ctl, 50, y)],
        )
        if p_bool(ctl, 52, v_here == v_up):
            _ = p_int(ctl, 53, x)
            x = x - 1
        else:
            v_here2 = p_int(ctl, 56, lengths[p_int(ctl, 54, x), p_int(ctl, 55, y)])
            v_left = p_int(
                ctl,
                60,
                lengths[p_int(ctl, 57, x), p_int(ctl, 59, p_int(ctl, 58, y) - 1)],
            )
            if p_bool(ctl, 61, v_here2 == v_left):
                _ = p_int(ctl, 62, y)
                y = y - 1
            else:
                if m >= out.shape[0]:
                    raise SubjectFault("output longer than both inputs")
                out[m] = a[p_int(ctl, 64, p_int(ctl, 63, x) - 1)]
                m = m + 1
                _ = p_int(ctl, 65, x)
                x = x - 1
                _ = p_int(ctl, 66, y)
                y = y - 1
    return out[:m][::-1].copy()


def _run(pair, state):
    a, b = pair
    arr_a = np.frombuffer(a, dtype=np.uint8).copy()
    arr_b = np.frombuffer(b, dtype=np.uint8).copy()
    out = _lcs_kernel(state.buf, arr_a, arr_b)
    return bytes(np.asarray(out, dtype=np.uint8))


def _lcs_length(a: bytes, b: bytes) -> int:
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[len(b)]


def _is_subsequence(sub: bytes, full: bytes) -> bool:
    it = iter(full)
    return all(ch in it for ch in sub)


def _oracle(pair, output) -> bool:
    a, b = pair
    if not isinstance(output, bytes):
        return False
    return (
        len(output) == _lcs_length(a, b)
        and _is_subsequence(output, a)
        and _is_subsequence(output, b)
    )


def _generate_inputs(seed: int, count: int) -> list:
    """Cycle the bundled string pairs; pure in (seed, index) because the
    bank is fixed.  Every pair is non-empty on both sides."""
    pairs = []
    lines = load_data_lines("lcs_pairs.txt")
    if len(lines) % 2:
        raise ValueError("pair file must hold an even number of lines")
    bank = [
        (lines[k].encode("ascii"), lines[k + 1].encode("ascii"))
        for k in range(0, len(lines), 2)
    ]
    for index in range(count):
        pairs.append(bank[index % len(bank)])
    return pairs


def _input_repr(pair) -> str:
    a, b = pair
    return f"({a.decode('ascii')}, {b.decode('ascii')})"


SUBJECT = Subject(
    name="lcs",
    title="longest common subsequence DP with matrix backtracking",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
