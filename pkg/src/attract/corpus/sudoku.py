"""Backtracking sudoku solver over row/column/box occupancy arrays.

The solver keeps three boolean subset arrays (rows, columns, boxes) whose
allocation dimensions are hooked, marks givens with a hooked boolean
literal, and scans cells recursively, trying candidate values against the
subsets.  The oracle checks the output grid is a valid complete sudoku
that preserves every given.
"""

import numpy as np

from .._accel import kernel, kernel_sig
from ..engine.errors import SubjectFault
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point, load_data_lines

POINTS = (
    int_point(0, "board size read 'mBoard.length'"),
    int_point(1, "row-subset allocation rows read"),
    int_point(2, "row-subset allocation columns read"),
    int_point(3, "column-subset allocation rows read"),
    int_point(4, "column-subset allocation columns read"),
    int_point(5, "box-subset allocation rows read"),
    int_point(6, "box-subset allocation columns read"),
    int_point(7, "literal 0 starting init outer loop"),
    int_point(8, "read of i in init outer loop condition"),
    int_point(9, "board size read in init outer loop condition"),
    bool_point(10, "init outer loop condition 'i < size'"),
    int_point(11, "literal 0 starting init inner loop"),
    int_point(12, "read of j in init inner loop condition"),
    int_point(13, "board size read in init inner loop condition"),
    bool_point(14, "init inner loop condition 'j < size'"),
    int_point(15, "read of i as given load row"),
    int_point(16, "read of j as given load column"),
    int_point(17, "given cell value read 'mBoard[i][j]'"),
    bool_point(18, "given-cell guard 'value != 0'"),
    bool_point(19, "boolean literal true marking a given"),
    int_point(20, "init inner loop update 'j++' (value discarded)"),
    int_point(21, "init outer loop update 'i++' (value discarded)"),
    int_point(22, "read of i as row-subset store row"),
    int_point(23, "read of value in row-subset 'value - 1'"),
    int_point(24, "compound 'value - 1' as row-subset store column"),
    int_point(25, "read of j as column-subset store row"),
    int_point(26, "read of value in column-subset 'value - 1'"),
    int_point(27, "compound 'value - 1' as column-subset store column"),
    int_point(28, "box number result 'computeBoxNumber(i, j)'"),
    int_point(29, "read of value in box-subset 'value - 1'"),
    int_point(30, "compound 'value - 1' as box-subset store column"),
    int_point(31, "read of i in row-wrap guard 'i == size'"),
    int_point(32, "board size read in row-wrap guard"),
    bool_point(33, "row-wrap guard 'i == size'"),
    int_point(34, "literal 0 assigned to i on row wrap"),
    int_point(35, "pre-increment '++j' value in column-end guard"),
    int_point(36, "board size read in column-end guard"),
    bool_point(37, "column-end guard '++j == size'"),
    int_point(38, "read of i as occupied load row"),
    int_point(39, "read of j as occupied load column"),
    int_point(40, "occupied cell value read"),
    bool_point(41, "occupied guard 'mBoard[i][j] != 0'"),
    int_point(42, "read of i in occupied-skip recursion 'i+1'"),
    int_point(43, "compound 'i+1' in occupied-skip recursion"),
    int_point(44, "read of j as occupied-skip recursion argument"),
    int_point(45, "literal 1 starting candidate loop"),
    int_point(46, "read of value in candidate loop condition"),
    int_point(47, "board size read in candidate loop condition"),
    bool_point(48, "candidate loop condition 'value <= size'"),
    bool_point(49, "validity check result 'isValid(i, j, value)'"),
    int_point(50, "read of i as placement store row"),
    int_point(51, "read of j as placement store column"),
    int_point(52, "read of value stored on placement"),
    bool_point(53, "boolean literal true marking a placement"),
    int_point(54, "read of i in placement recursion 'i+1'"),
    int_point(55, "compound 'i+1' in placement recursion"),
    int_point(56, "read of j as placement recursion argument"),
    bool_point(57, "recursion result check 'solve(i+1, j)'"),
    bool_point(58, "boolean literal false unmarking a placement"),
    int_point(59, "candidate loop update 'value++' (value discarded)"),
    int_point(60, "read of i as clear store row"),
    int_point(61, "read of j as clear store column"),
    int_point(62, "literal 0 stored on clear"),
)

_BOX = 3


@kernel
def _set_subset(ctl, rows, cols, boxes, i, j, value, present):
    flag = 1 if present else 0
    rows[p_int(ctl, 22, i), p_int(ctl, 24, p_int(ctl, 23, value) - 1)] = flag
    cols[p_int(ctl, 25, j), p_int(ctl, 27, p_int(ctl, 26, value) - 1)] = flag
    boxno = p_int(ctl, 28, (i // _BOX) * _BOX + (j // _BOX))
    boxes[boxno, p_int(ctl, 30, p_int(ctl, 29, value) - 1)] = flag


@kernel
def _is_valid(rows, cols, boxes, i, j, value):
    v = value - 1
    boxno = (i // _BOX) * _BOX + (j // _BOX)
    return not (rows[i, v] == 1 or cols[j, v] == 1 or boxes[boxno, v] == 1)


@kernel_sig(
    "boolean(int64[:], int64[:, :], uint8[:, :], uint8[:, :], uint8[:, :],"
    " int64, int64, int64)"
)
def _solve(ctl, board, rows, cols, boxes, size, i, j):
    if p_bool(ctl, 33, p_int(ctl, 31, i) == p_int(ctl, 32, size)):
        i = p_int(ctl, 34, 0)
        j = j + 1
        jv = p_int(ctl, 35, j)
        if p_bool(ctl, 37, jv == p_int(ctl, 36, size)):
            return True
    if p_bool(ctl, 41, p_int(ctl, 40, board[p_int(ctl, 38, i), p_int(ctl, 39, j)]) != 0):
        return _solve(
            ctl, board, rows, cols, boxes, size,
            p_int(ctl, 43, p_int(ctl, 42, i) + 1), p_int(ctl, 44, j),
        )
    value = p_int(ctl, 45, 1)
    while p_bool(ctl, 48, p_int(ctl, 46, value) <= p_int(ctl, 47, size)):
        if p_bool(ctl, 49, _is_valid(rows, cols, boxes, i, j, value)):
            board[p_int(ctl, 50, i), p_int(ctl, 51, j)] = p_int(ctl, 52, value)
            _set_subset(ctl, rows, cols, boxes, i, j, value, p_bool(ctl, 53, True))
            if p_bool(
                ctl,
                57,
                _solve(
                    ctl, board, rows, cols, boxes, size,
                    p_int(ctl, 55, p_int(ctl, 54, i) + 1), p_int(ctl, 56, j),
                ),
            ):
                return True
            _set_subset(ctl, rows, cols, boxes, i, j, value, p_bool(ctl, 58, False))
        _ = p_int(ctl, 59, value)
        value = value + 1
    board[p_int(ctl, 60, i), p_int(ctl, 61, j)] = p_int(ctl, 62, 0)
    return False


@kernel
def _sudoku_main(ctl, board):
    size = p_int(ctl, 0, board.shape[0])
    r1 = p_int(ctl, 1, size)
    r2 = p_int(ctl, 2, size)
    c1 = p_int(ctl, 3, size)
    c2 = p_int(ctl, 4, size)
    b1 = p_int(ctl, 5, size)
    b2 = p_int(ctl, 6, size)
    if r1 < 0 or r2 < 0 or c1 < 0 or c2 < 0 or b1 < 0 or b2 < 0:
        raise SubjectFault("negative array size")
    rows = np.zeros((r1, r2), np.uint8)
    cols = np.zeros((c1, c2), np.uint8)
    boxes = np.zeros((b1, b2), np.uint8)

    i = p_int(ctl, 7, 0)
    while p_bool(ctl, 10, p_int(ctl, 8, i) < p_int(ctl, 9, size)):
        j = p_int(ctl, 11, 0)
        while p_bool(ctl, 14, p_int(ctl, 12, j) < p_int(ctl, 13, size)):
            value = p_int(ctl, 17, board[p_int(ctl, 15, i), p_int(ctl, 16, j)])
            if p_bool(ctl, 18, value != 0):
                _set_subset(ctl, rows, cols, boxes, i, j, value, p_bool(ctl, 19, True))
            _ = p_int(ctl, 20, j)
            j = j + 1
        _ = p_int(ctl, 21, i)
        i = i + 1

    if not _solve(ctl, board, rows, cols, boxes, size, 0, 0):
        raise SubjectFault("unsolvable board")
    return board


def _run(grid, state):
    board = np.array(grid, dtype=np.int64)
    _sudoku_main(state.buf, board)
    return board


def _oracle(grid, output) -> bool:
    grid = np.asarray(grid)
    if not isinstance(output, np.ndarray) or output.shape != (9, 9):
        return False
    if np.any((output < 1) | (output > 9)):
        return False
    given = grid != 0
    if not np.array_equal(output[given], grid[given]):
        return False
    want = np.arange(1, 10)
    for t in range(9):
        if not np.array_equal(np.sort(output[t, :]), want):
            return False
        if not np.array_equal(np.sort(output[:, t]), want):
            return False
    for bi in range(3):
        for bj in range(3):
            box = output[3 * bi : 3 * bi + 3, 3 * bj : 3 * bj + 3]
            if not np.array_equal(np.sort(box.ravel()), want):
                return False
    return True


def _parse_grid(line: str) -> np.ndarray:
    if len(line) != 81 or not line.isdigit():
        raise ValueError("each puzzle line must hold 81 digits (0 = blank)")
    return np.array([int(ch) for ch in line], dtype=np.int64).reshape(9, 9)


def _generate_inputs(seed: int, count: int) -> list:
    """Cycle the bundled puzzle bank (solvable by construction)."""
    bank = [_parse_grid(line) for line in load_data_lines("sudoku_puzzles.txt")]
    return [bank[index % len(bank)].copy() for index in range(count)]


def _input_repr(grid) -> str:
    grid = np.asarray(grid)
    return "".join(str(int(v)) for v in grid.ravel()[:27]) + "..."


SUBJECT = Subject(
    name="sudoku",
    title="backtracking sudoku solver over occupancy subset arrays",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
