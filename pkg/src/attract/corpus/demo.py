"""Minimal worked subject: a fold with one hooked expression.

The program ORs together ``i >> mask`` for i counting down from ``bound``
to 1, with mask fixed at 2.  Its single perturbation point is the read of
``i`` inside the loop body, so the space for an input equals the loop
trip count and every campaign over bounds 0..N-1 has N*(N-1)/2 runs.
"""

from .._accel import kernel
from ..engine.hooks import p_int
from .base import Subject, int_point

POINTS = (int_point(0, "read of i in 'acc |= i >> mask'"),)


@kernel
def _demo_kernel(ctl, bound):
    acc = 0
    mask = 2
    i = bound
    while i > 0:
        acc = acc | (p_int(ctl, 0, i) >> mask)
        i = i - 1
    return acc


def _run(bound, state):
    return int(_demo_kernel(state.buf, int(bound)))


def _oracle(bound, output) -> bool:
    expected = 0
    for i in range(1, int(bound) + 1):
        expected |= i >> 2
    return output == expected


def _generate_inputs(seed: int, count: int) -> list:
    # Inputs are simply the bounds 0..count-1; the seed is accepted for
    # interface uniformity but cannot influence this subject.
    return list(range(count))


SUBJECT = Subject(
    name="demo",
    title="accumulate-OR loop with a single hooked loop variable",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
)
