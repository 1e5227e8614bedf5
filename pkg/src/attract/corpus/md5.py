"""MD5 digest with Java-int discipline, judged against hashlib.

Words are kept canonical in [0, 2^32) and re-masked after every
arithmetic step, exactly like 32-bit wraparound in the source being
mirrored; hook perturbations may inject sign-wrapped values and the next
mask folds them back onto the same bit pattern.  The oracle hashes the
input with hashlib.md5, a fully independent implementation.
"""

import hashlib
import math
import struct

import numpy as np

from .._accel import kernel
from ..engine.errors import SubjectFault
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point, rng_for

_M32 = (1 << 32) - 1

# per-round left-rotation amounts
_S = np.array(
    [7, 12, 17, 22] * 4 + [5, 9, 14, 20] * 4 + [4, 11, 16, 23] * 4 + [6, 10, 15, 21] * 4,
    dtype=np.int64,
)
# binary integer parts of abs(sin(i + 1)) * 2^32
_K = np.array(
    [int(abs(math.sin(i + 1)) * (1 << 32)) & _M32 for i in range(64)], dtype=np.int64
)

POINTS = (
    int_point(0, "literal initial word A 0x67452301"),
    int_point(1, "literal initial word B 0xefcdab89"),
    int_point(2, "literal initial word C 0x98badcfe"),
    int_point(3, "literal initial word D 0x10325476"),
    int_point(4, "message length read in padding"),
    int_point(5, "padded length expression"),
    int_point(6, "block count expression"),
    int_point(7, "literal 0 starting block loop"),
    int_point(8, "read of blk in block loop condition"),
    int_point(9, "block count read in block loop condition"),
    bool_point(10, "block loop condition 'blk < nblocks'"),
    int_point(11, "literal 0 starting decode loop"),
    int_point(12, "read of wi in decode loop condition"),
    int_point(13, "literal 16 in decode loop condition"),
    bool_point(14, "decode loop condition 'wi < 16'"),
    int_point(15, "byte offset expression 'base + 4*wi'"),
    int_point(16, "decoded little-endian word value"),
    int_point(17, "decode loop update 'wi++' (value discarded)"),
    int_point(18, "literal 0 starting round loop"),
    int_point(19, "read of r in round loop condition"),
    int_point(20, "literal 64 in round loop condition"),
    bool_point(21, "round loop condition 'r < 64'"),
    int_point(22, "mixing function result f"),
    int_point(23, "message index result g"),
    int_point(24, "sine table read K[r]"),
    int_point(25, "message word read M[g]"),
    int_point(26, "shift amount read S[r]"),
    int_point(27, "pre-rotate sum 'a + f + K[r] + M[g]'"),
    int_point(28, "left-rotation result"),
    int_point(29, "new b value 'b + rotl(...)'"),
    int_point(30, "round loop update 'r++' (value discarded)"),
    int_point(31, "final chaining sum 'A + a'"),
    int_point(32, "final chaining sum 'B + b'"),
    int_point(33, "final chaining sum 'C + c'"),
    int_point(34, "final chaining sum 'D + d'"),
)


@kernel
def _md5_kernel(ctl, msg):
    n = p_int(ctl, 4, msg.shape[0])
    padded = p_int(ctl, 5, ((n + 8) // 64 + 1) * 64)
    if padded < 0:
        raise SubjectFault("negative array size")
    buf = np.zeros(padded, np.uint8)
    for t in range(n):
        buf[t] = msg[t]
    buf[n] = 0x80
    bits = n * 8
    for t in range(8):
        buf[padded - 8 + t] = (bits >> (8 * t)) & 0xFF

    a0 = p_int(ctl, 0, 0x67452301)
    b0 = p_int(ctl, 1, 0xEFCDAB89)
    c0 = p_int(ctl, 2, 0x98BADCFE)
    d0 = p_int(ctl, 3, 0x10325476)

    nblocks = p_int(ctl, 6, padded // 64)
    m = np.zeros(16, np.int64)
    blk = p_int(ctl, 7, 0)
    while p_bool(ctl, 10, p_int(ctl, 8, blk) < p_int(ctl, 9, nblocks)):
        base = blk * 64
        wi = p_int(ctl, 11, 0)
        while p_bool(ctl, 14, p_int(ctl, 12, wi) < p_int(ctl, 13, 16)):
            off = p_int(ctl, 15, base + 4 * wi)
            if off < 0 or off + 3 >= padded:
                raise SubjectFault("decode offset out of range")
            word = (
                int(buf[off])
                | (int(buf[off + 1]) << 8)
                | (int(buf[off + 2]) << 16)
                | (int(buf[off + 3]) << 24)
            )
            if wi < 0 or wi >= 16:
                raise SubjectFault("decode word index out of range")
            m[wi] = p_int(ctl, 16, word)
            _ = p_int(ctl, 17, wi)
            wi = wi + 1

        a = a0
        b = b0
        c = c0
        d = d0
        r = p_int(ctl, 18, 0)
        while p_bool(ctl, 21, p_int(ctl, 19, r) < p_int(ctl, 20, 64)):
            if r < 16:
                f = (b & c) | (~b & d)
                g = r
            elif r < 32:
                f = (d & b) | (~d & c)
                g = (5 * r + 1) % 16
            elif r < 48:
                f = b ^ c ^ d
                g = (3 * r + 5) % 16
            else:
                f = c ^ (b | ~d)
                g = (7 * r) % 16
            f = p_int(ctl, 22, f & _M32)
            g = p_int(ctl, 23, g)
            if g < 0 or g >= 16:
                raise SubjectFault("message index out of range")
            kr = p_int(ctl, 24, _K[r])
            mg = p_int(ctl, 25, m[g])
            s = p_int(ctl, 26, _S[r])
            if s < 0 or s > 31:
                raise SubjectFault("rotation amount out of range")
            total = p_int(ctl, 27, (a + f + kr + mg) & _M32)
            rot = p_int(ctl, 28, (((total & _M32) << s) | ((total & _M32) >> (32 - s))) & _M32)
            nb = p_int(ctl, 29, (b + rot) & _M32)
            a = d
            d = c
            c = b
            b = nb
            _ = p_int(ctl, 30, r)
            r = r + 1

        a0 = p_int(ctl, 31, (a0 + a) & _M32)
        b0 = p_int(ctl, 32, (b0 + b) & _M32)
        c0 = p_int(ctl, 33, (c0 + c) & _M32)
        d0 = p_int(ctl, 34, (d0 + d) & _M32)
        blk = blk + 1

    out = np.empty(4, np.int64)
    out[0] = a0 & _M32
    out[1] = b0 & _M32
    out[2] = c0 & _M32
    out[3] = d0 & _M32
    return out


def _run(data, state):
    msg = np.frombuffer(data, dtype=np.uint8).copy()
    words = _md5_kernel(state.buf, msg)
    return struct.pack("<4I", *(int(w) & _M32 for w in words)).hex()


def _oracle(data, output) -> bool:
    return output == hashlib.md5(data).hexdigest()


def _generate_inputs(seed: int, count: int) -> list:
    inputs = []
    for index in range(count):
        rng = rng_for(seed, index)
        length = int(rng.integers(8, 81))
        inputs.append(rng.integers(0, 256, size=length, dtype=np.int64).astype(np.uint8).tobytes())
    return inputs


def _input_repr(data) -> str:
    return f"bytes[{len(data)}] {data[:8].hex()}..."


SUBJECT = Subject(
    name="md5",
    title="MD5 digest with rotate-and-add rounds over padded blocks",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
