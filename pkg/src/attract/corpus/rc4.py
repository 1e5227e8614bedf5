"""RC4 stream cipher roundtrip: encrypt then decrypt with fresh key setup.

Key scheduling fills and mixes a 256-entry state table; the stream loop
xors each byte with the keystream.  A run encrypts the plaintext and
decrypts the result (RC4 is symmetric), and the oracle requires the final
bytes to equal the original plaintext.  A single perturbation lands in
exactly one of the two cipher passes, so errors never cancel out.
"""

import numpy as np

from .._accel import kernel
from ..engine.errors import SubjectFault
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point, rng_for

POINTS = (
    int_point(0, "literal 0 starting state fill loop"),
    int_point(1, "read of i in fill loop condition"),
    int_point(2, "literal 256 in fill loop condition"),
    bool_point(3, "fill loop condition 'i < 256'"),
    int_point(4, "read of i as fill store index"),
    int_point(5, "fill loop update 'i++' (value discarded)"),
    int_point(6, "literal 0 initialising key index i1"),
    int_point(7, "literal 0 initialising mix index i2"),
    int_point(8, "read of i in mix loop condition"),
    int_point(9, "literal 256 in mix loop condition"),
    bool_point(10, "mix loop condition 'i < 256'"),
    int_point(11, "masked key byte '(keyBytes[i1] & 0xff)'"),
    int_point(12, "state read 'engineState[i]' in mix sum"),
    int_point(13, "new mix index '(key + state + i2) & 0xff'"),
    int_point(14, "read of i as mix swap index"),
    int_point(15, "read of i2 as mix swap index"),
    int_point(16, "compound 'i1 + 1' in key index update"),
    int_point(17, "key length read in key index update"),
    int_point(18, "new key index '(i1 + 1) % keyBytes.length'"),
    int_point(19, "mix loop update 'i++' (value discarded)"),
    int_point(20, "literal 0 starting stream loop"),
    int_point(21, "read of i in stream loop condition"),
    int_point(22, "stream length read in loop condition"),
    bool_point(23, "stream loop condition 'i < len'"),
    int_point(24, "new x value '(x + 1) & 0xff'"),
    int_point(25, "state read 'engineState[x]' in y update"),
    int_point(26, "new y value '(engineState[x] + y) & 0xff'"),
    int_point(27, "read of x as stream swap index"),
    int_point(28, "read of y as stream swap index"),
    int_point(29, "keystream index '(engineState[x] + engineState[y]) & 0xff'"),
    int_point(30, "xor result 'in[i] ^ engineState[k]'"),
    int_point(31, "read of i as output store index"),
    int_point(32, "stream loop update 'i++' (value discarded)"),
)


@kernel
def _rc4_pass(ctl, key, data, out):
    state = np.zeros(256, np.int64)
    i = p_int(ctl, 0, 0)
    while p_bool(ctl, 3, p_int(ctl, 1, i) < p_int(ctl, 2, 256)):
        idx = p_int(ctl, 4, i)
        if idx < 0 or idx >= 256:
            raise SubjectFault("state index out of range")
        state[idx] = i
        _ = p_int(ctl, 5, i)
        i = i + 1

    i1 = p_int(ctl, 6, 0)
    i2 = p_int(ctl, 7, 0)
    i = 0
    while p_bool(ctl, 10, p_int(ctl, 8, i) < p_int(ctl, 9, 256)):
        if i1 < 0 or i1 >= key.shape[0]:
            raise SubjectFault("key index out of range")
        if i < 0 or i >= 256:
            raise SubjectFault("state index out of range")
        kb = p_int(ctl, 11, int(key[i1]) & 0xFF)
        st = p_int(ctl, 12, state[i])
        i2 = p_int(ctl, 13, (kb + st + i2) & 0xFF)
        si = p_int(ctl, 14, i)
        sj = p_int(ctl, 15, i2)
        if si < 0 or si >= 256 or sj < 0 or sj >= 256:
            raise SubjectFault("swap index out of range")
        t = state[si]
        state[si] = state[sj]
        state[sj] = t
        klen = p_int(ctl, 17, key.shape[0])
        if klen == 0:
            raise SubjectFault("division by zero key length")
        i1 = p_int(ctl, 18, p_int(ctl, 16, i1 + 1) % klen)
        _ = p_int(ctl, 19, i)
        i = i + 1

    x = 0
    y = 0
    i = p_int(ctl, 20, 0)
    while p_bool(ctl, 23, p_int(ctl, 21, i) < p_int(ctl, 22, data.shape[0])):
        x = p_int(ctl, 24, (x + 1) & 0xFF)
        if x < 0 or x >= 256:
            raise SubjectFault("stream index out of range")
        y = p_int(ctl, 26, (p_int(ctl, 25, state[x]) + y) & 0xFF)
        sx = p_int(ctl, 27, x)
        sy = p_int(ctl, 28, y)
        if sx < 0 or sx >= 256 or sy < 0 or sy >= 256:
            raise SubjectFault("swap index out of range")
        t = state[sx]
        state[sx] = state[sy]
        state[sy] = t
        ks = p_int(ctl, 29, (state[x] + state[y]) & 0xFF)
        if ks < 0 or ks >= 256:
            raise SubjectFault("keystream index out of range")
        ii = p_int(ctl, 31, i)
        if ii < 0 or ii >= data.shape[0] or ii >= out.shape[0]:
            raise SubjectFault("stream offset out of range")
        # the (byte) cast of the store truncates to 8 bits, perturbed or not
        out[ii] = p_int(ctl, 30, (int(data[ii]) ^ state[ks]) & 0xFF) & 0xFF
        _ = p_int(ctl, 32, i)
        i = i + 1


@kernel
def _rc4_roundtrip(ctl, key, plain):
    ct = np.zeros(plain.shape[0], np.uint8)
    _rc4_pass(ctl, key, plain, ct)
    pt = np.zeros(plain.shape[0], np.uint8)
    _rc4_pass(ctl, key, ct, pt)
    return pt


def _run(pair, state):
    key, plain = pair
    k = np.frombuffer(key, dtype=np.uint8).copy()
    p = np.frombuffer(plain, dtype=np.uint8).copy()
    out = _rc4_roundtrip(state.buf, k, p)
    return bytes(np.asarray(out, dtype=np.uint8))


def _encrypt_once(key: bytes, data: bytes) -> bytes:
    """Single unperturbed pass, exposed for the known-vector test."""
    from ..engine import ControllerState, PerturbationPlan

    state = ControllerState(PerturbationPlan.counting(), len(POINTS), 10**8)
    k = np.frombuffer(key, dtype=np.uint8).copy()
    d = np.frombuffer(data, dtype=np.uint8).copy()
    out = np.zeros(len(data), np.uint8)
    _rc4_pass(state.buf, k, d, out)
    return bytes(out)


def _oracle(pair, output) -> bool:
    _, plain = pair
    return output == plain


def _generate_inputs(seed: int, count: int) -> list:
    inputs = []
    for index in range(count):
        rng = rng_for(seed, index)
        klen = int(rng.integers(5, 9))
        plen = int(rng.integers(8, 17))
        key = rng.integers(0, 256, size=klen, dtype=np.int64).astype(np.uint8).tobytes()
        plain = rng.integers(0, 256, size=plen, dtype=np.int64).astype(np.uint8).tobytes()
        inputs.append((key, plain))
    return inputs


def _input_repr(pair) -> str:
    key, plain = pair
    return f"key[{len(key)}] {key.hex()} plaintext[{len(plain)}]"


SUBJECT = Subject(
    name="rc4",
    title="RC4 stream cipher encrypt/decrypt roundtrip",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
