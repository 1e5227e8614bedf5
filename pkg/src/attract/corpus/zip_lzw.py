"""LZW compress/decompress roundtrip with dictionary-code instrumentation.

Compression maps strings to codes with a (prefix code, next char) table;
decompression rebuilds strings from (prefix code, last char) chains.
That pair representation is exactly the textbook dictionary, so the
hooked expressions line up with the string-keyed original: the dictionary
size literals, the init loops seeding codes 0..255, the emitted codes and
the post-increment allocation of new codes.

A run compresses the input bytes and immediately decompresses the code
stream; the oracle asks whether the roundtrip reproduced the input.
"""

import numpy as np

from .._accel import kernel
from ..engine.errors import SubjectFault
from ..engine.hooks import p_bool, p_int
from .base import Subject, bool_point, int_point, rng_for

# Dictionary capacity: 256 base codes plus one new code per consumed
# symbol (inputs are <= 64 bytes), with slack for off-by-one perturbations.
_MAXD = 520

POINTS = (
    int_point(0, "literal 256 initialising dictSize in compress"),
    int_point(1, "literal 0 starting the compress init loop"),
    int_point(2, "read of i in compress init loop condition"),
    int_point(3, "literal 256 in compress init loop condition"),
    bool_point(4, "compress init loop condition 'i < 256'"),
    int_point(5, "read of i as value argument of compress base put"),
    int_point(6, "compress init loop update 'i++' (value discarded)"),
    bool_point(7, "compress membership test 'dictionary.containsKey(wc)'"),
    int_point(8, "emitted code 'dictionary.get(w)' on dictionary miss"),
    int_point(9, "post-increment 'dictSize++' as newly allocated compress code"),
    bool_point(10, "compress tail guard '!w.equals(\"\")'"),
    int_point(11, "final emitted code 'dictionary.get(w)'"),
    int_point(12, "literal 256 initialising dictSize in decompress"),
    int_point(13, "literal 0 starting the decompress init loop"),
    int_point(14, "read of i in decompress init loop condition"),
    int_point(15, "literal 256 in decompress init loop condition"),
    bool_point(16, "decompress init loop condition 'i < 256'"),
    int_point(17, "read of i as key argument of decompress base put"),
    int_point(18, "decompress init loop update 'i++' (value discarded)"),
    int_point(19, "literal 0 argument of 'compressed.remove(0)'"),
    int_point(20, "first code value removed from the stream"),
    int_point(21, "read of k as containsKey argument in decompress"),
    bool_point(22, "decompress membership test 'dictionary.containsKey(k)'"),
    int_point(23, "read of k as get argument in decompress"),
    int_point(24, "read of k in 'k == dictSize'"),
    int_point(25, "read of dictSize in 'k == dictSize'"),
    bool_point(26, "special-entry guard 'k == dictSize'"),
    int_point(27, "post-increment 'dictSize++' as decompress put key"),
)


@kernel
def _walk(prefix, lastch, code, tmp):
    """Collect an entry's chars last-to-first into tmp; returns length."""
    d = 0
    x = code
    while x >= 0:
        if d >= tmp.shape[0]:
            raise SubjectFault("corrupt dictionary chain")
        if x >= prefix.shape[0]:
            raise SubjectFault("dictionary code out of range")
        tmp[d] = lastch[x]
        d = d + 1
        x = prefix[x]
    return d


@kernel
def _lzw_roundtrip(ctl, data):
    n = data.shape[0]

    # ---- compress ----
    dict_size = p_int(ctl, 0, 256)
    # (prefix+1, char) -> code table; row 0 is the empty prefix.
    comp_map = np.full((_MAXD + 1) * 256, -1, np.int64)
    i = p_int(ctl, 1, 0)
    while p_bool(ctl, 4, p_int(ctl, 2, i) < p_int(ctl, 3, 256)):
        if i >= 0 and i < 256:
            comp_map[i] = p_int(ctl, 5, i)
        _ = p_int(ctl, 6, i)
        i = i + 1

    codes = np.empty(n + 2, np.int64)
    ncodes = 0
    w = -1  # empty prefix
    for idx in range(n):
        c = int(data[idx])
        wc = comp_map[(w + 1) * 256 + c]
        if p_bool(ctl, 7, wc >= 0):
            w = wc
        else:
            codes[ncodes] = p_int(ctl, 8, w)
            ncodes = ncodes + 1
            v = dict_size
            dict_size = v + 1
            code = p_int(ctl, 9, v)
            if code >= 0:
                comp_map[(w + 1) * 256 + c] = code
            w = c
    if p_bool(ctl, 10, w != -1):
        codes[ncodes] = p_int(ctl, 11, w)
        ncodes = ncodes + 1

    # ---- decompress ----
    dict_size2 = p_int(ctl, 12, 256)
    prefix = np.full(_MAXD, -1, np.int64)
    lastch = np.zeros(_MAXD, np.int64)
    defined = np.zeros(_MAXD, np.uint8)
    i = p_int(ctl, 13, 0)
    while p_bool(ctl, 16, p_int(ctl, 14, i) < p_int(ctl, 15, 256)):
        key = p_int(ctl, 17, i)
        if key >= 0 and key < _MAXD:
            prefix[key] = -1
            lastch[key] = i
            defined[key] = 1
        _ = p_int(ctl, 18, i)
        i = i + 1

    take = p_int(ctl, 19, 0)
    if take < 0 or take >= ncodes:
        raise SubjectFault("remove index out of bounds")
    w_code = p_int(ctl, 20, codes[take])

    cap = _MAXD * (ncodes + 3)
    out = np.empty(cap, np.int64)
    out_len = 0
    tmp = np.empty(_MAXD + 2, np.int64)

    # first entry: the removed code as a single char (cast wraps)
    out[out_len] = w_code & 0xFFFF
    out_len = out_len + 1

    for t in range(ncodes):
        if t == take:
            continue
        k = codes[t]
        kk = p_int(ctl, 21, k)
        in_dict = False
        if kk >= 0 and kk < _MAXD:
            if defined[kk] == 1:
                in_dict = True
        if p_bool(ctl, 22, in_dict):
            ec = p_int(ctl, 23, k)
            if ec < 0 or ec >= _MAXD or defined[ec] == 0:
                raise SubjectFault("null dictionary entry")
            d = _walk(prefix, lastch, ec, tmp)
            if d == 0:
                raise SubjectFault("empty dictionary entry")
            first = tmp[d - 1]
            for u in range(d):
                out[out_len] = tmp[d - 1 - u]
                out_len = out_len + 1
            new_w = ec
        elif p_bool(ctl, 26, p_int(ctl, 24, k) == p_int(ctl, 25, dict_size2)):
            # entry = w + w.charAt(0)
            d = _walk(prefix, lastch, w_code, tmp)
            if d == 0:
                raise SubjectFault("charAt on empty string")
            first = tmp[d - 1]
            for u in range(d):
                out[out_len] = tmp[d - 1 - u]
                out_len = out_len + 1
            out[out_len] = first
            out_len = out_len + 1
            new_w = -2  # placeholder: the entry is the code we put below
        else:
            raise SubjectFault("bad compressed code")

        v2 = dict_size2
        dict_size2 = v2 + 1
        put_key = p_int(ctl, 27, v2)
        if put_key >= 0 and put_key < _MAXD:
            prefix[put_key] = w_code
            lastch[put_key] = first
            defined[put_key] = 1
        if new_w == -2:
            w_code = put_key
        else:
            w_code = new_w
    return out[:out_len].copy()


def _run(data, state):
    buf = np.frombuffer(data, dtype=np.uint8).copy()
    out = _lzw_roundtrip(state.buf, buf)
    return np.asarray(out, dtype=np.int64)


def _oracle(data, output) -> bool:
    expected = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    if not isinstance(output, np.ndarray) or output.shape != expected.shape:
        return False
    return bool(np.array_equal(output, expected))


def _generate_inputs(seed: int, count: int) -> list:
    """Strings of pairwise-distinct bytes; every third input carries a
    0xFF byte at a (0-based) position >= 2.  Distinct bytes mean the
    compressor never finds a repeated pair, so extended codes are
    allocated but never emitted."""
    inputs = []
    for index in range(count):
        rng = rng_for(seed, index)
        length = int(rng.integers(24, 49))
        pool = rng.permutation(255)[:length].astype(np.uint8)
        if index % 3 == 1:
            pos = int(rng.integers(2, length))
            pool[pos] = 255
        inputs.append(pool.tobytes())
    return inputs


def _input_repr(data) -> str:
    return f"bytes[{len(data)}] {data[:8].hex()}..."


SUBJECT = Subject(
    name="zip",
    title="LZW compress/decompress roundtrip over byte strings",
    points=POINTS,
    run=_run,
    oracle=_oracle,
    generate_inputs=_generate_inputs,
    input_repr=_input_repr,
)
