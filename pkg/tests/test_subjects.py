"""Corpus integrity: point tables, oracles, generators, known values."""

import hashlib
import inspect
import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attract.corpus import all_subjects, get_subject, subject_names
from attract.corpus.base import load_data_lines
from attract.engine import PointKind
from attract.explorer import reference_run

EXPECTED_POINT_COUNTS = {
    # name: (int points, bool points)
    "demo": (1, 0),
    "laguerre": (32, 10),
    "lcs": (59, 8),
    "linreg": (56, 11),
    "md5": (32, 3),
    "quicksort": (42, 6),
    "rc4": (30, 3),
    "sudoku": (51, 12),
    "zip": (22, 6),
}

ALL_NAMES = sorted(EXPECTED_POINT_COUNTS)


def test_registry_lists_every_subject():
    assert sorted(subject_names()) == ALL_NAMES
    assert sorted(s.name for s in all_subjects()) == ALL_NAMES
    with pytest.raises(KeyError):
        get_subject("no-such-subject")


@pytest.mark.parametrize("name", ALL_NAMES)
def test_point_ids_are_dense_and_kinds_match(name):
    subject = get_subject(name)
    ids = [p.point_id for p in subject.points]
    assert ids == list(range(len(ids)))
    n_int = sum(p.kind is PointKind.INT for p in subject.points)
    n_bool = sum(p.kind is PointKind.BOOL for p in subject.points)
    assert (n_int, n_bool) == EXPECTED_POINT_COUNTS[name]
    assert len({p.label for p in subject.points}) == len(ids)  # labels unique


@pytest.mark.parametrize("name", ALL_NAMES)
def test_hook_calls_in_source_match_the_point_table(name):
    # Every registered point must be wired to a literal hook call of the
    # matching kind, and no hook call may use an unregistered id.
    subject = get_subject(name)
    source = inspect.getsource(inspect.getmodule(subject.run))
    found = re.findall(r"\bp_(int|bool)\(\s*[\w.\[\]]+\s*,\s*(\d+)\s*,", source)
    found_int = {int(pid) for kind, pid in found if kind == "int"}
    found_bool = {int(pid) for kind, pid in found if kind == "bool"}
    want_int = {p.point_id for p in subject.points if p.kind is PointKind.INT}
    want_bool = {p.point_id for p in subject.points if p.kind is PointKind.BOOL}
    assert found_int == want_int
    assert found_bool == want_bool


@pytest.mark.parametrize("name", ALL_NAMES)
def test_oracle_accepts_every_unperturbed_run(name):
    subject = get_subject(name)
    for input_value in subject.generate_inputs(202, 100):
        _, output = reference_run(subject, input_value, 2 * 10**8)
        assert subject.oracle(input_value, output)


def _corrupt(name, input_value, output):
    """Build a wrong-but-plausible output the oracle must reject."""
    if name == "demo":
        return output + 1
    if name == "quicksort":
        bad = output.copy()
        bad[-1] += 1  # still sorted, but the wrong multiset
        return bad
    if name == "zip":
        bad = output.copy()
        bad[0] ^= 0xFF
        return bad
    if name == "sudoku":
        bad = output.copy()
        bad[0, 0] = bad[0, 0] % 9 + 1  # always changes the digit
        return bad
    if name == "md5":
        flip = "0" if output[0] != "0" else "1"
        return flip + output[1:]
    if name == "rc4":
        return bytes([output[0] ^ 0x01]) + output[1:]
    if name == "lcs":
        return output[:-1]  # too short to be a longest subsequence
    if name == "laguerre":
        return (output[0] + 0.5,) + output[1:]
    if name == "linreg":
        bad = output.copy()
        bad[0] += 1.0
        return bad
    raise AssertionError(f"no corruption rule for {name}")


@pytest.mark.parametrize("name", ALL_NAMES)
def test_oracle_rejects_a_corrupted_output(name):
    subject = get_subject(name)
    input_value = subject.generate_inputs(9, 1)[0]
    _, output = reference_run(subject, input_value, 2 * 10**8)
    assert subject.oracle(input_value, output)
    assert not subject.oracle(input_value, _corrupt(name, input_value, output))


@pytest.mark.parametrize("name", ALL_NAMES)
def test_generators_are_pure_in_seed_and_count(name):
    subject = get_subject(name)
    first = subject.generate_inputs(31, 6)
    second = subject.generate_inputs(31, 6)
    assert len(first) == len(second) == 6
    assert all(_inputs_equal(a, b) for a, b in zip(first, second))
    # A longer draw must extend, not reshuffle, the shorter one.
    longer = subject.generate_inputs(31, 8)
    assert all(_inputs_equal(a, b) for a, b in zip(first, longer))


@pytest.mark.parametrize("name", ["md5", "quicksort", "rc4", "zip", "linreg", "laguerre"])
def test_seed_changes_randomised_inputs(name):
    subject = get_subject(name)
    a = subject.generate_inputs(1, 3)
    b = subject.generate_inputs(2, 3)
    assert not all(_inputs_equal(x, y) for x, y in zip(a, b))


def _inputs_equal(a, b) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_inputs_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return bool(np.array_equal(a, b))
    return a == b


# --- known-value checks against independent implementations ---


@pytest.mark.parametrize(
    "data",
    [b"", b"abc", b"a" * 55, b"a" * 56, b"a" * 64, bytes(range(80))],
    ids=["empty", "abc", "pad55", "pad56", "pad64", "two-blocks"],
)
def test_md5_matches_hashlib_at_padding_boundaries(data):
    subject = get_subject("md5")
    _, digest = reference_run(subject, data, 10**7)
    assert digest == hashlib.md5(data).hexdigest()


def test_rc4_known_vector():
    # Key "Key" / plaintext "Plaintext" is the classic published vector.
    from attract.corpus.rc4 import _encrypt_once

    cipher = _encrypt_once(b"Key", b"Plaintext")
    assert cipher.hex().upper() == "BBF316E8D940AF0AD3"


def test_quicksort_agrees_with_numpy_sort():
    subject = get_subject("quicksort")
    values = np.array([5, -3, 5, 0, 2**31 - 1, -(2**31), 7], dtype=np.int64)
    _, output = reference_run(subject, values, 10**7)
    assert np.array_equal(output, np.sort(values))


def test_lcs_output_is_a_longest_common_subsequence():
    subject = get_subject("lcs")
    pair = (b"ACGUACGU", b"CGAUCGGA")
    _, output = reference_run(subject, pair, 10**7)

    def lcs_len(a, b):
        prev = [0] * (len(b) + 1)
        for x in a:
            cur = [0]
            for j, y in enumerate(b, 1):
                cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
            prev = cur
        return prev[-1]

    def is_subseq(sub, full):
        it = iter(full)
        return all(ch in it for ch in sub)

    assert len(output) == lcs_len(pair[0], pair[1]) == 5
    assert is_subseq(output, pair[0]) and is_subseq(output, pair[1])


def test_laguerre_finds_the_roots_of_a_factored_polynomial():
    subject = get_subject("laguerre")
    # (z - 1)(z - 2) = 2 - 3 z + z^2, ascending coefficients
    _, roots = reference_run(subject, (2, -3, 1), 10**7)
    got = sorted(roots, key=lambda z: z.real)
    assert abs(got[0] - 1) < 1e-6
    assert abs(got[1] - 2) < 1e-6


def test_linreg_recovers_a_noiseless_plane():
    subject = get_subject("linreg")
    rng = np.random.default_rng(55)
    X = rng.normal(size=(25, 2))
    y = 2.0 * X[:, 0] - 1.0 * X[:, 1] + 0.5
    _, beta = reference_run(subject, (X, y), 10**7)
    assert np.allclose(beta, [2.0, -1.0, 0.5], atol=1e-4)


def test_zip_roundtrips_a_string_with_repeats():
    subject = get_subject("zip")
    data = b"TOBEORNOTTOBEORTOBEORNOT"
    _, output = reference_run(subject, data, 10**7)
    assert bytes(output.astype(np.uint8)) == data


@settings(max_examples=60, deadline=None)
@given(st.binary(min_size=1, max_size=64))
def test_zip_roundtrips_arbitrary_bytes(data):
    subject = get_subject("zip")
    _, output = reference_run(subject, data, 10**7)
    assert subject.oracle(data, output)


def test_bundled_data_banks_are_well_formed():
    pair_lines = load_data_lines("lcs_pairs.txt")
    assert len(pair_lines) == 48 and all(not l.startswith("#") for l in pair_lines)
    assert all(set(l) <= set("ACGU") for l in pair_lines)
    puzzles = load_data_lines("sudoku_puzzles.txt")
    assert len(puzzles) == 24
    assert all(len(l) == 81 and l.isdigit() for l in puzzles)
    assert len(set(puzzles)) == 24  # no duplicate boards
