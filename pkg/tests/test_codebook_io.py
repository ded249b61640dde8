import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperproto.codebook_io import CodebookFormatError, dumps, loads, read_codebook, write_codebook
from hyperproto.construct import build_codebook
from hyperproto.sphere_map import random_codebook


@pytest.mark.parametrize("fmt", ["csv", "json"])
@pytest.mark.parametrize("scheme,n", [("rm", 64), ("bch", 63), ("rs-simplex", 56), ("simplex", None),
                                      ("onehot", None), ("random", 7)])
def test_round_trip_bit_exact(scheme, n, fmt):
    cb = build_codebook(scheme, 100, n, seed=2)
    back = loads(dumps(cb, fmt))
    assert np.array_equal(back.vectors, cb.vectors)
    assert back.scheme == cb.scheme
    assert back.certified_max_cosine == cb.certified_max_cosine
    assert back.params == json.loads(json.dumps(cb.params))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 20), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_round_trip_random(K, n, seed):
    cb = random_codebook(K, n, seed)
    assert np.array_equal(loads(dumps(cb)).vectors, cb.vectors)


def test_file_helpers(tmp_path):
    cb = build_codebook("rm", 10, 16, assignment_seed=5)
    p = tmp_path / "cb.csv"
    write_codebook(cb, p)
    back = read_codebook(p)
    assert back.assignment_seed == 5
    assert np.array_equal(back.vectors, cb.vectors)


def test_header_contents():
    text = dumps(build_codebook("bch", 100, 63))
    header = json.loads(text.splitlines()[0].split(" ", 2)[2])
    assert header["schema_version"] == 1
    assert header["scheme"] == "bch"
    assert (header["K"], header["n"]) == (100, 63)
    assert header["certified_max_cosine_bound"] == pytest.approx(1 / 63)


def _bad(text, line):
    with pytest.raises(CodebookFormatError) as info:
        loads(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_errors_carry_line_numbers():
    good = dumps(build_codebook("onehot", 3)).splitlines()
    _bad("", 1)
    _bad("hello\n1,0\n", 1)
    _bad(good[0][:-3] + "\n" + "\n".join(good[1:]), 1)
    rows = list(good)
    rows[2] = "0,abc,0"
    _bad("\n".join(rows), 3)
    rows = list(good)
    rows[3] = "0,1"
    _bad("\n".join(rows), 4)
    _bad('{"header": {\n  "K": 3,\n  oops\n}', 3)


def test_shape_and_norm_errors():
    good = dumps(build_codebook("onehot", 3)).splitlines()
    with pytest.raises(CodebookFormatError, match="declares"):
        loads("\n".join(good[:-1]))
    rows = list(good)
    rows[1] = "2,0,0"
    with pytest.raises(CodebookFormatError, match="unit norm"):
        loads("\n".join(rows))
