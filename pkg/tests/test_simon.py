import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import VARIANTS as REF_VARIANTS, ref_encrypt, ref_round_keys
from qsimon.simon import (TEST_VECTORS, decrypt, encrypt, encrypt_int, get_variant, int_to_block,
                          invert_key_schedule, join_key, key_schedule, split_key)

NAMES = sorted(REF_VARIANTS)


@pytest.mark.parametrize("tv", TEST_VECTORS, ids=lambda tv: tv.variant)
def test_published_vectors(tv):
    assert encrypt_int(tv.params, tv.key, tv.plaintext) == tv.ciphertext
    assert ref_encrypt(tv.variant, tv.key, tv.plaintext) == tv.ciphertext


@pytest.mark.parametrize("name", NAMES)
def test_variant_parameters(name):
    n, m, t, _ = REF_VARIANTS[name]
    p = get_variant(name)
    assert (p.n, p.m, p.rounds) == (n, m, t)
    assert p.block_bits == 2 * n and p.key_bits == m * n
    assert get_variant("SIMON" + name) == p


def test_unknown_variant():
    with pytest.raises(ValueError):
        get_variant("128/256")


@st.composite
def variant_key_block(draw):
    name = draw(st.sampled_from(NAMES))
    p = get_variant(name)
    key = draw(st.integers(0, (1 << p.key_bits) - 1))
    pt = draw(st.integers(0, (1 << p.block_bits) - 1))
    rounds = draw(st.integers(0, p.rounds))
    return name, p, key, pt, rounds


@given(variant_key_block())
def test_matches_reference_implementation(case):
    name, p, key, pt, rounds = case
    assert list(key_schedule(p, key, rounds).keys) == ref_round_keys(name, key, rounds)
    assert encrypt_int(p, key, pt, rounds) == ref_encrypt(name, key, pt, rounds)


@given(variant_key_block())
def test_decrypt_inverts_encrypt(case):
    _, p, key, pt, rounds = case
    keys = key_schedule(p, key)
    block = int_to_block(p, pt)
    assert decrypt(p, keys, encrypt(p, keys, block, rounds), rounds) == block


@given(variant_key_block(), st.data())
def test_key_schedule_inverts_from_any_window(case, data):
    _, p, key, _, _ = case
    start = data.draw(st.integers(0, p.rounds - p.m))
    keys = key_schedule(p, key)
    assert invert_key_schedule(p, start, keys.keys[start:start + p.m]) == key


@given(variant_key_block())
def test_split_join_roundtrip(case):
    _, p, key, _, _ = case
    assert join_key(p, split_key(p, key)) == key


def test_rounds_out_of_range():
    p = get_variant("32/64")
    keys = key_schedule(p, 1)
    with pytest.raises(ValueError):
        encrypt(p, keys, (0, 0), 33)
