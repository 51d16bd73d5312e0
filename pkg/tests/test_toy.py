import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ref_round_keys
from qsimon.differential import ROTATIONS
from qsimon.toy import (ToyConfig, assemble_round_keys, master_from_round_keys, run_toy_attack,
                        split_round_keys)

dids = st.sampled_from(sorted(ROTATIONS))


@given(st.integers(0, 2 ** 25 - 1), st.integers(0, 2 ** 39 - 1), dids)
def test_assemble_split_round_trip(k1, rest, did):
    assert split_round_keys(assemble_round_keys(k1, rest, did), did) == (k1, rest)


@given(st.integers(0, 2 ** 64 - 1))
def test_master_from_round_keys(key):
    rks = ref_round_keys("32/64", key, 19)
    assert master_from_round_keys(tuple(rks[15:19])) == key


@pytest.mark.parametrize("kw", [{"unknown_bits": 13}, {"index_bits": 0}, {"right_pairs": 0},
                                {"index_bits": 2, "right_pairs": 5}, {"free_bits": -1}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        ToyConfig(**kw)


def test_small_run_recovers_key():
    res = run_toy_attack(ToyConfig(unknown_bits=6, index_bits=4, right_pairs=2, free_bits=4, seed=3))
    assert res.oracle_matches
    assert res.partial_key_recovered
    assert res.phase2_oracle_agrees
    assert res.key_recovered
    assert res.ok
    assert res.phase1_success >= max(res.phase1_p, 1 - res.phase1_p) - 1e-12


def test_run_is_deterministic():
    cfg = ToyConfig(unknown_bits=5, index_bits=3, right_pairs=1, free_bits=3, seed=11)
    a = run_toy_attack(cfg, check_circuits=False).summary()
    b = run_toy_attack(cfg, check_circuits=False).summary()
    assert a == b


def test_summary_is_plain_data():
    import json
    res = run_toy_attack(ToyConfig(unknown_bits=4, index_bits=2, right_pairs=1, free_bits=2, seed=1),
                         check_circuits=False)
    doc = json.loads(json.dumps(res.summary()))
    assert doc["phase2"]["key_recovered"] is True
