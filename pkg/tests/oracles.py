"""Independent reference oracles for the tests.

Nothing here imports ``qsimon``.  SIMON is written from the public design
document in a bit-list style unlike the package's word arithmetic, with its own
copy of the z sequences.
"""

from __future__ import annotations

import math

import numpy as np

Z = (
    "11111010001001010110000111001101111101000100101011000011100110",
    "10001110111110010011000010110101000111011111001001100001011010",
    "10101111011100000011010010011000101000010001111110010110110011",
    "11011011101011000110010111100000010010001010011100110100001111",
    "11010001111001101011011000100000010111000011001010010011101111",
)

# name -> (word size n, key words m, rounds T, z index)
VARIANTS = {
    "32/64": (16, 4, 32, 0),
    "48/72": (24, 3, 36, 0),
    "48/96": (24, 4, 36, 1),
    "64/96": (32, 3, 42, 2),
    "64/128": (32, 4, 44, 3),
}


def _bits(x: int, n: int) -> list[int]:
    return [(x >> i) & 1 for i in range(n)]


def _word(bits: list[int]) -> int:
    return sum(b << i for i, b in enumerate(bits))


def _rotl(bits: list[int], r: int) -> list[int]:
    n = len(bits)
    return [bits[(i - r) % n] for i in range(n)]


def _xor(*ws: list[int]) -> list[int]:
    return [sum(col) & 1 for col in zip(*ws)]


def ref_round_keys(variant: str, key: int, rounds: int | None = None) -> list[int]:
    n, m, t, zi = VARIANTS[variant]
    rounds = t if rounds is None else rounds
    k = [_bits(key >> (n * i), n) for i in range(m)]
    const = _bits((1 << n) - 4, n)                       # c = 2^n - 4
    for i in range(m, rounds):
        tmp = _rotl(k[i - 1], -3)
        if m == 4:
            tmp = _xor(tmp, k[i - 3])
        tmp = _xor(tmp, _rotl(tmp, -1))
        zbit = [int(Z[zi][(i - m) % 62])] + [0] * (n - 1)
        k.append(_xor(k[i - m], tmp, const, zbit))
    return [_word(w) for w in k[:rounds]]


def ref_encrypt(variant: str, key: int, pt: int, rounds: int | None = None) -> int:
    n = VARIANTS[variant][0]
    x, y = _bits(pt >> n, n), _bits(pt, n)
    for rk in ref_round_keys(variant, key, rounds):
        fx = _xor([a & b for a, b in zip(_rotl(x, 1), _rotl(x, 8))], _rotl(x, 2))
        x, y = _xor(y, fx, _bits(rk, n)), x
    return (_word(x) << n) | _word(y)


def ref_state_difference(ct: tuple[int, int], ctp: tuple[int, int], keys_16_17_18: tuple[int, int, int]) -> int:
    """State-15 difference of a SIMON32/64 ciphertext pair, decrypting rounds 18, 17, 16.

    The left word of state 15 is the right word of state 16; its right word
    needs K15, which cancels in the difference.
    """
    def f(w: int) -> int:
        b = _bits(w, 16)
        return _word(_xor([p & q for p, q in zip(_rotl(b, 1), _rotl(b, 8))], _rotl(b, 2)))

    def back(state):
        l, r = state
        for k in reversed(keys_16_17_18):
            l, r = r, l ^ f(r) ^ k
        return l, r

    (l, r), (lp, rp) = back(ct), back(ctp)
    return ((r ^ rp) << 16) | (l ^ lp ^ f(r) ^ f(rp))


def mcx_truth(controls: np.ndarray, values: tuple[int, ...] | None = None) -> np.ndarray:
    """Whether an MCX fires, per column of a (k, batch) bool array."""
    want = np.ones(controls.shape[0], dtype=bool) if values is None else np.array(values, dtype=bool)
    return (controls == want[:, None]).all(axis=0)


def grover_success(p: float, m: int) -> float:
    """Closed-form success after m iterations."""
    return math.sin((2 * m + 1) * math.asin(math.sqrt(p))) ** 2


def distinct_monte_carlo(n: int, runs: int, trials: int, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    return float(np.mean([np.unique(rng.integers(0, n, runs)).size for _ in range(trials)]))
