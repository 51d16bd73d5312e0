"""Classical SIMON reference implementation.

Words are n-bit Python integers with bit 0 the rightmost bit.  A block is a
``(left, right)`` pair of words and serializes as ``left || right`` in hex.
The master key of an ``m``-word variant is the integer ``K^{m-1} || ... || K^0``
(the usual way SIMON test vectors are written).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

# Round-constant sequences z_0 .. z_4, first character is the bit for i = m.
Z_SEQUENCES = (
    "11111010001001010110000111001101111101000100101011000011100110",
    "10001110111110010011000010110101000111011111001001100001011010",
    "10101111011100000011010010011000101000010001111110010110110011",
    "11011011101011000110010111100000010010001010011100110100001111",
    "11010001111001101011011000100000010111000011001010010011101111",
)


@dataclass(frozen=True)
class SimonParams:
    """One SIMON variant: word size, key words, rounds and constant index."""

    word_size: int
    key_words: int
    rounds: int
    z_index: int

    def __post_init__(self) -> None:
        if self.word_size not in (16, 24, 32, 48, 64):
            raise ValueError(f"unsupported word size {self.word_size}")
        if self.key_words not in (2, 3, 4):
            raise ValueError(f"unsupported key word count {self.key_words}")
        if self.rounds < 1:
            raise ValueError("rounds must be positive")
        if not 0 <= self.z_index < len(Z_SEQUENCES):
            raise ValueError(f"no constant sequence z_{self.z_index}")

    @property
    def n(self) -> int:
        return self.word_size

    @property
    def m(self) -> int:
        return self.key_words

    @property
    def block_bits(self) -> int:
        return 2 * self.word_size

    @property
    def key_bits(self) -> int:
        return self.key_words * self.word_size

    @property
    def mask(self) -> int:
        return (1 << self.word_size) - 1

    @property
    def constant(self) -> int:
        """The schedule constant c = 2^n - 4."""
        return (1 << self.word_size) - 4

    @property
    def name(self) -> str:
        return f"SIMON{self.block_bits}/{self.key_bits}"

    def z_bit(self, i: int) -> int:
        """Bit (z_j)^i of the constant sequence, periodic with period 62."""
        return int(Z_SEQUENCES[self.z_index][i % 62])

    def with_rounds(self, rounds: int) -> "SimonParams":
        return SimonParams(self.word_size, self.key_words, rounds, self.z_index)


VARIANTS: dict[str, SimonParams] = {
    "32/64": SimonParams(16, 4, 32, 0),
    "48/72": SimonParams(24, 3, 36, 0),
    "48/96": SimonParams(24, 4, 36, 1),
    "64/96": SimonParams(32, 3, 42, 2),
    "64/128": SimonParams(32, 4, 44, 3),
}


def get_variant(name: str) -> SimonParams:
    """Look up a variant by ``"32/64"`` or ``"SIMON32/64"``."""
    key = name.upper().removeprefix("SIMON")
    try:
        return VARIANTS[key]
    except KeyError:
        raise ValueError(f"unknown SIMON variant {name!r}; choose from {sorted(VARIANTS)}") from None


def rotl(x: int, r: int, n: int) -> int:
    r %= n
    return ((x << r) | (x >> (n - r))) & ((1 << n) - 1)


def rotr(x: int, r: int, n: int) -> int:
    return rotl(x, n - (r % n), n)


def f(x: int, n: int) -> int:
    """SIMON round function (x<<<1 & x<<<8) ^ x<<<2."""
    return (rotl(x, 1, n) & rotl(x, 8, n)) ^ rotl(x, 2, n)


def split_key(params: SimonParams, master: int) -> list[int]:
    """Split a master key into words ``[K^0, ..., K^{m-1}]``."""
    if not 0 <= master < (1 << params.key_bits):
        raise ValueError(f"master key does not fit in {params.key_bits} bits")
    return [(master >> (params.n * i)) & params.mask for i in range(params.m)]


def join_key(params: SimonParams, words: Sequence[int]) -> int:
    return sum((w & params.mask) << (params.n * i) for i, w in enumerate(words[: params.m]))


def _schedule_mix(params: SimonParams, prev: Sequence[int]) -> int:
    """Linear part of the schedule from the m previous keys K^{i-m} .. K^{i-1}."""
    n, m = params.n, params.m
    last = prev[m - 1]
    tmp = rotr(last, 3, n)
    if m == 4:
        tmp ^= prev[1]
    tmp ^= rotr(tmp, 1, n)
    return tmp


def next_round_key(params: SimonParams, prev: Sequence[int], i: int) -> int:
    """K^i from the m keys K^{i-m} .. K^{i-1}."""
    return prev[0] ^ _schedule_mix(params, prev) ^ params.constant ^ params.z_bit(i - params.m)


@dataclass(frozen=True)
class RoundKeys:
    params: SimonParams
    keys: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.keys[i]

    def __len__(self) -> int:
        return len(self.keys)


def key_schedule(params: SimonParams, master: int, rounds: int | None = None) -> RoundKeys:
    """Expand a master key into ``rounds`` (default T) round keys."""
    rounds = params.rounds if rounds is None else rounds
    keys = split_key(params, master)
    for i in range(params.m, rounds):
        keys.append(next_round_key(params, keys[i - params.m : i], i))
    return RoundKeys(params, tuple(keys[:rounds]))


def invert_key_schedule(params: SimonParams, start: int, window: Sequence[int]) -> int:
    """Recover the master key from m adjacent round keys K^start .. K^{start+m-1}."""
    m = params.m
    if len(window) != m:
        raise ValueError(f"need exactly {m} adjacent round keys")
    keys = list(window)
    for j in range(start - 1, -1, -1):
        # K^{j+m} = K^j ^ mix(K^{j+1..j+m-1}) ^ const, solved for K^j
        prev = [0] + keys[: m - 1]
        keys.insert(0, keys[m - 1] ^ _schedule_mix(params, prev) ^ params.constant ^ params.z_bit(j))
        keys.pop()
    return join_key(params, keys)


def round_forward(params: SimonParams, left: int, right: int, key: int) -> tuple[int, int]:
    return right ^ f(left, params.n) ^ key, left


def round_backward(params: SimonParams, left: int, right: int, key: int) -> tuple[int, int]:
    return right, left ^ f(right, params.n) ^ key


def _check_rounds(params: SimonParams, keys: Sequence[int], rounds: int) -> None:
    if rounds < 0 or rounds > params.rounds:
        raise ValueError(f"rounds must be in [0, {params.rounds}]")
    if rounds > len(keys):
        raise ValueError("not enough round keys")


def encrypt(params: SimonParams, keys: RoundKeys | Sequence[int], block: tuple[int, int],
            rounds: int | None = None) -> tuple[int, int]:
    """Encrypt ``block`` for ``rounds`` rounds (default T) starting at round 0."""
    keys = keys.keys if isinstance(keys, RoundKeys) else keys
    rounds = params.rounds if rounds is None else rounds
    _check_rounds(params, keys, rounds)
    left, right = block
    for i in range(rounds):
        left, right = round_forward(params, left, right, keys[i])
    return left, right


def decrypt(params: SimonParams, keys: RoundKeys | Sequence[int], block: tuple[int, int],
            rounds: int | None = None) -> tuple[int, int]:
    """Invert ``encrypt`` for the same number of rounds."""
    keys = keys.keys if isinstance(keys, RoundKeys) else keys
    rounds = params.rounds if rounds is None else rounds
    _check_rounds(params, keys, rounds)
    left, right = block
    for i in reversed(range(rounds)):
        left, right = round_backward(params, left, right, keys[i])
    return left, right


def block_to_int(params: SimonParams, block: tuple[int, int]) -> int:
    return (block[0] << params.n) | block[1]


def int_to_block(params: SimonParams, value: int) -> tuple[int, int]:
    return (value >> params.n) & params.mask, value & params.mask


def encrypt_int(params: SimonParams, master: int, pt: int, rounds: int | None = None) -> int:
    keys = key_schedule(params, master)
    return block_to_int(params, encrypt(params, keys, int_to_block(params, pt), rounds))


@dataclass(frozen=True)
class TestVector:
    variant: str
    key: int
    plaintext: int
    ciphertext: int

    @cached_property
    def params(self) -> SimonParams:
        return get_variant(self.variant)


# Published test vectors for the five supported variants.
TEST_VECTORS = (
    TestVector("32/64", 0x1918111009080100, 0x65656877, 0xC69BE9BB),
    TestVector("48/72", 0x1211100A0908020100, 0x6120676E696C, 0xDAE5AC292CAC),
    TestVector("48/96", 0x1A19181211100A0908020100, 0x72696320646E, 0x6E06A5ACF156),
    TestVector("64/96", 0x131211100B0A090803020100, 0x6F7220676E696C63, 0x5CA2E27F111A8FC8),
    TestVector("64/128", 0x1B1A1918131211100B0A090803020100, 0x656B696C20646E75, 0x44C8FC20B9DFA07A),
)
