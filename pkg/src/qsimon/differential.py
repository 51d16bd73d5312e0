"""Differential attack data and the classical side of the round-key recovery.

The four 13-round SIMON32/64 differentials are rotations of one another:
D1, D3 and D4 are D2 with every bit index shifted by -1, +4 and +5.  All
per-differential bit sets (key bits, filter, h formulas) are written for D2
and rotated, which the catalog's key-bit lists confirm.

Word-level functions accept Python ints or numpy integer arrays, so the same
code serves single evaluations and Monte Carlo sweeps.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any, Sequence

import numpy as np

from .simon import get_variant

N = 16
MASK = 0xFFFF
TARGET = "SIMON32/64"


def _rot(x, r: int):
    r %= N
    return ((x << r) | (x >> (N - r))) & MASK if r else x & MASK


def _and(x):
    return _rot(x, 1) & _rot(x, 8)


def _f(x):
    return _and(x) ^ _rot(x, 2)


def _bits(positions: Sequence[int], shift: int = 0) -> int:
    return sum(1 << ((p + shift) % N) for p in set(positions))


def _bit(x, i: int):
    return (x >> (i % N)) & 1


# -- data types ---------------------------------------------------------------------
@dataclass(frozen=True)
class TruncatedPattern:
    """Bit pattern with wildcards: bits under ``mask`` must equal ``value``."""

    mask: int
    value: int
    width: int

    def __post_init__(self) -> None:
        if self.value & ~self.mask:
            raise ValueError("value has bits outside the care mask")

    def matches(self, x):
        return (x & self.mask) == self.value

    @property
    def free_bits(self) -> int:
        return self.width - bin(self.mask).count("1")

    def render(self, word: int = N) -> str:
        chars = []
        for j in reversed(range(self.width)):
            chars.append("*" if not (self.mask >> j) & 1 else str((self.value >> j) & 1))
        words = ["".join(chars[k:k + word]) for k in range(0, self.width, word)]
        return ", ".join(" ".join(w[i:i + 4] for i in range(0, word, 4)) for w in words)


def parse_pattern(text: str) -> TruncatedPattern:
    """Parse ``'00*0 0000 ..., **00 ...'`` (MSB first, left word then right word)."""
    chars = [ch for ch in text if ch in "01*"]
    mask = value = 0
    for ch in chars:
        mask = (mask << 1) | (ch != "*")
        value = (value << 1) | (ch == "1")
    return TruncatedPattern(mask, value, len(chars))


@dataclass(frozen=True)
class Differential:
    id: str
    rounds: int
    din: tuple[int, int]
    dout: tuple[int, int]
    prob_log2: float

    @property
    def dout_int(self) -> int:
        return (self.dout[0] << N) | self.dout[1]


KeyTerm = tuple[tuple[int, int], ...]    # XOR of (round, bit) entries


@dataclass(frozen=True)
class PartialKeyBits:
    """Guessed key bits: each entry is a round-key bit or an XOR of two."""

    entries: tuple[KeyTerm, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def union(self, other: "PartialKeyBits") -> "PartialKeyBits":
        seen = list(self.entries)
        seen += [e for e in other.entries if e not in self.entries]
        return PartialKeyBits(tuple(seen))

    def overlap(self, other: "PartialKeyBits") -> int:
        return len(set(self.entries) & set(other.entries))

    def evaluate(self, round_keys: dict[int, int]) -> int:
        """Pack the entries' values (entry j at bit j) from explicit round keys."""
        out = 0
        for j, term in enumerate(self.entries):
            v = 0
            for r, b in term:
                v ^= (round_keys[r] >> b) & 1
            out |= v << j
        return out


_TERM = re.compile(r"K(\d+)(?:\[([\d,\-\s]+)\])?")


def parse_key_bits(specs: Sequence[str], n: int = N) -> PartialKeyBits:
    """Parse entries such as ``K18``, ``K17[4,6-9]`` or ``K16[7]^K17[5]``."""
    entries: list[KeyTerm] = []
    for spec in specs:
        parts = [p.strip() for p in spec.split("^")]
        lists = []
        for p in parts:
            m = _TERM.fullmatch(p)
            if not m:
                raise ValueError(f"bad key-bit entry {spec!r}")
            r = int(m.group(1))
            if m.group(2) is None:
                bits = list(range(n))
            else:
                bits = []
                for item in m.group(2).split(","):
                    lo, _, hi = item.strip().partition("-")
                    bits += list(range(int(lo), int(hi or lo) + 1))
            lists.append([(r, b) for b in bits])
        if len(lists) == 1:
            entries += [(e,) for e in lists[0]]
        else:
            if any(len(l) != 1 for l in lists):
                raise ValueError(f"XOR entries must name single bits: {spec!r}")
            entries.append(tuple(sorted(l[0] for l in lists)))
    return PartialKeyBits(tuple(entries))


@dataclass(frozen=True)
class AttackDifferential:
    """One catalog record: differential, plaintext pattern, guessed key bits."""

    differential: Differential
    pattern: TruncatedPattern
    key_bits: PartialKeyBits
    rotation: int


@dataclass(frozen=True)
class AttackParams:
    """Aggregate attack parameters of one variant."""

    variant: str
    rounds: int
    differential_rounds: int
    pairs_log2: float
    filtered_pairs_log2: float
    guessed_key_bits: int
    check_log2: float
    h_cost: dict[str, int]
    differentials: tuple[AttackDifferential, ...] = ()
    overlaps_log2: tuple[float, ...] = ()
    combined_key_bits: int | None = None
    sub_instances: int = 1          # phase-1 QAA instances, one per differential
    decrypt_rounds: int = 4         # rounds of partial decryption inside h
    qmks_pairs: int = 3             # plaintext/ciphertext pairs in the master-key search
    phase2_pairs: int = 2
    index_bits: int = 32            # plaintext-index register of phase 1
    h_work_qubits: int = 0          # h workspace beyond the difference register

    @property
    def runs_log2(self) -> float:
        """Expected solutions of one phase-1 instance, also its number of runs."""
        return self.filtered_pairs_log2 + self.guessed_key_bits + self.check_log2

    @property
    def candidate_key_bits(self) -> int:
        return self.combined_key_bits or self.guessed_key_bits


# -- catalog ------------------------------------------------------------------------
@lru_cache(maxsize=None)
def _raw() -> dict[str, Any]:
    text = resources.files("qsimon").joinpath("data/attack_data.json").read_text()
    return json.loads(text)


def _hex_block(s: str) -> tuple[int, int]:
    left, right = s.split(",")
    return int(left, 16), int(right, 16)


ROTATIONS = {"D1": -1, "D2": 0, "D3": 4, "D4": 5}


def attack_params(variant: str) -> AttackParams:
    name = get_variant(variant).name
    raw = _raw().get(name)
    if raw is None:
        raise ValueError(f"no attack data for {name}")
    diffs = []
    for d in raw.get("differentials", []):
        diffs.append(AttackDifferential(
            Differential(d["id"], raw["differential_rounds"], _hex_block(d["din"]), _hex_block(d["dout"]),
                         # enough pairs for one right pair: p ~ 2^-28.5 per K^0 guess
                         -(raw["pairs_log2"] - raw["k0_guess_bits"])),
            parse_pattern(d["pattern"]), parse_key_bits(d["key_bits"]), ROTATIONS[d["id"]]))
    guessed = len(diffs[0].key_bits) if diffs else raw["guessed_key_bits"]
    return AttackParams(name, raw["rounds"], raw["differential_rounds"], raw["pairs_log2"],
                        raw["filtered_pairs_log2"], guessed, raw["check_log2"], dict(raw["h_cost"]),
                        tuple(diffs), tuple(raw.get("overlaps_log2", ())), raw.get("combined_key_bits"),
                        raw["sub_instances"], raw["decrypt_rounds"], raw["qmks_pairs"], raw["phase2_pairs"],
                        raw["index_bits"], raw["h_work_qubits"])


def differential_catalog(variant: str = TARGET) -> list[AttackDifferential]:
    """Differentials with patterns and key bits (SIMON32/64; empty for aggregate-only variants)."""
    return list(attack_params(variant).differentials)


def get_differential(did: str = "D2") -> AttackDifferential:
    for d in differential_catalog(TARGET):
        if d.differential.id == did:
            return d
    raise ValueError(f"unknown differential {did!r}")


def combined_key_bits(diffs: Sequence[AttackDifferential]) -> tuple[PartialKeyBits, list[int]]:
    """Union of the key-bit sets and the overlap of each new set with the union so far."""
    union = diffs[0].key_bits
    overlaps = []
    for d in diffs[1:]:
        overlaps.append(union.overlap(d.key_bits))
        union = union.union(d.key_bits)
    return union, overlaps


# -- trail supports and the filter --------------------------------------------------
@dataclass(frozen=True)
class DiffSupport:
    """Per-bit knowledge of a word difference: certainly-one bits and possibly-one bits."""

    ones: int
    possible: int

    def xor(self, other: "DiffSupport") -> "DiffSupport":
        overlap = self.possible & other.possible
        ones = (self.ones | other.ones) & ~overlap
        return DiffSupport(ones, self.possible | other.possible)


def _forward_support(left: DiffSupport, right: DiffSupport) -> tuple[DiffSupport, DiffSupport]:
    rot2 = DiffSupport(_rot(left.ones, 2), _rot(left.possible, 2))
    anded = DiffSupport(0, _rot(left.possible, 1) | _rot(left.possible, 8))
    return right.xor(rot2).xor(anded), left


def trail_supports(did: str = "D2", rounds: int = 4) -> list[tuple[DiffSupport, DiffSupport]]:
    """Difference supports of states 15 .. 15+rounds-1 following the output difference."""
    dl, dr = get_differential(did).differential.dout
    state = (DiffSupport(dl, dl), DiffSupport(dr, dr))
    out = [state]
    for _ in range(rounds - 1):
        state = _forward_support(*state)
        out.append(state)
    return out


@lru_cache(maxsize=None)
def delta18_filter(did: str = "D2") -> TruncatedPattern:
    """Fixed bits of the state-18 difference implied by the differential."""
    left, right = trail_supports(did, 4)[3]
    mask_l = (~left.possible | left.ones) & MASK
    mask_r = (~right.possible | right.ones) & MASK
    return TruncatedPattern((mask_l << N) | mask_r, (left.ones << N) | right.ones, 2 * N)


def delta18(ct, ctp):
    """State-18 difference of two ciphertexts; the round key cancels."""
    (l, r), (lp, rp) = ct, ctp
    return ((r ^ rp) << N) | (l ^ lp ^ _f(r) ^ _f(rp))


def filter_pass(ct, ctp, did: str = "D2"):
    if did not in ROTATIONS:
        raise ValueError(f"unknown differential {did!r}")
    return delta18_filter(did).matches(delta18(ct, ctp))


# -- function h -------------------------------------------------------------------
@dataclass(frozen=True)
class HSpec:
    """Bit sets of the D2 h computation (rotated for the other differentials).

    Each AND-difference is Delta(x_{i-1} x_{i-8}) with terms
    A = x_{i-1} d_{i-8}, B = d_{i-1} x_{i-8} and C = d_{i-1} d_{i-8}.
    """

    s17: tuple[int, ...] = (0, 1, 2, 3, 6, 8, 9, 10, 15)     # two-sided ANDs of both L17 values
    k17: tuple[int, ...] = (4, 6, 7, 8, 9, 13, 15)           # R17 bits with a guessed K17 bit
    kappa: tuple[int, ...] = (5, 3)                          # R17[i] ^ K16[i+2] combinations
    a16: tuple[int, ...] = (7, 8, 14)
    b16: tuple[int, ...] = (0, 1, 7)
    c16_skip: tuple[int, ...] = (0, 1, 8, 14)
    r16: tuple[int, ...] = (5, 7)
    a15: tuple[int, ...] = (6,)
    b15: tuple[int, ...] = (15,)
    c15_skip: tuple[int, ...] = (6, 15)

    def rotated(self, r: int) -> "HSpec":
        return HSpec(*(tuple((p + r) % N for p in getattr(self, f)) for f in self.__dataclass_fields__))

    @property
    def value_bits(self) -> tuple[int, ...]:
        return tuple(sorted(self.k17 + self.kappa))


D2_SPEC = HSpec()


def h_spec(did: str = "D2") -> HSpec:
    return D2_SPEC.rotated(ROTATIONS[did])


def _and_diff(x, d, a: int, b: int, c: int):
    """Masked AND-difference terms from values ``x`` and differences ``d``."""
    ta = _rot(x, 1) & _rot(d, 8)
    tb = _rot(d, 1) & _rot(x, 8)
    tc = _rot(d, 1) & _rot(d, 8)
    return (ta & a) ^ (tb & b) ^ (tc & c)


def unpack_k1(k1, did: str = "D2"):
    """Split a packed 25-bit guess into K18 and the word of R17-offset bits.

    Packing follows the catalog order: K18 bits 0..15, then the K17 bits,
    then the two K16 ^ K17 combinations.  The returned ``k17w`` carries each
    K17 guess at its own position and each combination at the position of
    its K17 bit, which is where it is added to R17.
    """
    spec = h_spec(did)
    k18 = k1 & MASK
    k17w = 0
    for j, p in enumerate(spec.k17):
        k17w = k17w | (((k1 >> (16 + j)) & 1) << p)
    for j, p in enumerate(spec.kappa):
        k17w = k17w | (((k1 >> (16 + len(spec.k17) + j)) & 1) << p)
    return k18, k17w


def classical_h(ct, ctp, k1, did: str = "D2"):
    """State-15 difference of a ciphertext pair from the 25 guessed key bits.

    Returns ``(dL15 << 16) | dR15``.  Steps: back through round 18 with K18,
    difference of state 17 (AND terms two-sided where the filter allows a
    nonzero input difference), R17 values on the guessed bits, difference of
    state 16 (value terms where the trail allows a nonzero input difference),
    two R16 values, difference of state 15.  Elsewhere AND-differences use
    the product of input differences.
    """
    spec = h_spec(did)
    (l19, r19), (l19p, r19p) = ct, ctp
    k18, k17w = unpack_k1(k1, did)
    x, xp = l19 ^ _f(r19) ^ k18, l19p ^ _f(r19p) ^ k18          # L17 = R18
    y, yp = r19, r19p                                           # L18
    d17 = x ^ xp
    d18 = y ^ yp
    s17 = _bits(spec.s17)
    a17 = ((_and(x) ^ _and(xp)) & s17) ^ (_and(d17) & ~s17 & MASK)
    d16 = d18 ^ _rot(d17, 2) ^ a17                              # dR17 = dL16
    v = y ^ _and(x) ^ _rot(x, 2) ^ k17w                         # R17 (offset) values
    a16 = _and_diff(v, d16, _bits(spec.a16), _bits(spec.b16), MASK & ~_bits(spec.c16_skip))
    d15l = d17 ^ _rot(d16, 2) ^ a16                             # dR16 = dL15
    w = x ^ _and(v) ^ _rot(v, 2)                                # R16 values on spec.r16
    a15 = _and_diff(w, d15l, _bits(spec.a15), _bits(spec.b15), MASK & ~_bits(spec.c15_skip))
    d15r = d16 ^ _rot(d15l, 2) ^ a15
    return (d15l << N) | d15r


def dout_check(ct, ctp, k1, did: str = "D2"):
    """Whether h maps the pair to the differential's output difference under guess ``k1``."""
    return classical_h(ct, ctp, k1, did) == get_differential(did).differential.dout_int


# -- independent oracle: explicit 4-round partial decryption ------------------------
def k1_from_round_keys(round_keys: dict[int, int] | Sequence[int], did: str = "D2") -> int:
    rk = round_keys if isinstance(round_keys, dict) else dict(enumerate(round_keys))
    return get_differential(did).key_bits.evaluate(rk)


def partial_decrypt_difference(ct, ctp, k16: int, k17: int, k18: int) -> int:
    """State-15 difference by decrypting both ciphertexts through rounds 18, 17, 16."""
    def back(block):
        l, r = block
        for k in (k18, k17, k16):
            l, r = r, l ^ _f(r) ^ k
        return l, r                           # state 16; state 15 left = R16
    (l16, r16), (l16p, r16p) = back(ct), back(ctp)
    dl15 = r16 ^ r16p
    dr15 = l16 ^ l16p ^ _f(r16) ^ _f(r16p)   # K15 cancels
    return (dl15 << N) | dr15


def random_completion(k1: int, rng, did: str = "D2") -> tuple[int, int, int]:
    """Round keys K16, K17, K18 consistent with ``k1``, unguessed bits random."""
    spec = h_spec(did)
    k18, _ = unpack_k1(k1, did)
    k17 = int(rng.integers(0, 1 << N))
    k16 = int(rng.integers(0, 1 << N))
    for j, p in enumerate(spec.k17):
        k17 = (k17 & ~(1 << p)) | (((k1 >> (16 + j)) & 1) << p)
    for j, p in enumerate(spec.kappa):
        want = (k1 >> (16 + len(spec.k17) + j)) & 1
        kb, k16b = p, (p + 2) % N            # K16[p+2] ^ K17[p]
        cur = ((k16 >> k16b) & 1) ^ ((k17 >> kb) & 1)
        k16 ^= (cur ^ want) << k16b
    return k16, k17, k18


def right_pair(rng, did: str = "D2", keys: Sequence[int] | None = None):
    """A ciphertext pair whose state-15 difference is the output difference.

    ``keys`` are K15..K18; random when omitted.  Returns (ct, ctp, keys).
    """
    dl, dr = get_differential(did).differential.dout
    keys = [int(k) for k in rng.integers(0, 1 << N, 4)] if keys is None else list(keys)
    l, r = (int(v) for v in rng.integers(0, 1 << N, 2))
    a, b = (l, r), (l ^ dl, r ^ dr)
    for k in keys:
        a = (a[1] ^ _f(a[0]) ^ k, a[0])
        b = (b[1] ^ _f(b[0]) ^ k, b[0])
    return a, b, keys


def sample_filtered_pairs(rng, size: int, did: str = "D2", k18=None):
    """``size`` ciphertext pairs that pass the filter, as int64 arrays.

    Each pair is a random state-18 pair whose difference matches the filter
    (free bits uniform), pushed through the last round with ``k18`` (random per
    pair when omitted).  Returns ``((l, r), (lp, rp), k18)``.
    """
    pat = delta18_filter(did)
    free = ~pat.mask & ((1 << 2 * N) - 1)
    d = pat.value | (rng.integers(0, 1 << 2 * N, size, dtype=np.int64) & free)
    l18 = rng.integers(0, 1 << N, size, dtype=np.int64)
    r18 = rng.integers(0, 1 << N, size, dtype=np.int64)
    k = rng.integers(0, 1 << N, size, dtype=np.int64) if k18 is None else np.broadcast_to(np.int64(k18), (size,))
    l18p, r18p = l18 ^ (d >> N), r18 ^ (d & MASK)
    ct = (r18 ^ _f(l18) ^ k, l18)
    ctp = (r18p ^ _f(l18p) ^ k, l18p)
    return ct, ctp, k
