"""Keyed pseudo-randomness.

Each decision is a pure function of ``(seed, key)``: the key components are
length-prefixed (8-byte big-endian byte count, then UTF-8 bytes), the result
is hashed with BLAKE2b (8-byte digest, keyed with the seed as 8 big-endian
bytes, personalization ``kgsheets-draw``), and the digest is read as an
unsigned big-endian 64-bit integer.

This construction is part of the output-stability contract: changing it
changes every generated workbook.
"""

from __future__ import annotations

import hashlib
from typing import Iterable

_PERSON = b"kgsheets-draw"
_SEED_MAX = 2**64 - 1

Key = tuple[str, ...]


def encode_key(key: Iterable[object]) -> bytes:
    out = bytearray()
    for part in key:
        data = str(part).encode("utf-8")
        out += len(data).to_bytes(8, "big")
        out += data
    return bytes(out)


def draw_bits(seed: int, key: Iterable[object]) -> int:
    if not 0 <= seed <= _SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    h = hashlib.blake2b(encode_key(key), digest_size=8, key=seed.to_bytes(8, "big"), person=_PERSON)
    return int.from_bytes(h.digest(), "big")


def draw_unit(seed: int, key: Iterable[object]) -> float:
    """Uniform real in [0, 1); the top 53 bits keep the result exactly representable."""
    return (draw_bits(seed, key) >> 11) / 2.0**53


def draw_choice(seed: int, key: Iterable[object], n: int) -> int:
    """Uniform integer in [0, n)."""
    if n < 1:
        raise ValueError(f"need at least one option, got n={n}")
    return (draw_bits(seed, key) * n) >> 64


def draw_sample(seed: int, key: Key, options: list, k: int) -> list:
    """``k`` options drawn without replacement, one keyed choice per position."""
    remaining = list(options)
    picked = []
    for i in range(min(k, len(remaining))):
        picked.append(remaining.pop(draw_choice(seed, key + (str(i),), len(remaining))))
    return picked
