"""Deterministic random streams derived from a base seed and string tags.

``random.Random`` seeded with a string hashes it through SHA-512 (seeding
version 2), so streams are reproducible across platforms and interpreter
runs and unrelated tags give independent-looking streams.
"""

from __future__ import annotations

import random


def derive_rng(seed: int | str, *tags: object) -> random.Random:
    key = "/".join([str(seed), *map(str, tags)])
    return random.Random(key)


def derive_seed(seed: int | str, *tags: object) -> int:
    """A 63-bit integer seed keyed by the same tag scheme."""
    return derive_rng(seed, *tags).getrandbits(63)
