"""Stable sub-seed derivation.

Every workflow draws all of its randomness from one user-visible base seed.
Sub-streams (benchmark cells, data splits, weight inits) get their own seeds
derived by hashing the base seed together with a label path, so adding a new
workflow or removing a benchmark cell never perturbs any other stream.
"""

import hashlib


def derive_seed(base_seed: int, *parts) -> int:
    """Derive a 64-bit unsigned sub-seed from ``base_seed`` and label parts.

    The derivation is a SHA-256 over the decimal base seed and the string
    forms of the parts, separated by an ASCII unit separator; stable across
    platforms and Python versions.
    """
    h = hashlib.sha256()
    h.update(str(int(base_seed)).encode())
    for part in parts:
        h.update(b"\x1f")
        h.update(str(part).encode())
    return int.from_bytes(h.digest()[:8], "little")
