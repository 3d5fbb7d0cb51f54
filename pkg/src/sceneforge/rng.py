"""Deterministic random-stream derivation.

Every stochastic stage of the pipeline draws from its own stream, keyed by
(root seed, labels...). Streams are Philox counter-based generators, so the
order in which examples are produced (serial, process pool, any worker
count) cannot change what any individual stream yields.
"""

from __future__ import annotations

import hashlib

import numpy as np


def stream_key(*labels: object) -> int:
    """Map a label tuple to a stable 128-bit integer.

    Labels may be ints, strings, or anything with a stable repr; they are
    joined unambiguously (length-prefixed) and hashed with blake2b, so the
    result is identical across platforms and Python versions.
    """
    h = hashlib.blake2b(digest_size=16)
    for label in labels:
        part = repr(label).encode("utf-8")
        h.update(len(part).to_bytes(4, "little"))
        h.update(part)
    return int.from_bytes(h.digest(), "little")


def derive_rng(*labels: object) -> np.random.Generator:
    """Return an independent Generator for the given label tuple."""
    key = stream_key(*labels)
    return np.random.Generator(np.random.Philox(key=key))


def kernel_seed(*labels: object) -> int:
    """64-bit seed for the per-pixel hash used inside render kernels."""
    return stream_key(*labels) & 0xFFFFFFFFFFFFFFFF
