"""Reproducible randomness.

One counter-based generator (Philox) for the whole library.  Streams are keyed
hierarchically by ``(seed, *path)`` so every draw is a pure function of the
seed, the operation name and the draw index.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _key(part) -> int:
    if isinstance(part, (int, np.integer)) and not isinstance(part, bool):
        if part < 0:
            raise ValueError("path components must be non-negative")
        return int(part)
    digest = hashlib.blake2b(str(part).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class Stream:
    def __init__(self, seed: int = 0, *path):
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.seed = int(seed)
        self.path = tuple(path)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=tuple(_key(p) for p in self.path))
        self._gen = np.random.Generator(np.random.Philox(seq))

    def child(self, *path) -> "Stream":
        return Stream(self.seed, *self.path, *path)

    def integers(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        return int(self._gen.integers(n))

    def __repr__(self):
        return f"Stream(seed={self.seed}, path={self.path})"


def as_stream(seed_or_stream, *path) -> Stream:
    if isinstance(seed_or_stream, Stream):
        return seed_or_stream.child(*path) if path else seed_or_stream
    return Stream(int(seed_or_stream or 0), *path)
