"""Seeded, labelled random streams on the counter-based Philox generator.

Distinct labels derive statistically independent streams from one root seed,
so pipeline stages can be re-run (and re-ordered) reproducibly.
"""
from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["RngStream", "draw_normal", "draw_uniform"]


def _label_key(label: str) -> tuple[int, int]:
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=16).digest()
    return (int.from_bytes(digest[:8], "little"), int.from_bytes(digest[8:], "little"))


class RngStream:
    def __init__(self, seed: int, label: str = "root"):
        self.seed = int(seed)
        self.label = label
        self.counter = 0
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=_label_key(label))
        self._gen = np.random.Generator(np.random.Philox(ss))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, label={self.label!r}, counter={self.counter})"

    def split(self, role: str) -> "RngStream":
        """Independent child stream; same (seed, label, role) -> same draws."""
        return RngStream(self.seed, f"{self.label}/{role}")

    def normal(self, shape=()) -> np.ndarray:
        self.counter += 1
        return self._gen.standard_normal(shape)

    def uniform(self, shape=(), lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        if not lo < hi:
            raise ValueError(f"uniform bounds must satisfy lo < hi, got [{lo}, {hi})")
        self.counter += 1
        return self._gen.uniform(lo, hi, shape)

    def integers(self, n: int, shape=()) -> np.ndarray:
        self.counter += 1
        return self._gen.integers(0, n, size=shape)

    def permutation(self, n: int) -> np.ndarray:
        self.counter += 1
        return self._gen.permutation(n)

    def choice(self, n: int, size: int, replace: bool = False) -> np.ndarray:
        self.counter += 1
        return self._gen.choice(n, size=size, replace=replace)


def draw_normal(stream: RngStream, shape) -> np.ndarray:
    return stream.normal(shape)


def draw_uniform(stream: RngStream, shape, lo: float, hi: float) -> np.ndarray:
    return stream.uniform(shape, lo, hi)
