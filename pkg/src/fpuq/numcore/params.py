"""Named parameter blocks with a flattened view for optimizers."""
from __future__ import annotations

from typing import Callable, Iterable, Iterator

import numpy as np

from .tensor import NonFiniteError, Tensor, backward

__all__ = ["ParamVector", "grad_params"]


class ParamVector:
    """Ordered, uniquely named blocks (weights/biases per layer).

    Blocks are numpy arrays in the canonical form; traced forms hold tensors
    with the same names and shapes.
    """

    def __init__(self, blocks: dict | Iterable[tuple[str, object]]):
        blocks = dict(blocks)
        if not blocks:
            raise ValueError("ParamVector needs at least one block")
        self._blocks = blocks

    def __getitem__(self, name: str):
        return self._blocks[name]

    def __contains__(self, name: str) -> bool:
        return name in self._blocks

    def __iter__(self) -> Iterator[str]:
        return iter(self._blocks)

    def __len__(self) -> int:
        return len(self._blocks)

    @property
    def names(self) -> list[str]:
        return list(self._blocks)

    def items(self):
        return self._blocks.items()

    def map(self, fn: Callable) -> "ParamVector":
        return ParamVector({k: fn(v) for k, v in self._blocks.items()})

    def prefixed(self, prefix: str) -> "ParamVector":
        return ParamVector({f"{prefix}.{k}": v for k, v in self._blocks.items()})

    @staticmethod
    def merge(parts: dict[str, "ParamVector"]) -> "ParamVector":
        blocks: dict[str, object] = {}
        for prefix, pv in parts.items():
            for k, v in pv.items():
                name = f"{prefix}.{k}"
                if name in blocks:
                    raise ValueError(f"duplicate block name {name!r}")
                blocks[name] = v
        return ParamVector(blocks)

    def select(self, prefix: str) -> "ParamVector":
        head = prefix + "."
        picked = {k[len(head):]: v for k, v in self._blocks.items() if k.startswith(head)}
        if not picked:
            raise KeyError(f"no blocks under prefix {prefix!r}")
        return ParamVector(picked)

    def flatten(self) -> np.ndarray:
        return np.concatenate([np.ravel(v) for v in self._blocks.values()])

    def unflatten(self, flat: np.ndarray) -> "ParamVector":
        """Rebuild blocks shaped like self from a flat vector."""
        flat = np.asarray(flat, dtype=np.float64)
        if flat.size != sum(np.size(v) for v in self._blocks.values()):
            raise ValueError("flat vector length does not match block sizes")
        out, start = {}, 0
        for k, v in self._blocks.items():
            n = np.size(v)
            out[k] = flat[start:start + n].reshape(np.shape(v)).copy()
            start += n
        return ParamVector(out)

    def lift(self) -> "ParamVector":
        """Tensor leaves (requires_grad) sharing this vector's structure."""
        return self.map(lambda v: Tensor(v, requires_grad=True))

    def copy(self) -> "ParamVector":
        return self.map(lambda v: np.array(v, dtype=np.float64))


def grad_params(scalar_fn: Callable[[ParamVector], Tensor], params: ParamVector) -> ParamVector:
    """Reverse-mode gradient of a scalar function of a parameter vector."""
    leaves = params.lift()
    out = scalar_fn(leaves)
    if not np.isfinite(out.data).all():
        raise NonFiniteError("objective evaluated to a non-finite value")
    grads = backward(out, [leaves[k] for k in leaves.names])
    blocks = {}
    for name, g in zip(leaves.names, grads):
        if not np.isfinite(g.data).all():
            raise NonFiniteError(f"non-finite gradient in block {name!r}")
        blocks[name] = g.data
    return ParamVector(blocks)
