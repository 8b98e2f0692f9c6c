"""Checkpoint files: one-line JSON header + little-endian float64 blocks.

The header records the architecture, block names/shapes in declaration order,
and training metadata; the payload is each block raveled row-major. Writing
is deterministic so identical runs produce identical files.
"""
from __future__ import annotations

import dataclasses
import json
from pathlib import Path

import numpy as np

from ..numcore import ParamVector
from .deeponet import DeepONet
from .flow import IafFlow, IafSpec, _made_masks
from .generator import GeneratorNet
from .mlp import Mlp, MlpSpec

__all__ = ["load_checkpoint", "save_checkpoint"]

FORMAT = "fpuq.checkpoint.v1"


def _spec_dict(spec) -> dict:
    return dataclasses.asdict(spec)


def _describe(model) -> dict:
    if isinstance(model, GeneratorNet):
        return {"kind": "generator", "spec": _spec_dict(model.spec),
                "latent_dim": model.latent_dim, "coord_dim": model.coord_dim}
    if isinstance(model, Mlp):
        return {"kind": "mlp", "spec": _spec_dict(model.spec)}
    if isinstance(model, DeepONet):
        grid = model.sensor_grid
        return {"kind": "deeponet", "branch_spec": _spec_dict(model.branch_spec),
                "trunk_spec": _spec_dict(model.trunk_spec),
                "sensor_grid": None if grid is None else grid.points.tolist()}
    if isinstance(model, IafFlow):
        return {"kind": "iaf", "spec": _spec_dict(model.spec)}
    raise TypeError(f"cannot checkpoint {type(model).__name__}")


def _params_of(model) -> ParamVector:
    return model.params


def save_checkpoint(path, model, metadata: dict | None = None) -> None:
    params = _params_of(model)
    header = {
        "format": FORMAT,
        "model": _describe(model),
        "blocks": [{"name": k, "shape": list(np.shape(v))} for k, v in params.items()],
        "metadata": metadata or {},
    }
    payload = b"".join(
        np.ascontiguousarray(v, dtype="<f8").tobytes() for v in params._blocks.values())
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True, separators=(",", ":")).encode())
        fh.write(b"\n")
        fh.write(payload)


def load_checkpoint(path):
    """Returns (model, metadata)."""
    with open(Path(path), "rb") as fh:
        header = json.loads(fh.readline().decode())
        if header.get("format") != FORMAT:
            raise ValueError(f"{path}: not a {FORMAT} file")
        blocks = {}
        for entry in header["blocks"]:
            shape = tuple(entry["shape"])
            n = int(np.prod(shape)) if shape else 1
            raw = fh.read(8 * n)
            if len(raw) != 8 * n:
                raise ValueError(f"{path}: truncated block {entry['name']!r}")
            blocks[entry["name"]] = np.frombuffer(raw, dtype="<f8").reshape(shape).copy()
    params = ParamVector(blocks)
    desc = header["model"]
    kind = desc["kind"]
    if kind == "generator":
        spec = MlpSpec(**desc["spec"])
        model = GeneratorNet(spec, params, desc["latent_dim"], desc["coord_dim"])
    elif kind == "mlp":
        model = Mlp(MlpSpec(**desc["spec"]), params)
    elif kind == "deeponet":
        from ..priors.data import SensorGrid
        grid = desc["sensor_grid"]
        model = DeepONet(MlpSpec(**desc["branch_spec"]), MlpSpec(**desc["trunk_spec"]),
                         params,
                         None if grid is None else SensorGrid(np.asarray(grid)))
    elif kind == "iaf":
        spec = IafSpec(**desc["spec"])
        masks = _made_masks(spec.dim, spec.hidden_width, spec.hidden_depth)
        perms = [np.arange(spec.dim)[::-1].copy() for _ in range(spec.n_blocks)]
        model = IafFlow(spec, params, masks, perms)
    else:
        raise ValueError(f"unknown checkpoint kind {kind!r}")
    return model, header["metadata"]
