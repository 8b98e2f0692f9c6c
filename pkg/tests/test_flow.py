import numpy as np
import pytest
from scipy import stats

from fpuq.numcore import ParamVector, RngStream, Tensor, backward
from fpuq.nets import (IafFlow, IafSpec, flow_base_logpdf, iaf_inverse,
                       iaf_log_density, iaf_transform, init_iaf)

LOG_2PI = np.log(2 * np.pi)


def _randomized(flow: IafFlow, scale: float, seed: int) -> IafFlow:
    """Fill the zero-initialized output layers so the flow is nontrivial."""
    rng = np.random.default_rng(seed)
    blocks = {}
    for k, v in flow.params.items():
        blocks[k] = v + scale * rng.normal(size=np.shape(v)) if v.size else v
    return IafFlow(flow.spec, ParamVector(blocks), flow.masks, flow.permutations)


def test_identity_initialization_permutes_input():
    spec = IafSpec(dim=3, n_blocks=1, hidden_width=16, hidden_depth=2)
    flow = init_iaf(spec, RngStream(1, "id"))
    z = RngStream(2, "z").normal((10, 3))
    z_n, log_det = iaf_transform(flow, z)
    np.testing.assert_allclose(z_n, z[:, ::-1], atol=1e-15)
    np.testing.assert_allclose(log_det, 0.0, atol=1e-15)


def test_single_affine_block_log_det():
    # dim 1: masks are all zero, so the conditioner is a trainable constant pair
    spec = IafSpec(dim=1, n_blocks=1, hidden_width=8, hidden_depth=2)
    flow = init_iaf(spec, RngStream(3, "affine"))
    a, b = 2.0, 0.25
    blocks = dict(flow.params.items())
    blocks["block0.layer2.bias"] = np.array([b, np.log(a)])
    flow = IafFlow(spec, ParamVector(blocks), flow.masks, flow.permutations)
    z = np.array([[0.0], [1.0], [-2.0]])
    z_n, log_det = iaf_transform(flow, z)
    np.testing.assert_allclose(z_n, a * z + b, atol=1e-14)
    np.testing.assert_allclose(log_det, np.log(a), atol=1e-14)


def test_log_density_identity_flow_at_origin():
    spec = IafSpec(dim=2, n_blocks=1, hidden_width=8, hidden_depth=1)
    flow = init_iaf(spec, RngStream(4, "dens"))
    z = np.zeros((1, 2))
    z_n, log_det = iaf_transform(flow, z)
    lp = iaf_log_density(flow, z, z_n, log_det)
    assert lp[0] == pytest.approx(-LOG_2PI)


def test_log_density_affine_change_of_variables():
    spec = IafSpec(dim=1, n_blocks=1, hidden_width=8, hidden_depth=1)
    flow = init_iaf(spec, RngStream(5, "affine2"))
    blocks = dict(flow.params.items())
    blocks["block0.layer1.bias"] = np.array([0.0, np.log(2.0)])
    flow = IafFlow(spec, ParamVector(blocks), flow.masks, flow.permutations)
    z = np.zeros((1, 1))
    z_n, log_det = iaf_transform(flow, z)
    lp = iaf_log_density(flow, z, z_n, log_det)
    assert lp[0] == pytest.approx(-0.5 * LOG_2PI - np.log(2.0))


def test_log_det_matches_numeric_jacobian():
    spec = IafSpec(dim=4, n_blocks=3, hidden_width=24, hidden_depth=2)
    flow = _randomized(init_iaf(spec, RngStream(6, "jac")), 0.4, seed=60)
    z0 = RngStream(7, "jz").normal((6, 4))
    _, log_det = iaf_transform(flow, z0)
    h = 1e-6
    for r in range(z0.shape[0]):
        jac = np.zeros((4, 4))
        for k in range(4):
            zp, zm = z0[r].copy(), z0[r].copy()
            zp[k] += h
            zm[k] -= h
            yp, _ = iaf_transform(flow, zp[None, :])
            ym, _ = iaf_transform(flow, zm[None, :])
            jac[:, k] = (yp[0] - ym[0]) / (2 * h)
        _, det = np.linalg.slogdet(jac)
        assert abs(det - log_det[r]) < 1e-6


def test_inverse_round_trip():
    spec = IafSpec(dim=5, n_blocks=2, hidden_width=16, hidden_depth=2)
    flow = _randomized(init_iaf(spec, RngStream(8, "inv")), 0.3, seed=61)
    z = RngStream(9, "iz").normal((40, 5))
    y, log_det = iaf_transform(flow, z)
    z_back, log_det_back = iaf_inverse(flow, y)
    np.testing.assert_allclose(z_back, z, atol=1e-10)
    np.testing.assert_allclose(log_det_back, log_det, atol=1e-10)


def test_identity_flow_samples_are_base_normal():
    spec = IafSpec(dim=4, n_blocks=4, hidden_width=32, hidden_depth=2)
    flow = init_iaf(spec, RngStream(10, "ks"))
    z = RngStream(42, "ksz").normal((10_000, 4))
    z_n, _ = iaf_transform(flow, z)
    for k in range(4):
        assert stats.kstest(z_n[:, k], "norm").pvalue > 0.01


def test_block_log_dets_add():
    spec1 = IafSpec(dim=3, n_blocks=1, hidden_width=12, hidden_depth=2)
    spec2 = IafSpec(dim=3, n_blocks=2, hidden_width=12, hidden_depth=2)
    a = _randomized(init_iaf(spec1, RngStream(12, "a")), 0.3, seed=62)
    b = _randomized(init_iaf(spec1, RngStream(13, "b")), 0.3, seed=63)
    merged = ParamVector(
        {**{k: v for k, v in a.params.items()},
         **{k.replace("block0", "block1"): v for k, v in b.params.items()}})
    ab = IafFlow(spec2, merged, a.masks, a.permutations + b.permutations)
    z = RngStream(14, "abz").normal((25, 3))
    mid, ld_a = iaf_transform(a, z)
    _, ld_b = iaf_transform(b, mid)
    _, ld_ab = iaf_transform(ab, z)
    np.testing.assert_allclose(ld_ab, ld_a + ld_b, atol=1e-12)


def test_density_integrates_to_one():
    spec = IafSpec(dim=3, n_blocks=2, hidden_width=16, hidden_depth=2)
    flow = _randomized(init_iaf(spec, RngStream(15, "quad")), 0.2, seed=64)
    step = 0.125
    axis = np.arange(-6.0, 6.0 + step, step)
    total = 0.0
    grid_y, grid_z = np.meshgrid(axis, axis, indexing="ij")
    plane = np.column_stack([grid_y.ravel(), grid_z.ravel()])
    for x in axis:
        pts = np.column_stack([np.full(plane.shape[0], x), plane])
        z, log_det = iaf_inverse(flow, pts)
        logq = flow_base_logpdf(z) - log_det
        total += np.exp(logq).sum() * step**3
    assert abs(total - 1.0) < 0.01


def test_transform_is_differentiable_in_params_and_inputs():
    spec = IafSpec(dim=3, n_blocks=2, hidden_width=12, hidden_depth=2)
    flow = _randomized(init_iaf(spec, RngStream(16, "grad")), 0.3, seed=65)
    lifted = flow.params.lift()
    z = Tensor(RngStream(17, "gz").normal((4, 3)), requires_grad=True)
    z_n, log_det = iaf_transform(flow, z, params=lifted)
    loss = (z_n * z_n).sum() + log_det.sum()
    grads = backward(loss, [z] + [lifted[k] for k in lifted.names])
    assert all(np.isfinite(g.data).all() for g in grads)
    assert np.abs(grads[0].data).max() > 0


def test_width_mismatch_raises():
    spec = IafSpec(dim=3, n_blocks=1, hidden_width=8, hidden_depth=1)
    flow = init_iaf(spec, RngStream(18, "wm"))
    with pytest.raises(ValueError, match="latent width"):
        iaf_transform(flow, np.zeros((2, 4)))
