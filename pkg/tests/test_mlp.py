import numpy as np
import pytest

from fpuq.numcore import ParamVector, RngStream, grad_params
from fpuq.nets import MlpSpec, as_scalar_fn, init_mlp, init_mlp_params, mlp_forward
from fpuq.numcore.dual import seed_second_order
from tests.conftest import fd_gradient, fd_value_derivs


def test_zero_weights_return_final_bias():
    spec = MlpSpec(3, 4, 2, 2, "tanh")
    params = init_mlp_params(spec, RngStream(0, "z")).map(np.zeros_like)
    blocks = dict(params.items())
    blocks["layer2.bias"] = np.array([0.7, -0.3])
    out = mlp_forward(spec, ParamVector(blocks), np.random.default_rng(1).normal(size=(5, 3)))
    np.testing.assert_allclose(out, np.tile([0.7, -0.3], (5, 1)))


def test_crafted_leaky_identity_layer():
    # lrelu(x) - lrelu(-x) = (1 + slope) x reproduces a pure linear layer exactly
    d, slope = 3, 0.2
    spec = MlpSpec(d, 2 * d, 1, d, "leaky_relu", leaky_slope=slope)
    w1 = np.concatenate([np.eye(d), -np.eye(d)], axis=1)
    w2 = np.concatenate([np.eye(d), -np.eye(d)], axis=0) / (1.0 + slope)
    params = ParamVector({
        "layer0.weight": w1, "layer0.bias": np.zeros(2 * d),
        "layer1.weight": w2, "layer1.bias": np.zeros(d),
    })
    v = np.random.default_rng(2).normal(size=(6, d))
    np.testing.assert_allclose(mlp_forward(spec, params, v), v, atol=1e-14)


def test_random_two_layer_tanh_matches_hand_rolled():
    spec = MlpSpec(4, 6, 2, 3, "tanh")
    params = init_mlp_params(spec, RngStream(11, "hand"))
    x = RngStream(12, "x").normal((7, 4))
    h = np.tanh(x @ params["layer0.weight"] + params["layer0.bias"])
    h = np.tanh(h @ params["layer1.weight"] + params["layer1.bias"])
    want = h @ params["layer2.weight"] + params["layer2.bias"]
    np.testing.assert_allclose(mlp_forward(spec, params, x), want, atol=1e-12)


def test_width_mismatch_raises():
    spec = MlpSpec(4, 6, 1, 1, "tanh")
    params = init_mlp_params(spec, RngStream(1, "w"))
    with pytest.raises(ValueError, match="width"):
        mlp_forward(spec, params, np.zeros((2, 3)))


def test_invalid_activation_rejected():
    with pytest.raises(ValueError, match="activation"):
        MlpSpec(1, 2, 1, 1, "relu6")


@pytest.mark.parametrize("activation", ["tanh", "leaky_relu"])
def test_parameter_gradients_match_finite_differences(activation):
    spec = MlpSpec(2, 5, 2, 1, activation)
    params = init_mlp_params(spec, RngStream(21, activation))
    x = RngStream(22, "gx").normal((6, 2))

    def loss(p):
        out = mlp_forward(spec, p, x)
        return (out * out).mean()

    exact = grad_params(loss, params).flatten()
    approx = fd_gradient(lambda p: float(loss(p)), params).flatten()
    assert np.linalg.norm(exact - approx) / np.linalg.norm(approx) < 1e-5


def test_scalar_fn_second_derivative_matches_finite_differences():
    spec = MlpSpec(1, 8, 2, 1, "tanh")
    net = init_mlp(spec, RngStream(31, "scalar"))
    fn = as_scalar_fn(net)
    x0 = 0.37
    _, fd_d2 = fd_value_derivs(fn, x0, h=1e-3)
    lifted = fn(seed_second_order(x0, 1.0))
    assert abs(lifted.eps.eps - fd_d2) / abs(fd_d2) < 1e-4
