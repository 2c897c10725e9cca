import math

import numpy as np
import pytest

from morrey import GridDomain, GridFunction, MorreyParams, morrey_norm
from morrey.grid import GridError
from morrey.mollifier import BumpKernel, approximation_curve, bump_profile, convolve, scale_kernel
from morrey.verify.battery import generate
from morrey.weights import CappedPower, Power

INF = math.inf


def test_bump_profile_support():
    s = np.array([-1.0, -0.5, 0.0, 0.5, 1.0, 2.0])
    v = bump_profile(s)
    assert v[0] == v[4] == v[5] == 0.0
    assert v[2] == pytest.approx(math.exp(-1))
    assert v[1] == v[3]


@pytest.mark.parametrize("n, steps", [(1, 1), (1, 7), (2, 5), (3, 3)])
def test_kernel_unit_mass_and_support(n, steps):
    h = 1 / 64
    phi = BumpKernel.sample(n, h, steps * h)
    assert phi.mass() == pytest.approx(1.0, abs=1e-14)
    assert np.all(phi.weights >= 0)
    r = np.sqrt((phi.offsets ** 2).sum(axis=1)) * h
    assert r.max() < phi.radius
    # radial symmetry: equal radii carry equal weights
    for rad in np.unique(np.round(r, 12)):
        vals = phi.weights[np.isclose(r, rad)]
        assert np.ptp(vals) <= 1e-12 * vals.max()


def test_scale_kernel():
    h = 1 / 32
    base = BumpKernel.sample(1, h, h)
    phi = scale_kernel(base, 4 * h)
    assert phi.radius == pytest.approx(4 * h)
    assert phi.mass() == pytest.approx(1.0, abs=1e-14)
    same = scale_kernel(base, h)
    assert np.array_equal(same.weights, base.weights)
    with pytest.raises(GridError):
        scale_kernel(base, h / 2)
    with pytest.raises(GridError):
        BumpKernel.sample(1, h, 2.5 * h)


def test_convolution_reproduces_constants_and_lines_inside():
    d = GridDomain.unit_cube(1, 256)
    x = d.coords(d.indices())[:, 0]
    phi = BumpKernel.sample(1, d.spacing, 8 * d.spacing)
    inner = (x > 0.1) & (x < 0.9)
    one = convolve(GridFunction.constant(d), phi)
    assert np.max(np.abs(one.values[inner] - 1.0)) <= 1e-12
    lin = GridFunction(d, 3 * x - 1)
    out = convolve(lin, phi)
    assert np.max(np.abs(out.values[inner] - lin.values[inner])) <= 1e-9


def test_convolution_is_linear():
    rng = np.random.default_rng(0)
    d = GridDomain.unit_cube(2, 24)
    f, g = (GridFunction(d, rng.normal(size=d.npoints)) for _ in range(2))
    phi = BumpKernel.sample(2, d.spacing, 3 * d.spacing)
    lhs = convolve(2 * f + g, phi).values
    rhs = 2 * convolve(f, phi).values + convolve(g, phi).values
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


def test_convolution_against_dense_reference():
    rng = np.random.default_rng(4)
    d = GridDomain.unit_cube(1, 40)
    f = GridFunction(d, rng.normal(size=40))
    phi = BumpKernel.sample(1, d.spacing, 5 * d.spacing)
    kern = np.zeros(9)
    kern[phi.offsets[:, 0] + 4] = phi.weights
    ref = np.convolve(f.values, kern, mode="same") * d.spacing
    np.testing.assert_allclose(convolve(f, phi).values, ref, rtol=1e-12, atol=1e-15)


def test_convolution_bound():
    rng = np.random.default_rng(5)
    d = GridDomain.unit_cube(1, 128)
    f = GridFunction(d, rng.normal(size=128))
    params = MorreyParams(2.0, Power(0.25), 0.3)
    for steps in (1, 3, 9):
        phi = BumpKernel.sample(1, d.spacing, steps * d.spacing)
        assert morrey_norm(convolve(f, phi), params).value <= morrey_norm(f, params).value * (1 + 1e-12)


def test_convolve_needs_full_mask():
    d = GridDomain((4,), 0.25, mask=np.array([1, 0, 1, 1], bool))
    with pytest.raises(GridError):
        convolve(GridFunction.constant(d), BumpKernel.sample(1, 0.25, 0.25))


def test_approximation_curve_bump():
    f = generate("bump", 1, 256, 42)
    params = MorreyParams(2.0, CappedPower(0.25), INF)
    rows = approximation_curve(f, params, [1 / 8, 1 / 32], with_modulus=True)
    assert rows[0][2] > rows[1][2]
    for _, merr, _, bound in rows:
        assert merr <= bound * (1 + 1e-9)
    zero = approximation_curve(0.0 * f, params, [1 / 8])
    assert zero == [(1 / 8, 0.0, 0.0)]
    with pytest.raises(ValueError):
        approximation_curve(f, params, [1 / 32, 1 / 8])


def test_mollifier_rows_frozen():
    # reference: numpy.convolve with the same sampled kernel, errors measured by the
    # brute-force oracle and a plain fsum
    f = generate("bump", 1, 1024, 42)
    rows = approximation_curve(f, MorreyParams(2.0, CappedPower(0.25), INF), [1 / 8, 1 / 64])
    assert rows[0][1] == pytest.approx(0.02089243531373238, rel=1e-12)
    assert rows[0][2] == pytest.approx(0.015709135683484057, rel=1e-12)
    assert rows[1][1] == pytest.approx(0.0006542505624388492, rel=1e-12)
    assert rows[1][2] == pytest.approx(0.00037871315107700337, rel=1e-12)
