import math

import numpy as np
import pytest

from coldplasma.profiles import make_profile


def finite_difference(fn, rho, h=1e-6):
    return (fn(rho + h) - fn(rho - h)) / (2.0 * h)


class TestFamilies:
    @pytest.mark.parametrize(
        "family,params",
        [
            ("gaussian", {"a_star": 2.07, "rho_star": 3.0}),
            ("sine", {"amplitude": 0.3, "wavenumber": 1.5}),
            ("linear", {"alpha": 0.2, "beta": -0.4}),
        ],
    )
    def test_slopes_match_finite_differences(self, family, params):
        profile = make_profile(family, **params)
        rho = np.linspace(*profile.default_span, 21)
        s = profile.samples(rho)
        fd_P = finite_difference(profile.momentum, rho)
        fd_E = finite_difference(profile.field, rho)
        assert np.max(np.abs(s.dP0 - fd_P)) < 1e-8
        assert np.max(np.abs(s.dE0 - fd_E)) < 1e-8

    def test_sine_sets_both_components(self):
        profile = make_profile("sine", amplitude=0.3, wavenumber=1.0)
        s = profile.samples(np.array([0.4]))
        assert abs(s.P0[0] - 0.3 * math.sin(0.4)) < 1e-15
        assert abs(s.E0[0] - 0.3 * math.sin(0.4)) < 1e-15

    def test_linear_components(self):
        profile = make_profile("linear", alpha=0.2, beta=-0.4)
        s = profile.samples(np.array([2.0]))
        assert abs(s.P0[0] + 0.8) < 1e-15
        assert abs(s.E0[0] - 0.4) < 1e-15
        assert s.dP0[0] == -0.4 and s.dE0[0] == 0.2

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            make_profile("hat", width=1.0)


class TestTable:
    def test_roundtrip(self, tmp_path):
        rho = np.linspace(-2.0, 2.0, 101)
        P = 0.2 * np.sin(rho)
        E = 0.1 * rho * np.exp(-(rho ** 2))
        path = tmp_path / "table.csv"
        with open(path, "w") as fh:
            fh.write("rho,P,E\n")
            for r, p, e in zip(rho, P, E):
                fh.write(f"{r:.17g},{p:.17g},{e:.17g}\n")
        profile = make_profile("table", path=str(path))
        s = profile.samples()
        assert s.rho.size == 101
        h = rho[1] - rho[0]
        assert np.max(np.abs(s.dP0 - 0.2 * np.cos(rho))) < 5.0 * h ** 4 + 1e-6
        assert profile.default_span == (-2.0, 2.0)

    def test_requires_uniform_grid(self, tmp_path):
        path = tmp_path / "bad.csv"
        with open(path, "w") as fh:
            fh.write("rho,P,E\n0,0,0\n0.1,0,0\n0.3,0,0\n0.4,0,0\n0.5,0,0\n")
        with pytest.raises(ValueError):
            make_profile("table", path=str(path))

    def test_requires_columns(self, tmp_path):
        path = tmp_path / "cols.csv"
        with open(path, "w") as fh:
            fh.write("rho,Q\n0,0\n0.1,0\n0.2,0\n0.3,0\n0.4,0\n")
        with pytest.raises(ValueError):
            make_profile("table", path=str(path))
