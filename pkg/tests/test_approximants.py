import pytest

from lzsm import chrw
from lzsm.approximants import compare, p01_dr, p01_magnus
from lzsm.propagator import DriveParams

# four-way (exact, chrw, dr, magnus) P01 values at A = 1.16, frozen from a
# 4096-steps-per-period propagator run
FROZEN_TABLE = {
    0.5: (0.000051, 0.082903, 0.001881, 0.041334),
    1.0: (0.765040, 0.773757, 0.645907, 0.572870),
    2.0: (0.444820, 0.443953, 0.527551, 0.295333),
    4.0: (0.044564, 0.044550, 0.052717, 0.039541),
}


class TestClosedForms:
    def test_zero_amplitude(self):
        assert p01_dr(DriveParams(1.0, 0.0, 2.0)) == pytest.approx(0.0, abs=1e-12)
        assert p01_magnus(DriveParams(1.0, 0.0, 2.0)) == 0.0

    def test_ranges(self):
        for a in (0.3, 1.16, 2.87, 4.0):
            for w in (0.7, 1.3, 2.0, 4.0):
                p = DriveParams(1.0, a, w)
                assert 0.0 <= p01_dr(p) <= 1.0
                assert 0.0 <= p01_magnus(p) <= 1.0

    def test_dr_matches_chrw_at_weak_drive(self):
        # xi drops out of the picture as A -> 0
        p = DriveParams(1.0, 1e-3, 2.0)
        assert p01_dr(p) == pytest.approx(chrw.p01(p), abs=1e-6)

    def test_magnus_accurate_at_high_frequency(self):
        p = DriveParams(1.0, 1.0, 10.0)
        assert p01_magnus(p) == pytest.approx(chrw.p01(p), abs=1e-3)


@pytest.fixture(scope="module")
def table():
    rows = compare([DriveParams(1.0, 1.16, w) for w in sorted(FROZEN_TABLE)])
    return {r.omega: r for r in rows}


class TestCompare:
    def test_frozen_values(self, table):
        for w, (pe, pc, pd, pm) in FROZEN_TABLE.items():
            r = table[w]
            assert r.p01_exact == pytest.approx(pe, abs=1e-5)
            assert r.p01_chrw == pytest.approx(pc, abs=1e-5)
            assert r.p01_dr == pytest.approx(pd, abs=1e-5)
            assert r.p01_magnus == pytest.approx(pm, abs=1e-5)

    def test_chrw_is_best_above_gap(self, table):
        # at and above the gap frequency the self-consistent form beats both
        # rivals against the exact value
        for w in (1.0, 2.0, 4.0):
            r = table[w]
            err_chrw = abs(r.p01_chrw - r.p01_exact)
            assert err_chrw < abs(r.p01_dr - r.p01_exact)
            assert err_chrw < abs(r.p01_magnus - r.p01_exact)

    def test_report_echoes_parameters(self, table):
        for w, r in table.items():
            assert r.amplitude == 1.16
            assert r.omega == w
