"""Tests for the asymptotic cost-exponent curves."""

import io
import math

import pytest

from sumbins import costmodel as cm

EPS = 1e-7


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------


def test_entropy_frozen_values():
    assert cm.entropy(0.5) == 1.0
    assert cm.entropy(0.0) == 0.0
    assert cm.entropy(1.0) == 0.0
    assert abs(cm.entropy(0.11) - 0.49993) < 1e-4
    assert abs(cm.entropy(0.11) - 0.499915958164528) < 1e-12


def test_entropy_symmetry_and_monotone_flanks():
    for x in (0.01, 0.1, 0.25, 0.37, 0.49):
        assert cm.entropy(x) == pytest.approx(cm.entropy(1.0 - x), abs=1e-12)
        assert cm.entropy(x) < cm.entropy(x + 0.005)


def test_entropy_domain():
    with pytest.raises(ValueError):
        cm.entropy(-0.1)
    with pytest.raises(ValueError):
        cm.entropy(1.0001)


# ---------------------------------------------------------------------------
# base family curves
# ---------------------------------------------------------------------------


def test_mitm_curves():
    assert cm.gamma_mitm_quantum(0.5) == pytest.approx(1.5 / 3.0)
    assert cm.gamma_mitm_classical(0.5) == pytest.approx(0.75)
    # limit toward 1 is l/3 resp. l/2 since the entropy term vanishes
    assert cm.gamma_mitm_quantum(0.999999) == pytest.approx(1.0 / 3.0, abs=1e-4)
    assert cm.gamma_mitm_classical(0.999999) == pytest.approx(0.5, abs=1e-4)


def test_rep_curves():
    assert cm.gamma_rep_quantum(0.6) == pytest.approx(0.4)
    assert cm.gamma_rep_quantum(0.2) == pytest.approx(0.3)
    assert cm.gamma_rep_quantum(0.8) == pytest.approx(0.5)
    assert cm.gamma_rep_classical(0.3) == 0.5
    assert cm.gamma_rep_classical(0.5) == 0.5
    assert cm.gamma_rep_classical(0.8) == pytest.approx(0.8)


def test_ratio_domain_checked_everywhere():
    fns = (
        cm.gamma_mitm_quantum,
        cm.gamma_mitm_classical,
        cm.gamma_rep_quantum,
        cm.gamma_rep_classical,
        cm.gamma_quantum_shifted,
        cm.gamma_classical_shifted,
        cm.gamma_quantum_equal_min,
        cm.b_quantum_equal_min,
    )
    for fn in fns:
        for bad in (0.0, 1.0, -0.3, 1.2):
            with pytest.raises(ValueError):
                fn(bad)


# ---------------------------------------------------------------------------
# crossover ratios
# ---------------------------------------------------------------------------


def test_crossover_frozen_values():
    cx = cm.crossovers()
    assert set(cx) == {
        "quantum_l1",
        "quantum_l2",
        "classical_l1",
        "classical_l2",
        "equal_min_l1",
        "equal_min_l2",
    }
    assert cx["quantum_l1"] == pytest.approx(0.190440, abs=1e-5)
    assert cx["quantum_l2"] == pytest.approx(0.808635, abs=1e-5)
    assert cx["classical_l1"] == pytest.approx(0.227092, abs=1e-5)
    assert cx["classical_l2"] == pytest.approx(0.772908, abs=1e-5)
    assert cx["equal_min_l1"] == pytest.approx(0.273456, abs=1e-5)
    assert cx["equal_min_l2"] == pytest.approx(cx["quantum_l2"], abs=1e-8)


def test_crossovers_satisfy_their_equations():
    cx = cm.crossovers()
    l1, l2 = cx["quantum_l1"], cx["quantum_l2"]
    assert cm.gamma_mitm_quantum(l1) == pytest.approx((1.0 + l1) / 4.0, abs=1e-8)
    assert cm.gamma_mitm_quantum(l2) == pytest.approx(l2 / 2.0 + 0.1, abs=1e-8)
    c1, c2 = cx["classical_l1"], cx["classical_l2"]
    assert cm.entropy(c1) + c1 == pytest.approx(1.0, abs=1e-8)
    assert cm.entropy(c2) == pytest.approx(c2, abs=1e-8)
    # the two classical equations are mirror images, so the roots sum to 1
    assert c1 + c2 == pytest.approx(1.0, abs=1e-8)
    e1 = cx["equal_min_l1"]
    left = 0.5 - (1.0 - e1) / 4.0 * cm.entropy(e1 / (2.0 * (1.0 - e1)))
    assert cm.gamma_mitm_quantum(e1) == pytest.approx(left, abs=1e-8)


def test_crossovers_returns_a_copy():
    cx = cm.crossovers()
    cx["quantum_l1"] = 0.0
    assert cm.crossovers()["quantum_l1"] == pytest.approx(0.190440, abs=1e-5)


# ---------------------------------------------------------------------------
# master curves
# ---------------------------------------------------------------------------


def test_quantum_shifted_frozen_values():
    assert cm.gamma_quantum_shifted(0.6) == pytest.approx(0.4)
    assert cm.gamma_quantum_shifted(0.999) == pytest.approx(
        cm.gamma_mitm_quantum(0.999)
    )
    assert cm.gamma_quantum_shifted(0.05) == pytest.approx(
        cm.gamma_mitm_quantum(0.05)
    )


def test_classical_shifted_frozen_values():
    assert cm.gamma_classical_shifted(0.5) == 0.5
    assert cm.gamma_classical_shifted(0.3) == 0.5
    assert cm.gamma_classical_shifted(0.6) == pytest.approx(0.6)
    assert cm.gamma_classical_shifted(0.9) == pytest.approx(
        (cm.entropy(0.9) + 0.9) / 2.0
    )


def test_equal_min_frozen_values():
    assert cm.gamma_quantum_equal_min(0.5) == pytest.approx(0.375)
    expect = 0.5 - 0.15 * cm.entropy(1.0 / 3.0)
    assert cm.gamma_quantum_equal_min(0.4) == pytest.approx(expect, abs=1e-12)
    assert cm.gamma_quantum_equal_min(0.55) == pytest.approx(1.55 / 4.0)
    assert cm.gamma_quantum_equal_min(0.7) == pytest.approx(0.45)


def test_shifted_curves_are_family_minima():
    for i in range(1, 1000):
        l = i / 1000.0
        q = min(cm.gamma_mitm_quantum(l), cm.gamma_rep_quantum(l))
        assert cm.gamma_quantum_shifted(l) == pytest.approx(q, abs=1e-9)
        c = min(cm.gamma_mitm_classical(l), cm.gamma_rep_classical(l))
        assert cm.gamma_classical_shifted(l) == pytest.approx(c, abs=1e-9)


def test_equal_min_never_below_shifted():
    # knowing only the smaller subset's ratio is a weaker promise than
    # knowing the pair's total ratio, so the equal-sums minimum curve sits
    # on or above the shifted curve, meeting it from 0.5 to the crossover
    for i in range(1, 1000):
        l = i / 1000.0
        assert (
            cm.gamma_quantum_equal_min(l)
            >= cm.gamma_quantum_shifted(l) - 1e-12
        )
    for l in (0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8):
        assert cm.gamma_quantum_equal_min(l) == pytest.approx(
            cm.gamma_quantum_shifted(l), abs=1e-12
        )


def test_continuity_at_piece_boundaries():
    cx = cm.crossovers()
    cases = [
        (cm.gamma_quantum_shifted, (cx["quantum_l1"], 0.6, cx["quantum_l2"])),
        (
            cm.gamma_classical_shifted,
            (cx["classical_l1"], 0.5, cx["classical_l2"]),
        ),
        (
            cm.gamma_quantum_equal_min,
            (cx["equal_min_l1"], 0.5, 0.6, cx["equal_min_l2"]),
        ),
        (cm.gamma_rep_quantum, (0.6,)),
        (cm.gamma_rep_classical, (0.5,)),
    ]
    for fn, boundaries in cases:
        for b in boundaries:
            assert fn(b - EPS) == pytest.approx(fn(b + EPS), abs=1e-6)


def test_worst_cases():
    l, g = cm.worst_case_quantum_shifted()
    assert l == pytest.approx(0.808635, abs=1e-5)
    assert g == pytest.approx(0.504318, abs=1e-5)
    assert g == pytest.approx(l / 2.0 + 0.1, abs=1e-9)
    # it is an actual maximum of the sampled curve
    peak = max(v for _, v in cm.curve_points("shifted_quantum", 0.001))
    assert peak <= g + 1e-6

    lc, gc = cm.worst_case_classical_shifted()
    assert lc == pytest.approx(0.772908, abs=1e-5)
    assert gc == pytest.approx(lc, abs=1e-9)
    peak_c = max(v for _, v in cm.curve_points("shifted_classical", 0.001))
    assert peak_c <= gc + 1e-6


def test_b_equal_min_pieces():
    # on the left flank the bin scale equals the exponent itself
    for lam in (0.3, 0.4, 0.45, 0.5):
        assert cm.b_quantum_equal_min(lam) == pytest.approx(
            cm.gamma_quantum_equal_min(lam)
        )
    assert cm.b_quantum_equal_min(0.5) == pytest.approx(0.375)
    assert cm.b_quantum_equal_min(0.55) == pytest.approx(1.55 / 4.0)
    assert cm.b_quantum_equal_min(0.6) == pytest.approx(0.4)
    assert cm.b_quantum_equal_min(0.7) == pytest.approx(0.4)
    assert cm.b_quantum_equal_min(0.9) == pytest.approx(0.4)


# ---------------------------------------------------------------------------
# pair finding cost
# ---------------------------------------------------------------------------


def test_pair_finding_cube_regime():
    assert cm.pair_finding_cost(8, 8, 8) == pytest.approx(2.0)
    assert cm.pair_finding_cost(64, 64, 1) == pytest.approx(16.0)  # N^(2/3)


def test_pair_finding_sqrt_regime():
    # M = 2 K N^2 lands in the sqrt regime
    assert cm.pair_finding_cost(4, 64, 2) == pytest.approx(math.sqrt(32.0))


def test_pair_finding_regime_boundary_continuous():
    # at M = K N^2 both formulas give exactly N
    assert cm.pair_finding_cost(5, 75, 3) == pytest.approx(5.0)
    assert cm.pair_finding_cost(5, 75.0000001, 3) == pytest.approx(5.0, abs=1e-6)


def test_pair_finding_symmetric():
    assert cm.pair_finding_cost(10, 1000, 7) == pytest.approx(
        cm.pair_finding_cost(1000, 10, 7)
    )


def test_pair_finding_domain():
    for args in ((0, 4, 1), (4, 0, 1), (4, 4, 0), (-1, 4, 2)):
        with pytest.raises(ValueError):
            cm.pair_finding_cost(*args)


# ---------------------------------------------------------------------------
# curve catalogue and CSV export
# ---------------------------------------------------------------------------


def test_curve_kind_catalogue():
    assert set(cm.CURVE_KINDS) == {
        "mitm_quantum",
        "mitm_classical",
        "rep_quantum",
        "rep_classical",
        "shifted_quantum",
        "shifted_classical",
        "equal_min_quantum",
        "folklore_equal_sums",
    }


def test_folklore_constant():
    assert cm.FOLKLORE_EQUAL_SUMS_EXPONENT == pytest.approx(math.log2(3) / 3)
    assert cm.FOLKLORE_EQUAL_SUMS_EXPONENT == pytest.approx(0.5283, abs=1e-3)
    fn = cm.CURVE_KINDS["folklore_equal_sums"]
    assert fn(0.123) == fn(0.9) == cm.FOLKLORE_EQUAL_SUMS_EXPONENT


def test_curve_points_default_grid():
    pts = cm.curve_points("shifted_quantum")
    assert len(pts) == 999
    assert pts[0][0] == pytest.approx(0.001)
    assert pts[-1][0] == pytest.approx(0.999)
    by_l = {round(l * 1000): g for l, g in pts}
    assert by_l[809] == pytest.approx(0.504, abs=1e-3)


def test_curve_points_lipschitz():
    for kind in cm.CURVE_KINDS:
        pts = cm.curve_points(kind, 0.001)
        for (_, g0), (_, g1) in zip(pts, pts[1:]):
            assert abs(g1 - g0) < 0.01


def test_curve_points_coarse_grid():
    pts = cm.curve_points("rep_classical", step=0.25)
    assert pts == [(0.25, 0.5), (0.5, 0.5), (0.75, 0.75)]


def test_curve_points_validation():
    with pytest.raises(ValueError):
        cm.curve_points("no_such_curve")
    for bad in (0.0, 1.0, -0.5, 2.0):
        with pytest.raises(ValueError):
            cm.curve_points("mitm_quantum", step=bad)


def test_write_curve_csv_with_comment():
    buf = io.StringIO()
    n = cm.write_curve_csv(buf, "rep_classical", step=0.25, comment="hello")
    assert n == 3
    assert buf.getvalue() == "# hello\nl,gamma\n0.25,0.5\n0.5,0.5\n0.75,0.75\n"


def test_write_curve_csv_without_comment():
    buf = io.StringIO()
    n = cm.write_curve_csv(buf, "folklore_equal_sums", step=0.5)
    assert n == 1
    lines = buf.getvalue().splitlines()
    assert lines[0] == "l,gamma"
    l_str, g_str = lines[1].split(",")
    assert float(l_str) == 0.5
    assert float(g_str) == pytest.approx(math.log2(3) / 3, abs=1e-8)
    # nine significant digits in the payload
    assert g_str == "0.528320834"


def test_write_curve_csv_row_count_matches_points():
    buf = io.StringIO()
    n = cm.write_curve_csv(buf, "shifted_quantum", step=0.001)
    assert n == 999
    assert len(buf.getvalue().splitlines()) == 1000  # header + rows
