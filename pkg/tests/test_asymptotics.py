import mpmath
import pytest

from spsubgraphs.asymptotics import (
    CharPoint,
    NewtonError,
    SingularExpansion,
    SingularExpansionError,
    char_multi_det,
    char_pair,
    char_single,
    family_constants,
    family_radius,
    moments_from_radius,
    newton,
    pointwise_solve,
    quasi_powers_moments,
    recheck_residual,
    transfer_constant,
)
from spsubgraphs.asymptotics.characteristic import ratio_estimate
from spsubgraphs.asymptotics.linalg import SingularMatrixError, det, lu_solve
from spsubgraphs.series import BigFloat, Jet
from spsubgraphs.systems import (
    build_c4_network_system,
    build_girth_network_system,
    build_triangle_free_s3_equation,
    build_triangle_network_system,
    solve_fixed_point,
)

DIGITS = 30
R_TF = 1 / mpmath.mpf("5.09289")
R_SP = mpmath.mpf("0.12800")


@pytest.fixture(scope="module")
def tf_single():
    return char_single(build_triangle_free_s3_equation(), 0, 1, DIGITS, jets=False)


def test_pointwise_at_origin():
    with mpmath.workdps(DIGITS):
        point = pointwise_solve(build_triangle_network_system(), 0, digits=DIGITS)
        nets = solve_fixed_point(build_triangle_network_system(), 0, BigFloat(DIGITS), y=1, u=1)
        for name, value in point.items():
            assert abs(value - nets[name].coefficient(0)) < 1e-25, name


def test_pointwise_past_singularity_fails():
    with pytest.raises(NewtonError):
        pointwise_solve(build_triangle_network_system(), mpmath.mpf("0.2"), digits=DIGITS)


def test_single_and_pair_agree(tf_single):
    pair = char_pair(build_triangle_network_system(), 0, 1, DIGITS, jets=False)
    assert abs(pair.R_value - tf_single.R_value) < 1e-8
    assert abs(tf_single.R_value - R_TF) < 1e-5


def test_char_method_arity():
    with pytest.raises(ValueError):
        char_single(build_triangle_network_system(), 0, 1, DIGITS)
    with pytest.raises(ValueError):
        char_pair(build_triangle_free_s3_equation(), 0, 1, DIGITS)


def test_radius_is_continuous_in_y(tf_single):
    moved = char_single(build_triangle_free_s3_equation(), 0, 1 + mpmath.mpf("1e-6"), DIGITS, jets=False)
    assert abs(moved.R_value - tf_single.R_value) < 1e-4


def test_u_one_radius_shared_by_markings():
    tri = char_pair(build_triangle_network_system(), 1, 1, DIGITS, jets=False)
    sq = char_multi_det(build_c4_network_system(), 1, 1, DIGITS, jets=False)
    assert abs(tri.R_value - sq.R_value) < 1e-6
    assert abs(tri.R_value - R_SP) < 1e-4


def test_girth4_radius_is_triangle_free(tf_single):
    assert abs(family_radius("girth(4)", DIGITS).R_value - tf_single.R_value) < 1e-8


def test_girth_radius_increases_with_k():
    radii = [family_radius(f"girth({k})", DIGITS).R_value for k in (4, 5, 6)]
    assert radii == sorted(radii)


def test_ratio_estimate_tracks_radius(tf_single):
    with mpmath.workdps(DIGITS):
        nets = solve_fixed_point(build_triangle_network_system(), 60, BigFloat(DIGITS), y=1, u=0)
        a = [nets.D.coefficient(n) for n in range(61)]
        R = tf_single.R_value
        assert abs(ratio_estimate(a) - R) / R < 5e-2
        # Domb-Sykes: n r_n - (n-1) r_{n-1} removes the 1/n drift of the ratios
        r = lambda n: a[n] / a[n - 1]
        assert abs(1 / (60 * r(60) - 59 * r(59)) - R) / R < 1e-3
        with pytest.raises(ValueError):
            ratio_estimate([0, 0, 1])


def test_recheck_residual(tf_single):
    assert recheck_residual(tf_single) < mpmath.mpf(10) ** -(DIGITS // 2)


def test_to_json_carries_full_precision(tf_single):
    doc = tf_single.to_json()
    assert len(doc["R"].replace("0.", "", 1)) >= DIGITS - 2
    assert "R_u" not in doc
    with_jets = char_pair(build_triangle_network_system(), 1, 1, DIGITS, jets=True)
    assert {"R_u", "R_uu"} <= set(with_jets.to_json())


def test_transfer_constant():
    with mpmath.workdps(DIGITS):
        exp3 = SingularExpansion("F", mpmath.mpf("0.2"), (mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(-2), mpmath.mpf(4)), DIGITS)
        const = transfer_constant(exp3)
        assert abs(const.value - 4 * 3 / (4 * mpmath.sqrt(mpmath.pi))) < 1e-25
        assert const.exponent == mpmath.mpf(-5) / 2
        exp1 = SingularExpansion("F", mpmath.mpf("0.2"), (mpmath.mpf(1), mpmath.mpf(1)), DIGITS)
        assert abs(transfer_constant(exp1).value + 1 / (2 * mpmath.sqrt(mpmath.pi))) < 1e-25
        flat = SingularExpansion("F", mpmath.mpf("0.2"), (mpmath.mpf(1), 0, mpmath.mpf(2), 0), DIGITS)
        with pytest.raises(SingularExpansionError):
            transfer_constant(flat)


def test_unmarked_radius_has_no_moments():
    with mpmath.workdps(DIGITS):
        R = Jet((mpmath.mpf("0.2"), mpmath.mpf(0), mpmath.mpf(0)), "u")
        cp = CharPoint("dummy", "single", R, {}, Jet((mpmath.mpf(1), 1, 0), "u"), mpmath.mpf(1), 0, DIGITS)
        report = moments_from_radius(cp)
        assert report.mu == 0 and report.sigma2 == 0
        flat = CharPoint("dummy", "single", mpmath.mpf("0.2"), {}, 1, 1, 0, DIGITS)
        with pytest.raises(ValueError):
            moments_from_radius(flat)


def test_quasi_powers_without_u_dependence():
    p = {"F_x": mpmath.mpf(2), "F_u": 0, "F_yy": mpmath.mpf(3), "F_uu": 0, "F_yu": 0,
         "F_xu": 0, "F_yx": mpmath.mpf(1), "F_xx": mpmath.mpf(5)}
    report = quasi_powers_moments(p, mpmath.mpf("0.1"))
    assert report.mu == 0 and report.sigma2 == 0


def test_linalg_matches_mpmath():
    with mpmath.workdps(DIGITS):
        A = [[mpmath.mpf(v) for v in row] for row in ([0, 2, 1], [3, -1, 4], [1, 1, 1])]
        b = [mpmath.mpf(v) for v in (1, 2, 3)]
        z = lu_solve(A, b)
        ref = mpmath.lu_solve(mpmath.matrix(A), mpmath.matrix(b))
        assert max(abs(z[i] - ref[i]) for i in range(3)) < 1e-25
        assert abs(det(A) - mpmath.det(mpmath.matrix(A))) < 1e-25
        with pytest.raises(SingularMatrixError):
            lu_solve([[1, 2], [2, 4]], [1, 1])
        assert det([[1, 2], [2, 4]]) == 0


def test_scalar_newton():
    with mpmath.workdps(DIGITS):
        z, res, _ = newton(lambda w: [w[0] * w[0] - 2], [mpmath.mpf(1)], mpmath.mpf(10) ** -25)
        assert abs(z[0] - mpmath.sqrt(2)) < 1e-25


@pytest.mark.slow
def test_triangle_free_constants_are_consistent():
    fc = family_constants("triangle_free", DIGITS)
    assert fc.cross_checks["R_pair_minus_single"] < 1e-8
    assert fc.cross_checks["C_rho_quadrature_minus_closed"] < 1e-12
    conn = fc.connected
    assert abs(conn.g.value / conn.c.value - mpmath.exp(conn.C_rho)) < 1e-20
    assert abs(fc.b.value - fc.expansions["B"][3] * 3 / (4 * mpmath.sqrt(mpmath.pi))) < 1e-20
