"""Finite-difference engine tests.

Independent oracles:
  * a dense characteristic-polynomial root finder (leading principal minor
    recurrence + polynomial root extraction) for small tridiagonals,
  * the classical Sturm sequence q_r = det(t I - T_r), whose count of
    consecutive sign agreements must equal the solver's pivot count,
  * the closed-form spectra as eigenvalue targets.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from dipolandau.fields import DipoleFieldConfig, Model
from dipolandau.numeric import (
    EigenSolution,
    RadialGrid,
    TridiagonalMatrix,
    analytic_eigenvalue,
    convergence_study,
    discretize_radial,
    grid_for_channel,
    hamiltonian_matrix_elements,
    numeric_spectrum,
    relative_eigenvalue_error,
    sturm_count_below,
    tridiagonal_eigenvalues,
    turning_radius,
)
from dipolandau.spectra import QuantumNumbers
from dipolandau.wavefn import radial_eigenfunction


def make_config(model=Model.HMW, mass=1.0, dipole=1.0, density=1.0, sigma=1):
    return DipoleFieldConfig(model=model, mass=mass, dipole_moment=dipole,
                             source_density=density, sigma=sigma)


def dense_charpoly_eigenvalues(diag, off):
    """Roots of det(T - x I) via the principal-minor recurrence."""
    polymul = np.polynomial.polynomial.polymul
    p_prev = np.array([1.0])
    p_curr = np.array([diag[0], -1.0])
    for i in range(1, len(diag)):
        step = polymul(np.array([diag[i], -1.0]), p_curr)
        step[: len(p_prev)] -= off[i - 1] ** 2 * p_prev
        p_prev, p_curr = p_curr, step
    roots = np.polynomial.polynomial.polyroots(p_curr)
    assert np.max(np.abs(roots.imag)) < 1e-10
    return np.sort(roots.real)


def sturm_sign_agreements(diag, off, t):
    """Sign agreements between consecutive q_r = det(t I - T_r), q_0 = 1.

    A vanishing member takes the sign opposite to its predecessor. The
    sequence is rescaled on the fly; only signs matter.
    """
    agreements = 0
    sign_prev = 1.0
    q_prev = 1.0
    q_curr = t - diag[0]
    n = len(diag)
    for r in range(1, n + 1):
        sign_curr = math.copysign(1.0, q_curr) if q_curr != 0.0 else -sign_prev
        if sign_curr == sign_prev:
            agreements += 1
        if r == n:
            break
        q_next = (t - diag[r]) * q_curr - off[r - 1] ** 2 * q_prev
        scale = max(abs(q_next), abs(q_curr))
        if scale > 1e100:
            q_next /= scale
            q_curr /= scale
        q_prev, q_curr = q_curr, q_next
        sign_prev = sign_curr
    return agreements


def count_sign_changes(values, rel_floor=1e-8):
    values = np.asarray(values)
    keep = np.abs(values) > rel_floor * np.max(np.abs(values))
    signs = np.sign(values[keep])
    return int(np.sum(signs[1:] != signs[:-1]))


class TestRadialGrid:
    def test_r_max_and_points(self):
        grid = RadialGrid(step=0.5, n_points=10)
        assert grid.r_max == 5.5
        points = grid.points()
        assert len(points) == 10
        assert points[0] == 0.5
        assert points[-1] == 5.0

    def test_validation(self):
        with pytest.raises(ValueError):
            RadialGrid(step=0.0, n_points=100)
        with pytest.raises(ValueError):
            RadialGrid(step=0.1, n_points=9)

    def test_factory_default_extent(self):
        grid = grid_for_channel(make_config(), ell=2, nu_max=4)
        assert grid.r_max == pytest.approx(20.0)
        assert grid.n_points == 4000

    def test_factory_rejects_short_grid(self):
        # turning radius for nu=4, |l|=2 is sqrt(22) ~ 4.69
        with pytest.raises(ValueError):
            grid_for_channel(make_config(), ell=2, nu_max=4, r_max=4.0)

    def test_turning_radius_formula(self):
        assert turning_radius(1.0, 0, 0) == pytest.approx(math.sqrt(2.0))
        assert turning_radius(2.0, 3, -2) == pytest.approx(2.0 * math.sqrt(18.0))


class TestDiscretization:
    def test_uniform_off_diagonal(self):
        config = make_config(mass=2.0)
        grid = grid_for_channel(config, ell=1, nu_max=0, r_max=10.0, n_points=50)
        matrix = discretize_radial(config, 1, grid)
        expected = -1.0 / (2.0 * 2.0 * grid.step**2)
        assert np.all(matrix.off_diagonal == expected)
        assert len(matrix.off_diagonal) == 49

    def test_potential_terms_at_unit_radius(self):
        # hand-assembled: (1 - 1/4)/2 + 1/8 + 1/2 - 1/2 = 0.5 for l=1, sigma=+1
        config = make_config(Model.HMW, sigma=1)
        grid = RadialGrid(step=0.01, n_points=1999)  # node 100 sits at r = 1
        matrix = discretize_radial(config, 1, grid)
        r = grid.points()[99]
        assert r == pytest.approx(1.0, rel=1e-15)
        potential = matrix.diagonal[99] - 1.0 / grid.step**2
        assert potential == pytest.approx(0.5, rel=1e-12)

    def test_l0_potential_at_unit_radius(self):
        # naive hand assembly gives -1/8 + 1/8 + 0 - 1/2 = -0.5; the regularized
        # l = 0 centrifugal term shifts it by O(h^2)
        config = make_config(Model.HMW, sigma=1)
        grid = RadialGrid(step=0.01, n_points=1999)
        matrix = discretize_radial(config, 0, grid)
        potential = matrix.diagonal[99] - 1.0 / grid.step**2
        assert potential == pytest.approx(-0.5, abs=5e-6)

    def test_tiny_frequency_assembly(self):
        # with omega ~ 1e-8 the diagonal is kinetic + centrifugal to a few percent
        config = make_config(dipole=1e-8)
        omega = 1e-8
        grid = grid_for_channel(config, ell=1, nu_max=0, r_max=2.5e4, n_points=12)
        matrix = discretize_radial(config, 1, grid)
        h = grid.step
        r1 = grid.points()[0]
        kinetic = 1.0 / h**2
        centrifugal = (1.0 - 0.25) / (2.0 * r1**2)
        oscillator = omega**2 * r1**2 / 8.0
        shifts = 1 * omega / 2.0 - omega / 2.0
        assert matrix.diagonal[0] == pytest.approx(
            kinetic + centrifugal + oscillator + shifts, rel=1e-14
        )
        rest = abs(matrix.diagonal[0] - kinetic - centrifugal)
        assert rest < 0.05 * (kinetic + centrifugal)

    def test_rejects_grid_below_turning_radius(self):
        config = make_config()
        short = RadialGrid(step=0.05, n_points=20)  # r_max = 1.05 < sqrt(2)
        with pytest.raises(ValueError):
            discretize_radial(config, 0, short)

    def test_duality_matrices_entry_identical(self):
        grid = RadialGrid(step=0.05, n_points=200)
        for ell in (-2, 0, 1, 3):
            for sigma in (1, -1):
                hmw = discretize_radial(make_config(Model.HMW, sigma=sigma), ell, grid)
                lac = discretize_radial(make_config(Model.LAC, sigma=-sigma), ell, grid)
                assert np.array_equal(hmw.diagonal, lac.diagonal)
                assert np.array_equal(hmw.off_diagonal, lac.off_diagonal)

    def test_matrix_shape_validation(self):
        with pytest.raises(ValueError):
            TridiagonalMatrix(np.ones(5), np.ones(5))


class TestTridiagonalEigenvalues:
    def test_two_by_two_analytic(self):
        matrix = TridiagonalMatrix(np.array([2.0, 2.0]), np.array([1.0]))
        values = tridiagonal_eigenvalues(matrix, 2)
        assert values[0] == pytest.approx(1.0, abs=1e-12)
        assert values[1] == pytest.approx(3.0, abs=1e-12)

    def test_diagonal_matrix_multiplicity(self):
        matrix = TridiagonalMatrix(np.array([5.0, 5.0, 5.0]), np.array([0.0, 0.0]))
        values = tridiagonal_eigenvalues(matrix, 3)
        assert values == pytest.approx([5.0, 5.0, 5.0], abs=1e-12)

    def test_six_by_six_against_dense_oracle(self):
        diag = np.arange(1.0, 7.0)
        off = np.ones(5)
        matrix = TridiagonalMatrix(diag, off)
        values = tridiagonal_eigenvalues(matrix, 6)
        expected = dense_charpoly_eigenvalues(diag, off)
        assert values == pytest.approx(expected, abs=1e-10)

    def test_rejects_bad_counts(self):
        matrix = TridiagonalMatrix(np.array([1.0, 2.0]), np.array([0.5]))
        with pytest.raises(ValueError):
            tridiagonal_eigenvalues(matrix, 3)
        with pytest.raises(ValueError):
            tridiagonal_eigenvalues(matrix, 0)

    def test_pivot_count_matches_sturm_sign_agreements(self):
        config = make_config(Model.HMW, sigma=-1)
        grid = RadialGrid(step=0.1, n_points=150)
        matrix = discretize_radial(config, 1, grid)
        diag = matrix.diagonal
        off = matrix.off_diagonal
        rng = np.random.default_rng(20240911)
        lo = float(np.min(diag)) - 2.0 * float(np.max(np.abs(off)))
        hi = float(np.max(diag)) + 2.0 * float(np.max(np.abs(off)))
        for _ in range(10):
            t = float(rng.uniform(lo, hi))
            assert sturm_count_below(matrix, t) == sturm_sign_agreements(diag, off, t)


class TestNumericSpectrum:
    @pytest.mark.parametrize("model,ell,sigma,expected", [
        (Model.HMW, 0, -1, [1.0, 2.0, 3.0]),
        (Model.HMW, 2, 1, [2.0, 3.0, 4.0]),
        (Model.LAC, 2, -1, [2.0, 3.0, 4.0]),
    ])
    def test_landau_channels_at_production_resolution(self, model, ell, sigma, expected):
        config = make_config(model, sigma=sigma)
        grid = grid_for_channel(config, ell, nu_max=2, r_max=20.0, n_points=4000)
        solution = numeric_spectrum(config, ell, grid, 3)
        for lam, target in zip(solution.eigenvalues, expected):
            assert relative_eigenvalue_error(lam, target, 1.0) < 1e-4

    def test_analytic_eigenvalue_helper(self):
        config = make_config(Model.HMW, sigma=-1)
        assert analytic_eigenvalue(config, nu=0, ell=0) == 1.0
        assert analytic_eigenvalue(config, nu=2, ell=2) == 3.0

    def test_eigenvector_node_counts(self):
        config = make_config(Model.HMW, sigma=1)
        grid = grid_for_channel(config, ell=1, nu_max=3, r_max=20.0, n_points=1500)
        solution = numeric_spectrum(config, 1, grid, 4, eigenvectors=True)
        assert solution.eigenvectors is not None
        for j, vec in enumerate(solution.eigenvectors):
            assert count_sign_changes(vec) == j

    def test_eigenvector_discrete_normalization(self):
        config = make_config(Model.HMW, sigma=-1)
        grid = grid_for_channel(config, ell=0, nu_max=1, r_max=20.0, n_points=1200)
        solution = numeric_spectrum(config, 0, grid, 2, eigenvectors=True)
        r = grid.points()
        for vec in solution.eigenvectors:
            norm = np.sum(vec * vec * r) * grid.step
            assert norm == pytest.approx(1.0, rel=1e-12)

    def test_eigenvectors_match_analytic_radial_functions(self):
        config = make_config(Model.HMW, sigma=1)
        grid = grid_for_channel(config, ell=2, nu_max=1, r_max=20.0, n_points=2000)
        solution = numeric_spectrum(config, 2, grid, 2, eigenvectors=True)
        r = grid.points()
        for nu, vec in enumerate(solution.eigenvectors):
            exact = radial_eigenfunction(QuantumNumbers(nu, 2, 1), 1.0)(r)
            if np.dot(vec, exact) < 0:
                exact = -exact
            assert np.max(np.abs(vec - exact)) < 5e-4

    def test_convergence_metadata(self):
        config = make_config(Model.HMW, sigma=-1)
        grid = grid_for_channel(config, ell=1, nu_max=0, r_max=15.0, n_points=500)
        solution = numeric_spectrum(config, 1, grid, 1, eigenvectors=True)
        assert len(solution.residuals) == 1
        assert len(solution.iterations) == 1
        assert solution.residuals[0] < 1e-8
        assert 1 <= solution.iterations[0] <= 50

    def test_rejects_grid_too_short_for_requested_levels(self):
        config = make_config()
        grid = RadialGrid(step=4.0 / 101, n_points=100)  # r_max = 4 < sqrt(18 + 4)
        discretize_radial(config, 2, grid)  # fine for the ground level
        with pytest.raises(ValueError):
            numeric_spectrum(config, 2, grid, 5)

    def test_concurrent_channel_solves_match_serial(self):
        config = make_config(Model.HMW, sigma=1)
        channels = [(-2, 3), (-1, 3), (1, 3), (2, 3)]
        grids = {ell: grid_for_channel(config, ell, nu_max=2, r_max=18.0, n_points=600)
                 for ell, _ in channels}
        serial = [numeric_spectrum(config, ell, grids[ell], k).eigenvalues
                  for ell, k in channels]
        with ThreadPoolExecutor(max_workers=4) as pool:
            parallel = list(pool.map(
                lambda item: numeric_spectrum(config, item[0], grids[item[0]], item[1]).eigenvalues,
                channels,
            ))
        assert parallel == serial

    def test_eigen_solution_requires_ascending_values(self):
        grid = RadialGrid(step=0.1, n_points=10)
        with pytest.raises(ValueError):
            EigenSolution(
                eigenvalues=(2.0, 1.0), grid=grid, ell=0, sigma=1,
                omega=1.0, mass=1.0, model=Model.HMW,
            )


class TestHamiltonianMatrixElements:
    def test_analytic_basis_diagonalizes(self):
        config = make_config(Model.HMW, sigma=1)
        basis = [radial_eigenfunction(QuantumNumbers(nu, 1, 1), 1.0) for nu in range(3)]
        matrix = hamiltonian_matrix_elements(config, 1, basis)
        diag = np.diag(matrix)
        assert diag == pytest.approx([1.0, 2.0, 3.0], abs=1e-6)
        off = matrix - np.diag(diag)
        assert np.max(np.abs(off)) < 1e-6

    def test_single_ground_state(self):
        config = make_config(Model.HMW, sigma=1)
        basis = [radial_eigenfunction(QuantumNumbers(0, 0, 1), 1.0)]
        matrix = hamiltonian_matrix_elements(config, 0, basis)
        assert matrix.shape == (1, 1)
        assert abs(matrix[0, 0]) < 1e-6

    def test_matrix_symmetry(self):
        config = make_config(Model.LAC, sigma=-1)
        basis = [radial_eigenfunction(QuantumNumbers(nu, 2, -1), 1.0) for nu in range(3)]
        matrix = hamiltonian_matrix_elements(config, 2, basis)
        assert np.max(np.abs(matrix - matrix.T)) < 1e-8

    def test_rejects_mixed_angular_numbers(self):
        config = make_config()
        basis = [
            radial_eigenfunction(QuantumNumbers(0, 1, 1), 1.0),
            radial_eigenfunction(QuantumNumbers(0, 2, 1), 1.0),
        ]
        with pytest.raises(ValueError):
            hamiltonian_matrix_elements(config, 1, basis)

    def test_rejects_inconsistent_length_scale(self):
        config = make_config()
        basis = [radial_eigenfunction(QuantumNumbers(0, 1, 1), 2.0)]
        with pytest.raises(ValueError):
            hamiltonian_matrix_elements(config, 1, basis)

    def test_rejects_empty_basis(self):
        with pytest.raises(ValueError):
            hamiltonian_matrix_elements(make_config(), 0, [])


class TestConvergenceStudy:
    def test_second_order_for_l2_channel(self):
        config = make_config(Model.HMW, sigma=1)
        grids = [grid_for_channel(config, 2, nu_max=2, r_max=20.0, n_points=n)
                 for n in (400, 801, 1603)]
        study = convergence_study(config, 2, 3, grids)
        assert len(study.rows) == 3
        for coarse, fine in zip(study.rows, study.rows[1:]):
            ratio = coarse.max_rel_error / fine.max_rel_error
            assert 3.2 < ratio < 4.8
        for order in study.orders:
            assert order == pytest.approx(2.0, abs=0.32)

    def test_l0_channel_order_is_measured_as_is(self):
        # the sqrt(r)-consistent l = 0 diagonal restores clean second order
        config = make_config(Model.HMW, sigma=-1)
        grids = [grid_for_channel(config, 0, nu_max=1, r_max=20.0, n_points=n)
                 for n in (400, 801, 1603)]
        study = convergence_study(config, 0, 2, grids)
        for order in study.orders:
            assert order == pytest.approx(2.0, abs=0.35)

    def test_rejects_too_few_grids(self):
        config = make_config()
        grids = [grid_for_channel(config, 2, nu_max=1, r_max=20.0, n_points=n)
                 for n in (200, 401)]
        with pytest.raises(ValueError):
            convergence_study(config, 2, 2, grids)

    def test_rejects_repeated_grid(self):
        config = make_config()
        grid = grid_for_channel(config, 2, nu_max=1, r_max=20.0, n_points=300)
        finer = grid_for_channel(config, 2, nu_max=1, r_max=20.0, n_points=601)
        with pytest.raises(ValueError):
            convergence_study(config, 2, 2, [grid, grid, finer])


class TestRelativeError:
    def test_standard_relative(self):
        assert relative_eigenvalue_error(2.0002, 2.0, 1.0) == pytest.approx(1e-4)

    def test_zero_level_uses_spacing_scale(self):
        assert relative_eigenvalue_error(1e-5, 0.0, 1.0) == pytest.approx(1e-5)
