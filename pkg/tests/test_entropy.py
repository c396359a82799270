"""Spectral entropy functionals: compressions, conditioning, pinching."""

import math

import numpy as np
import pytest

from qce import (
    DensityMatrix,
    DimMismatch,
    IdentityResolution,
    NotApplicable,
    NotCommuting,
    NotPSD,
    Projector,
    ZeroCompression,
    block_distribution,
    classical_entropy,
    compressed_entropy,
    compressed_state,
    conditional_entropy,
    conditional_entropy_commuting,
    conditional_entropy_flat,
    conditional_entropy_given_blocks,
    information_gain,
    joint_entropy,
    pinch,
    random_density,
    random_unitary,
    relative_entropy,
    self_conditional_entropy,
    self_information_gain,
    spectrum_distribution,
    unnormalized_compressed_entropy,
    von_neumann_entropy,
)

LN2 = math.log(2.0)


def h(*w):
    """Shannon entropy of an explicit list, the entropy oracle for diagonals."""
    return float(-sum(x * math.log(x) for x in w if x > 0.0))


def rotated(diag_vals, theta):
    c, s = np.cos(theta), np.sin(theta)
    u = np.array([[c, -s], [s, c]])
    return DensityMatrix(u @ np.diag(diag_vals) @ u.T)


# ---------------------------------------------------------------- entropy


def test_entropy_pure_state_zero():
    assert von_neumann_entropy(DensityMatrix.pure([1.0, 0.0])) == 0.0
    v = np.array([1.0, 1.0j]) / np.sqrt(2)
    assert von_neumann_entropy(DensityMatrix.pure(v)) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4, 7])
def test_entropy_maximally_mixed(dim):
    rho = DensityMatrix.maximally_mixed(dim)
    assert von_neumann_entropy(rho) == pytest.approx(math.log(dim), abs=1e-12)


def test_entropy_oracle_values():
    assert von_neumann_entropy(DensityMatrix.diagonal([0.9, 0.1])) == pytest.approx(
        h(0.9, 0.1)
    )
    assert von_neumann_entropy(DensityMatrix.diagonal([0.9, 0.1])) == pytest.approx(
        0.325083, abs=5e-7
    )
    assert von_neumann_entropy(DensityMatrix.diagonal([0.7, 0.3])) == pytest.approx(
        0.610864, abs=5e-7
    )


def test_entropy_unitary_invariant():
    rho = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    u = random_unitary(3, seed=11)
    moved = DensityMatrix(u @ rho.mat @ u.conj().T)
    assert von_neumann_entropy(moved) == pytest.approx(
        von_neumann_entropy(rho), abs=1e-12
    )


def test_entropy_clamps_roundoff():
    rho = DensityMatrix(np.diag([1.0 + 5e-11, -5e-11]))
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)


# ------------------------------------------------------- relative entropy


def test_relative_entropy_of_state_with_itself():
    rho = np.diag([0.7, 0.3])
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_oracle():
    val = relative_entropy(np.diag([0.7, 0.3]), np.diag([0.5, 0.5]))
    assert val == pytest.approx(0.7 * math.log(1.4) + 0.3 * math.log(0.6))
    assert val == pytest.approx(0.082283, abs=5e-7)


def test_relative_entropy_disjoint_supports():
    assert relative_entropy(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == math.inf


def test_relative_entropy_homogeneous_in_scale():
    a = np.diag([0.6, 0.2])
    b = np.diag([0.3, 0.5])
    assert relative_entropy(2.0 * a, 2.0 * b) == pytest.approx(
        2.0 * relative_entropy(a, b)
    )


def test_relative_entropy_nonnegative_on_states():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = random_density(3, seed=int(rng.integers(1 << 30))).mat
        b = random_density(3, seed=int(rng.integers(1 << 30))).mat
        assert relative_entropy(a, b) >= -1e-10


def test_relative_entropy_rejects_negative_operand():
    with pytest.raises(NotPSD):
        relative_entropy(np.diag([1.5, -0.5]), np.eye(2))
    with pytest.raises(DimMismatch):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


# ------------------------------------------------------ block compression

RHO3 = DensityMatrix.diagonal([0.5, 0.25, 0.25])
Q01 = Projector.coordinate(3, [0, 1])


def test_compressed_entropy_rank_one_vanishes():
    rho = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    for k in range(3):
        assert compressed_entropy(rho, Projector.coordinate(3, [k])) == 0.0


def test_compressed_entropy_identity_is_entropy():
    rho = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    assert compressed_entropy(rho, Projector.identity(3)) == pytest.approx(
        von_neumann_entropy(rho), abs=1e-12
    )


def test_compressed_entropy_oracle():
    # t = 3/4 and the normalized block is diag(2/3, 1/3).
    val = compressed_entropy(RHO3, Q01)
    assert val == pytest.approx(0.75 * h(2.0 / 3.0, 1.0 / 3.0), abs=1e-12)
    assert val == pytest.approx(0.477386, abs=5e-7)


def test_compressed_entropy_two_formulas_agree():
    t = 0.75
    mu = np.array([0.5, 0.25])
    direct = t * math.log(t) - float(np.sum(mu * np.log(mu)))
    assert compressed_entropy(RHO3, Q01) == pytest.approx(direct, abs=1e-12)
    state = compressed_state(RHO3, Q01)
    assert compressed_entropy(RHO3, Q01) == pytest.approx(
        t * von_neumann_entropy(state), abs=1e-12
    )


def test_compressed_entropy_relative_entropy_form():
    # Third route: minus the relative entropy of QrhoQ with respect to t Q.
    q = Q01
    c = q.mat @ RHO3.mat @ q.mat
    t = float(np.trace(c).real)
    assert compressed_entropy(RHO3, q) == pytest.approx(
        -relative_entropy(c, t * q.mat), abs=1e-10
    )


def test_compressed_entropy_vanishing_mass_is_zero():
    rho = DensityMatrix.diagonal([1.0, 0.0, 0.0])
    assert compressed_entropy(rho, Projector.coordinate(3, [1, 2])) == 0.0


def test_unnormalized_variant_oracle():
    # -tr(x ln x) over the block spectrum (0.5, 0.25): exactly ln 2.
    val = unnormalized_compressed_entropy(RHO3, Q01)
    assert val == pytest.approx(LN2, abs=1e-12)


def test_unnormalized_variant_dominates():
    rng = np.random.default_rng(3)
    for _ in range(10):
        rho = random_density(4, seed=int(rng.integers(1 << 30)))
        q = Projector.coordinate(4, [0, 2])
        assert unnormalized_compressed_entropy(rho, q) >= compressed_entropy(
            rho, q
        ) - 1e-12


def test_unnormalized_variant_identity_is_entropy():
    rho = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    assert unnormalized_compressed_entropy(
        rho, Projector.identity(3)
    ) == pytest.approx(von_neumann_entropy(rho), abs=1e-12)


def test_unnormalized_variant_can_exceed_entropy():
    # Rank-one compression of a pure state carries entropy mass even though
    # the state has none; this is why the t ln t correction matters.
    plus = DensityMatrix.pure(np.array([1.0, 1.0]) / np.sqrt(2))
    q = Projector.coordinate(2, [0])
    assert unnormalized_compressed_entropy(plus, q) == pytest.approx(0.5 * LN2)
    assert von_neumann_entropy(plus) == pytest.approx(0.0, abs=1e-12)


def test_compressed_state_values():
    state = compressed_state(RHO3, Q01)
    np.testing.assert_allclose(
        state.mat, np.diag([2.0 / 3.0, 1.0 / 3.0, 0.0]), atol=1e-12
    )
    np.testing.assert_allclose(
        compressed_state(RHO3, Projector.identity(3)).mat, RHO3.mat, atol=1e-12
    )


def test_compressed_state_zero_mass_raises():
    rho = DensityMatrix.diagonal([1.0, 0.0, 0.0])
    with pytest.raises(ZeroCompression, match="support tolerance"):
        compressed_state(rho, Projector.coordinate(3, [1, 2]))


# --------------------------------------------------- conditional entropy


def test_conditioning_on_maximally_mixed_gives_entropy():
    rho = rotated([0.8, 0.2], 0.4)
    total = conditional_entropy(rho, DensityMatrix.maximally_mixed(2)).total
    assert total == pytest.approx(von_neumann_entropy(rho), abs=1e-12)


def test_conditioning_on_nondegenerate_state_is_zero():
    rho = rotated([0.8, 0.2], 0.4)
    sigma = DensityMatrix.diagonal([0.6, 0.4])
    assert conditional_entropy(rho, sigma).total == 0.0


def test_conditional_entropy_oracle():
    rho = DensityMatrix.diagonal([0.9, 0.1])
    total = conditional_entropy(rho, DensityMatrix.maximally_mixed(2)).total
    assert total == pytest.approx(0.325083, abs=5e-7)


def test_pure_state_has_zero_conditional_entropy():
    plus = DensityMatrix.pure(np.array([1.0, 1.0]) / np.sqrt(2))
    for sigma in (
        DensityMatrix.maximally_mixed(2),
        DensityMatrix.diagonal([0.75, 0.25]),
        plus,
    ):
        assert conditional_entropy(plus, sigma).total == pytest.approx(0.0, abs=1e-12)


def test_conditional_entropy_orthogonal_supports():
    rho = DensityMatrix.diagonal([1.0, 0.0])
    sigma = DensityMatrix.diagonal([0.0, 1.0])
    assert conditional_entropy(rho, sigma).total == 0.0


def test_breakdown_total_matches_terms():
    rho = random_density(4, rank=4, seed=2)
    sigma = DensityMatrix.diagonal([0.4, 0.4, 0.1, 0.1])
    bd = conditional_entropy(rho, sigma)
    recomputed = sum(term.weight * term.factor for term in bd.per_block)
    assert bd.total == pytest.approx(recomputed, abs=1e-14)
    assert len(bd.per_block) == 2


def test_conditional_entropy_unitary_invariant():
    rho = random_density(3, seed=8)
    sigma = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    u = random_unitary(3, seed=9)
    moved = conditional_entropy(
        DensityMatrix(u @ rho.mat @ u.conj().T),
        DensityMatrix(u @ sigma.mat @ u.conj().T),
    ).total
    assert moved == pytest.approx(conditional_entropy(rho, sigma).total, abs=1e-10)


def test_conditional_entropy_bounded_by_entropy():
    rng = np.random.default_rng(17)
    for _ in range(25):
        rho = random_density(3, seed=int(rng.integers(1 << 30)))
        sigma = random_density(3, seed=int(rng.integers(1 << 30)))
        val = conditional_entropy(rho, sigma).total
        assert -1e-12 <= val <= von_neumann_entropy(rho) + 1e-9


def test_conditional_entropy_concave_in_rho():
    sigma = DensityMatrix.diagonal([0.5, 0.5, 0.0])
    r1 = random_density(3, seed=21)
    r2 = random_density(3, seed=22)
    for lam in (0.25, 0.5, 0.75):
        mix = DensityMatrix(lam * r1.mat + (1 - lam) * r2.mat)
        lhs = conditional_entropy(mix, sigma).total
        rhs = lam * conditional_entropy(r1, sigma).total + (
            1 - lam
        ) * conditional_entropy(r2, sigma).total
        assert lhs >= rhs - 1e-9


def test_strictly_smaller_than_entropy_off_the_trivial_case():
    # Any nondegenerate conditioning state gives 0, strictly below the
    # entropy of a genuinely mixed state.
    rho = rotated([0.8, 0.2], 1.0)
    sigma = DensityMatrix.diagonal([0.9, 0.1])
    assert (
        conditional_entropy(rho, sigma).total
        < von_neumann_entropy(rho) - 1e-12
    )


# ------------------------------------------------- self conditioning


def test_self_conditioning_nondegenerate_zero():
    assert self_conditional_entropy(DensityMatrix.diagonal([0.5, 0.3, 0.2])) == 0.0


def test_self_conditioning_closed_form():
    rho = DensityMatrix.diagonal([0.5, 0.5, 0.0])
    assert self_conditional_entropy(rho) == pytest.approx(LN2, abs=1e-12)
    mixed = DensityMatrix.maximally_mixed(4)
    assert self_conditional_entropy(mixed) == pytest.approx(math.log(4), abs=1e-12)


def test_self_conditioning_matches_general_formula():
    rho = DensityMatrix.diagonal([0.4, 0.4, 0.2])
    expected = (0.8) ** 2 * LN2
    assert self_conditional_entropy(rho) == pytest.approx(expected, abs=1e-12)
    assert conditional_entropy(rho, rho).total == pytest.approx(expected, abs=1e-12)


def test_self_information_gain_consistency():
    rho = DensityMatrix.diagonal([0.4, 0.4, 0.2])
    assert self_information_gain(rho) == pytest.approx(
        von_neumann_entropy(rho) - self_conditional_entropy(rho), abs=1e-12
    )


# ---------------------------------------------------------- fast paths


def test_flat_path_matches_general_on_mixed_state():
    sigma = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    rho = DensityMatrix.maximally_mixed(3)
    assert conditional_entropy_flat(rho, sigma) == pytest.approx(
        conditional_entropy(rho, sigma).total, abs=1e-12
    )


def test_flat_path_orthogonal_supports():
    rho = DensityMatrix.diagonal([1.0, 0.0])
    sigma = DensityMatrix.diagonal([0.0, 1.0])
    assert conditional_entropy_flat(rho, sigma) == 0.0


def test_flat_path_rejects_structureless_block():
    rho = rotated([0.8, 0.2], 0.3)
    with pytest.raises(NotApplicable, match="projector multiple"):
        conditional_entropy_flat(rho, DensityMatrix.maximally_mixed(2))


def test_commuting_path_matches_general():
    rho = DensityMatrix.diagonal([0.6, 0.3, 0.1])
    sigma = DensityMatrix.diagonal([0.5, 0.25, 0.25])
    assert conditional_entropy_commuting(rho, sigma) == pytest.approx(
        conditional_entropy(rho, sigma).total, abs=1e-10
    )


def test_commuting_path_asymmetry_witness():
    rho = DensityMatrix.diagonal([0.5, 0.5, 0.0])
    sigma = DensityMatrix.maximally_mixed(3)
    forward = conditional_entropy_commuting(rho, sigma)
    backward = conditional_entropy_commuting(sigma, rho)
    assert forward == pytest.approx(LN2, abs=1e-12)
    assert backward == pytest.approx((2.0 / 3.0) * LN2, abs=1e-12)
    assert backward == pytest.approx(0.462098, abs=5e-7)
    assert abs(forward - backward) > 0.2


def test_commuting_path_rejects_noncommuting():
    rho = rotated([0.8, 0.2], 0.5)
    sigma = DensityMatrix.diagonal([0.7, 0.3])
    with pytest.raises(NotCommuting, match="commute"):
        conditional_entropy_commuting(rho, sigma)


def test_given_blocks_trivial_resolution():
    rho = DensityMatrix.diagonal([0.5, 0.3, 0.2])
    res = IdentityResolution([Projector.identity(3)])
    assert conditional_entropy_given_blocks(rho, res) == pytest.approx(
        von_neumann_entropy(rho), abs=1e-12
    )


def test_given_blocks_rank_one_resolution():
    rho = random_density(3, seed=4)
    res = IdentityResolution.coordinate(3, [1, 1, 1])
    assert conditional_entropy_given_blocks(rho, res) == 0.0


def test_given_blocks_weighted_by_normalized_rank():
    rho = DensityMatrix.diagonal([0.5, 0.25, 0.25, 0.0])
    res = IdentityResolution.coordinate(4, [2, 2])
    f1 = compressed_entropy(rho, Projector.coordinate(4, [0, 1]))
    f2 = compressed_entropy(rho, Projector.coordinate(4, [2, 3]))
    expected = 0.5 * f1 + 0.5 * f2
    assert conditional_entropy_given_blocks(rho, res) == pytest.approx(
        expected, abs=1e-12
    )
    # The second block holds a single positive level, so only f1 contributes.
    assert f2 == 0.0
    assert f1 == pytest.approx(0.75 * h(2.0 / 3.0, 1.0 / 3.0), abs=1e-12)


def test_given_blocks_bounded_by_entropy():
    rng = np.random.default_rng(55)
    for _ in range(10):
        rho = random_density(4, seed=int(rng.integers(1 << 30)))
        res = IdentityResolution.coordinate(4, [2, 1, 1])
        val = conditional_entropy_given_blocks(rho, res)
        assert -1e-9 <= val <= von_neumann_entropy(rho) + 1e-9


# -------------------------------------------------------------- pinching


def test_pinch_fixes_block_diagonal_states():
    rho = DensityMatrix.diagonal([0.4, 0.3, 0.3])
    res = IdentityResolution.coordinate(3, [2, 1])
    np.testing.assert_allclose(pinch(rho, res).mat, rho.mat, atol=1e-14)


def test_pinch_kills_off_diagonal_blocks():
    plus = DensityMatrix(np.full((2, 2), 0.5))
    res = IdentityResolution.coordinate(2, [1, 1])
    np.testing.assert_allclose(pinch(plus, res).mat, np.eye(2) / 2, atol=1e-14)


def test_pinch_idempotent():
    rho = random_density(4, seed=12)
    res = IdentityResolution.coordinate(4, [2, 1, 1])
    once = pinch(rho, res)
    twice = pinch(once, res)
    np.testing.assert_allclose(twice.mat, once.mat, atol=1e-13)


def test_pinch_never_decreases_entropy():
    rng = np.random.default_rng(31)
    for _ in range(15):
        rho = random_density(4, seed=int(rng.integers(1 << 30)))
        res = IdentityResolution.coordinate(4, [2, 2])
        assert von_neumann_entropy(pinch(rho, res)) >= von_neumann_entropy(rho) - 1e-10


# ----------------------------------------------------- combined measures


def test_joint_entropy_decomposition():
    rho = random_density(3, seed=14)
    sigma = DensityMatrix.diagonal([0.5, 0.25, 0.25])
    assert joint_entropy(rho, sigma) == pytest.approx(
        von_neumann_entropy(sigma) + conditional_entropy(rho, sigma).total,
        abs=1e-12,
    )


def test_information_gain_bounds():
    rho = random_density(3, seed=15)
    sigma = random_density(3, seed=16)
    gain = information_gain(rho, sigma)
    assert -1e-9 <= gain <= von_neumann_entropy(rho) + 1e-9


def test_information_gain_vanishes_conditioning_on_mixed():
    rho = random_density(3, seed=18)
    gain = information_gain(rho, DensityMatrix.maximally_mixed(3))
    assert gain == pytest.approx(0.0, abs=1e-12)


# ------------------------------------------------------- entropy split


def test_spectrum_distribution_lists_multiplicities():
    rho = DensityMatrix.diagonal([0.4, 0.4, 0.2])
    np.testing.assert_allclose(spectrum_distribution(rho).weights, [0.4, 0.4, 0.2])


def test_block_distribution_oracle():
    rho = DensityMatrix.diagonal([0.4, 0.4, 0.2])
    np.testing.assert_allclose(block_distribution(rho).weights, [0.8, 0.2])
    assert classical_entropy(block_distribution(rho).weights) == pytest.approx(
        0.500402, abs=5e-7
    )


def test_entropy_splits_into_classical_and_degeneracy_parts():
    rho = DensityMatrix.diagonal([0.4, 0.4, 0.2])
    split = classical_entropy(block_distribution(rho).weights) + 0.8 * LN2
    assert von_neumann_entropy(rho) == pytest.approx(split, abs=1e-12)
    assert von_neumann_entropy(rho) == pytest.approx(1.054920, abs=5e-7)


def test_entropy_split_holds_on_random_degenerate_states():
    rng = np.random.default_rng(41)
    for _ in range(10):
        u = random_unitary(4, seed=int(rng.integers(1 << 30)))
        vals = np.array([0.3, 0.3, 0.3, 0.1])
        rho = DensityMatrix(u @ np.diag(vals) @ u.conj().T)
        parts = classical_entropy(block_distribution(rho).weights)
        parts += 0.9 * math.log(3)
        assert von_neumann_entropy(rho) == pytest.approx(parts, abs=1e-9)
