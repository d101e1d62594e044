"""Spectral norms, kernel inequalities, and the certified bound chains."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from freelac import (
    BudgetExceeded,
    CyclicFunction,
    FactorSubset,
    density_lower_bound,
    extract_quasi_independent,
    fejer_coefficient,
    fejer_kernel,
    holder_check,
    kernel_norm_check,
    leinert_lower_bound,
    sidon_qi_check,
    transform,
    weak_sidon_witness,
)

TOL = 1e-9


def dft_oracle(f: CyclicFunction, k: int) -> complex:
    """Independent single-coefficient DFT, straight from the definition."""
    return sum(v * cmath.exp(-2j * cmath.pi * j * k / f.p) for j, v in f.values)


def random_sparse(rng: random.Random, p: int) -> CyclicFunction:
    support = rng.sample(range(p), rng.randrange(1, min(8, p)))
    return CyclicFunction.from_values(
        p, {j: complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for j in support}
    )


def test_point_mass_transform():
    report = transform(CyclicFunction.point_mass(11, 0))
    assert np.allclose(report.spectrum, np.ones(11))
    assert abs(report.norm_a - 1.0) < TOL
    assert abs(report.norm_vn - 1.0) < TOL


def test_pair_indicator_in_z3():
    report = transform(CyclicFunction.indicator(3, [1, 2]))
    assert abs(report.spectrum[0] - 2.0) < TOL
    assert abs(report.norm_vn - 2.0) < TOL
    assert abs(report.norm_a - 4.0 / 3.0) < TOL


def test_transform_matches_definition_oracle():
    rng = random.Random(47)
    for p in (5, 17, 101):
        f = random_sparse(rng, p)
        report = transform(f)
        for k in (0, 1, p // 2, p - 1):
            assert abs(report.spectrum[k] - dft_oracle(f, k)) < 1e-10


def test_parseval_on_random_sparse_functions():
    rng = random.Random(53)
    for _ in range(40):
        p = rng.choice([5, 17, 67, 521])
        f = random_sparse(rng, p)
        report = transform(f)
        assert abs(report.norm_l2 - report.values_l2) < TOL


def test_norm_orderings():
    rng = random.Random(59)
    for _ in range(20):
        f = random_sparse(rng, 67)
        report = transform(f, q_list=(2.0, 3.0, 4.0, 10.0))
        max_value = max(abs(v) for _, v in f.values)
        assert report.norm_vn <= 67 * max_value + TOL
        assert report.norm_a <= report.norm_vn + TOL  # mean below max
        # normalized q-norms increase with q
        assert report.norm_lq[2.0] <= report.norm_lq[3.0] + TOL
        assert report.norm_lq[3.0] <= report.norm_lq[4.0] + TOL
        assert report.norm_lq[4.0] <= report.norm_lq[10.0] + TOL
        assert abs(report.norm_lq[2.0] - report.norm_l2) < TOL


def test_spectral_budget():
    with pytest.raises(BudgetExceeded):
        transform(CyclicFunction.point_mass(131101, 0), budget=1 << 16)


def test_cyclic_function_requires_prime_order():
    with pytest.raises(ValueError):
        CyclicFunction.from_values(12, {1: 1.0})


def test_fejer_values_small_case():
    kernel = fejer_kernel(1, 11)
    values = dict(kernel.values)
    assert values[0] == 1.0
    assert values[1] == 0.5
    assert values[10] == 0.5
    assert 2 not in values and 9 not in values  # width-2n edge is zero


def first_prime_above(x: int) -> int:
    from freelac import is_prime

    p = x + 1 if x % 2 == 0 else x + 2
    while not is_prime(p):
        p += 2
    return p


def test_fejer_norms_and_positivity():
    for n in range(1, 9):
        p = first_prime_above(4 * n)
        kernel = fejer_kernel(n, p)
        report = transform(kernel)
        assert abs(report.norm_a - 1.0) < TOL
        assert abs(report.norm_vn - 2.0 * n) < TOL
        assert float(np.min(report.spectrum.real)) >= -TOL
        assert float(np.max(np.abs(report.spectrum.imag))) <= 1e-8


def test_fejer_floor_exact_rational():
    for n in range(1, 9):
        for j in range(1, n + 1):
            assert fejer_coefficient(n, j) >= Fraction(1, 2)
        assert fejer_coefficient(n, 2 * n) == 0
        assert fejer_coefficient(n, n) == Fraction(1, 2)


def test_fejer_rejects_small_order():
    with pytest.raises(ValueError):
        fejer_kernel(3, 11)


def test_kernel_norm_check_example():
    check = kernel_norm_check(2, 37, 4)
    assert check.passed
    assert check.norm_lq_prime <= check.interpolation_bound + TOL
    assert check.interpolation_bound <= (4 * 2 + 1) ** 0.25 + TOL


def test_kernel_norm_check_q2_and_large_q():
    # q = q' = 2 reduces to the Cauchy-Schwarz style bound
    assert kernel_norm_check(1, 11, 2).passed
    # large q: the q' norm approaches the algebra norm (1 here)
    check = kernel_norm_check(1, 11, 100)
    assert check.passed
    assert abs(check.norm_lq_prime - check.norm_a) < 0.05


def test_holder_point_masses_equality():
    f = CyclicFunction.point_mass(11, 3)
    check = holder_check(f, f, 4)
    assert check.holds
    assert abs(check.pairing - 1.0) < TOL
    assert abs(abs(check.pairing) - check.bound) < TOL


def test_holder_on_random_pairs():
    rng = random.Random(61)
    for _ in range(100):
        p = rng.choice([17, 67, 101])
        f = random_sparse(rng, p)
        g = random_sparse(rng, p)
        q = rng.choice([3.0, 4.0, 6.0])
        check = holder_check(f, g, q)
        assert check.holds
        assert check.plancherel_gap < 1e-8


def test_holder_requires_shared_order():
    with pytest.raises(ValueError):
        holder_check(CyclicFunction.point_mass(11, 0), CyclicFunction.point_mass(13, 0), 4)


def test_density_lower_bound():
    subset = FactorSubset(3, 17, (1, 2, 3, 5))
    assert density_lower_bound(subset, 3, 4.0) == pytest.approx(
        math.sqrt(3 / (2 * 13 ** (2 / 4.0)))
    )
    assert density_lower_bound(FactorSubset(3, 17, (9, 11)), 3, 4.0) == 0.0
    with pytest.raises(ValueError):
        density_lower_bound(subset, 0, 4.0)


def test_weak_sidon_witness_examples():
    assert weak_sidon_witness(0).n == 1
    witness = weak_sidon_witness(1)
    assert witness.n == 41
    assert witness.lhs == 1681
    assert witness.rhs == Fraction(1640)
    assert witness.holds
    witness = weak_sidon_witness(2)
    assert witness.n == 161
    assert witness.holds
    # rational constants stay exact through string input
    witness = weak_sidon_witness("1.5")
    assert witness.n == 91  # 40 * 2.25 = 90
    assert witness.holds
    with pytest.raises(ValueError):
        weak_sidon_witness(-1)


def test_sidon_qi_check_examples():
    assert sidon_qi_check(FactorSubset(1, 17, (1,))).holds
    check = sidon_qi_check(FactorSubset(1, 101, (1, 2, 4, 8)))
    assert check.holds
    assert check.slack > 0


def test_sidon_qi_check_rejects_non_qi():
    with pytest.raises(ValueError):
        sidon_qi_check(FactorSubset(1, 17, (1, 2, 3)))


def test_sidon_chain_on_random_qi_sets():
    rng = random.Random(67)
    constant = 6.0 * math.sqrt(6.0)
    for _ in range(30):
        p = rng.choice([101, 1009, 10007])
        pool = rng.sample(range(1, p), min(p - 1, 60))
        witness = extract_quasi_independent(FactorSubset(1, p, tuple(sorted(pool))))
        size_cap = min(len(witness.subset), 12)
        subset = FactorSubset(1, p, witness.subset[:size_cap])
        check = sidon_qi_check(subset)
        assert check.holds
        lower = leinert_lower_bound(subset)
        assert lower >= math.sqrt(len(subset.exponents)) / constant - TOL


def test_leinert_lower_bound_examples():
    assert leinert_lower_bound(FactorSubset(1, 17, (1,))) == pytest.approx(1.0)
    value = leinert_lower_bound(FactorSubset(1, 101, (1, 2, 4, 8)))
    assert value > math.sqrt(4) / (6 * math.sqrt(6))
    with pytest.raises(ValueError):
        leinert_lower_bound(FactorSubset(1, 17, ()))
