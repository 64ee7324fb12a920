"""Distribution, sampling, noise channel, and closed-form oracle tests."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdba.entanglement import (
    CommanderSymbol,
    NoisePreset,
    NoiseSpec,
    OutcomePattern,
    apply_noise,
    exact_pmf,
    flip_bits,
    flip_disagreement,
    games_count,
    games_max,
    joint_ones_probability,
    joint_ones_probability_exact,
    lieutenant_marginal,
    lieutenant_marginal_exact,
    pmf_csv,
    sample_measurements,
    sample_outcome,
    traitor_detection_rate,
    traitor_detection_rate_exact,
)
from qdba.errors import InvalidParameterError

from _oracles import max_games_by_enumeration, resource_support


class TestExactPMF:
    def test_values_n4(self):
        pmf = exact_pmf(4)
        all_ones = OutcomePattern(CommanderSymbol.C00, (1, 1, 1))
        one_hot_first = OutcomePattern(CommanderSymbol.C01, (1, 0, 0))
        assert pmf.probability(all_ones) == Fraction(1, 3)
        assert pmf.probability(one_hot_first) == Fraction(1, 18)

    def test_total_n3(self):
        pmf = exact_pmf(3)
        assert len(pmf.entries) == 6
        assert pmf.total() == 1

    @pytest.mark.parametrize("n", range(3, 13))
    def test_exact_rational_structure(self, n):
        pmf = exact_pmf(n)
        assert len(pmf.entries) == 2 + 2 * (n - 1)
        assert pmf.total() == 1
        assert abs(sum(pmf.float_entries().values()) - 1.0) < 1e-12
        side = Fraction(1, 6 * (n - 1))
        for pattern, prob in pmf.entries.items():
            if pattern.commander_symbol in (CommanderSymbol.C00, CommanderSymbol.C11):
                assert prob == Fraction(1, 3)
            else:
                assert prob == side

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_matches_amplitude_oracle(self, n):
        pmf = exact_pmf(n)
        for symbol, bits, prob in resource_support(n):
            assert pmf.probability(OutcomePattern(CommanderSymbol(symbol), bits)) == prob

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_exchange_symmetry(self, n):
        pmf = exact_pmf(n)
        rng = np.random.default_rng(11)
        for _ in range(5):
            perm = rng.permutation(n - 1)
            for pattern, prob in pmf.entries.items():
                permuted = OutcomePattern(
                    pattern.commander_symbol,
                    tuple(pattern.lieutenant_bits[j] for j in perm),
                )
                assert pmf.probability(permuted) == prob

    def test_rejects_small_n(self):
        with pytest.raises(InvalidParameterError):
            exact_pmf(2)

    def test_csv_round_trip(self):
        pmf = exact_pmf(4)
        text = pmf_csv(pmf)
        lines = text.strip().split("\n")
        assert lines[0] == "commander_symbol,lieutenant_bits,probability"
        assert len(lines) == 9
        total = 0.0
        for line in lines[1:]:
            sym, bits, prob = line.split(",")
            assert sym in ("00", "01", "10", "11")
            assert set(bits) <= {"0", "1"} and len(bits) == 3
            total += float(prob)
        assert abs(total - 1.0) < 1e-12


class TestSampler:
    def test_support_membership(self):
        rng = np.random.default_rng(0)
        support = exact_pmf(5).support()
        symbols, bits = sample_measurements(5, 100_000, rng)
        seen = {
            OutcomePattern(CommanderSymbol(int(s)), tuple(int(b) for b in row))
            for s, row in zip(symbols[:200], bits[:200])
        }
        assert seen <= support
        # full-sample structural check, vectorized
        assert set(np.unique(symbols)) <= {0, 1, 2, 3}

    def test_all_ones_frequency(self):
        rng = np.random.default_rng(1)
        symbols, bits = sample_measurements(4, 1_000_000, rng)
        hits = ((symbols == CommanderSymbol.C00) & (bits == 1).all(axis=1)).mean()
        sigma = np.sqrt((1 / 3) * (2 / 3) / 1_000_000)
        assert abs(hits - 1 / 3) < 3 * sigma

    def test_correlation_rules(self):
        rng = np.random.default_rng(2)
        symbols, bits = sample_measurements(5, 100_000, rng)
        ones_per_row = bits.sum(axis=1)
        assert (ones_per_row[symbols == CommanderSymbol.C00] == 4).all()
        assert (ones_per_row[symbols == CommanderSymbol.C11] == 0).all()
        assert (ones_per_row[symbols == CommanderSymbol.C01] == 1).all()
        assert (ones_per_row[symbols == CommanderSymbol.C10] == 3).all()

    def test_single_outcome_in_support(self):
        rng = np.random.default_rng(3)
        support = exact_pmf(5).support()
        for _ in range(50):
            assert sample_outcome(5, rng) in support

    def test_rejects_small_n(self):
        rng = np.random.default_rng(0)
        with pytest.raises(InvalidParameterError):
            sample_measurements(2, 10, rng)


class TestNoise:
    def test_identity_at_zero(self):
        rng = np.random.default_rng(4)
        pattern = OutcomePattern(CommanderSymbol.C01, (1, 0, 0, 0))
        assert apply_noise(pattern, NoiseSpec.noiseless(), rng) == pattern

    def test_full_flip_complements(self):
        rng = np.random.default_rng(5)
        pattern = OutcomePattern(CommanderSymbol.C01, (1, 0, 0, 0))
        flipped = apply_noise(pattern, NoiseSpec.custom(1.0), rng)
        assert flipped.commander_symbol is CommanderSymbol.C10
        assert flipped.lieutenant_bits == (0, 1, 1, 1)

    def test_half_noise_scrambles_marginals(self):
        rng = np.random.default_rng(6)
        k = 1_000_000
        symbols = np.zeros(k, dtype=np.uint8)  # C00
        bits = np.ones((k, 3), dtype=np.uint8)
        out_symbols, out_bits = flip_bits(symbols, bits, 0.5, rng)
        tol = 3 * 0.5 / np.sqrt(k)
        first = (out_symbols >> 1) & 1
        second = out_symbols & 1
        for column in (first, second, out_bits[:, 0], out_bits[:, 1], out_bits[:, 2]):
            assert abs(column.mean() - 0.5) < tol

    def test_reflection_symmetry_of_channel(self):
        # Noise p, versus noise 1-p followed by complementing every bit,
        # must produce identical output distributions.
        k = 100_000
        p = 0.2
        base_symbols = np.full(k, CommanderSymbol.C01, dtype=np.uint8)
        base_bits = np.tile(np.array([1, 0, 0], dtype=np.uint8), (k, 1))

        sym_a, bits_a = flip_bits(base_symbols, base_bits, p, np.random.default_rng(7))
        sym_b, bits_b = flip_bits(base_symbols, base_bits, 1 - p, np.random.default_rng(8))
        sym_b = (3 - sym_b).astype(np.uint8)
        bits_b = (1 - bits_b).astype(np.uint8)

        def histogram(symbols, bits):
            codes = (symbols.astype(np.int64) << 3) + bits @ (1 << np.arange(2, -1, -1))
            return np.bincount(codes, minlength=32) / symbols.size

        tv = 0.5 * np.abs(histogram(sym_a, bits_a) - histogram(sym_b, bits_b)).sum()
        assert tv < 0.01

    def test_preset_levels(self):
        assert NoiseSpec.from_preset("noiseless").flip_probability == 0.0
        assert NoiseSpec.from_preset("unmitigated").flip_probability == 0.338
        assert NoiseSpec.from_preset("dd").flip_probability == 0.207
        assert NoiseSpec.from_preset("emdd").flip_probability == 0.175
        assert NoiseSpec.custom(0.3).preset is NoisePreset.CUSTOM

    def test_preset_probability_conflict_rejected(self):
        with pytest.raises(InvalidParameterError):
            NoiseSpec(NoisePreset.EM_DD, 0.3)
        with pytest.raises(InvalidParameterError):
            NoiseSpec.custom(1.5)
        with pytest.raises(InvalidParameterError):
            NoiseSpec.from_preset("custom")


class TestClosedForms:
    @pytest.mark.parametrize("n", range(3, 13))
    def test_marginals_match_pmf_enumeration(self, n):
        pmf = exact_pmf(n)
        marginal = sum(
            (prob for pattern, prob in pmf.entries.items() if pattern.lieutenant_bits[0] == 1),
            Fraction(0),
        )
        joint = sum(
            (
                prob
                for pattern, prob in pmf.entries.items()
                if pattern.lieutenant_bits[0] == 1 and pattern.lieutenant_bits[1] == 1
            ),
            Fraction(0),
        )
        assert marginal == lieutenant_marginal_exact(n)
        assert joint == joint_ones_probability_exact(n)

    def test_spec_values(self):
        assert lieutenant_marginal(3) == 0.5
        assert lieutenant_marginal(6) == 0.5
        assert joint_ones_probability_exact(4) == Fraction(7, 18)
        assert joint_ones_probability_exact(3) == Fraction(1, 3)
        assert traitor_detection_rate_exact(4) == Fraction(2, 9)
        assert traitor_detection_rate_exact(5) == Fraction(1, 6)
        assert traitor_detection_rate_exact(3) == Fraction(1, 3)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_detection_rate_consistency(self, n):
        lhs = traitor_detection_rate_exact(n)
        rhs = 1 - joint_ones_probability_exact(n) / lieutenant_marginal_exact(n)
        assert lhs == rhs
        assert abs(traitor_detection_rate(n) - float(rhs)) < 1e-15

    def test_rejects_small_n(self):
        for fn in (lieutenant_marginal, joint_ones_probability, traitor_detection_rate):
            with pytest.raises(InvalidParameterError):
                fn(2)

    def test_flip_disagreement(self):
        assert flip_disagreement(0.0) == 0.0
        assert flip_disagreement(0.1) == pytest.approx(0.18)
        assert flip_disagreement(0.5) == 0.5
        assert flip_disagreement(0.9) == pytest.approx(0.18)


class TestGameCounts:
    def test_examples(self):
        assert games_count(5, 1) == 3
        assert games_count(6, 0) == 0
        assert games_count(6, 3) == 6
        assert games_count(6, 5) == 0  # m = n - 1: no loyal lieutenant left
        assert games_count(6, 6) == 0  # clamped
        assert games_max(5) == 4
        assert games_max(6) == 6
        assert games_max(3) == 1

    @pytest.mark.parametrize("n", range(3, 31))
    def test_max_matches_enumeration(self, n):
        assert games_max(n) == max_games_by_enumeration(n)

    @given(st.integers(min_value=3, max_value=50), st.data())
    def test_symmetric_in_loyal_and_traitor_lieutenants(self, n, data):
        m = data.draw(st.integers(min_value=0, max_value=n - 1))
        assert games_count(n, m) == games_count(n, n - 1 - m)

    def test_rejects_bad_m(self):
        with pytest.raises(InvalidParameterError):
            games_count(5, 6)
        with pytest.raises(InvalidParameterError):
            games_count(5, -1)
