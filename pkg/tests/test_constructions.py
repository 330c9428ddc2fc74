import pytest

from cwm.constructions import (
    CW7_4,
    cw14m_family,
    kronecker,
    multiple,
    prime_powers_up_to,
    rds_proper_parameters,
    type_ii,
)
from cwm.groupring import (
    are_equivalent,
    canonical_form,
    delta,
    proper_decomposition,
    shift,
    verify,
)


class TestMultiple:
    def test_order26_from_order13(self, cw13, cw26_multiple):
        lifted = multiple(cw13, 2)
        assert verify(lifted, 9, 1)
        assert are_equivalent(lifted, cw26_multiple)

    def test_d_one_is_identity(self, cw13):
        assert multiple(cw13, 1) == cw13

    def test_round_trip_through_decomposition(self, cw7):
        lifted = multiple(cw7, 3)
        d, b = proper_decomposition(lifted)
        assert d == 3
        assert are_equivalent(b, cw7)


class TestKronecker:
    def test_7_by_13(self, cw7, cw13):
        prod = kronecker(cw7, cw13)
        assert prod.order == 91
        assert verify(prod, 36, 1)

    def test_identity_factor(self, cw7):
        prod = kronecker(cw7, delta(9))
        assert verify(prod, 4, 1)

    def test_symmetric_up_to_equivalence(self, cw7, cw13):
        a = kronecker(cw7, cw13)
        b = kronecker(cw13, cw7)
        assert canonical_form(a) == canonical_form(b)

    def test_preserves_properness(self, cw7, cw13):
        prod = kronecker(cw7, cw13)
        assert proper_decomposition(prod) is None

    def test_noncoprime_rejected(self, cw7):
        with pytest.raises(ValueError):
            kronecker(cw7, multiple(cw7, 2))

    def test_all_coprime_witness_pairs(self, cw7, cw13, cw63):
        pairs = [(cw7, cw13, 36), (cw13, cw63, 144)]
        for a, b, k in pairs:
            assert verify(kronecker(a, b), k, 1)


class TestTypeII:
    def test_weight16_order42_instance(self, cw7):
        # B = X * C(X^6) on Z_42, C = C(X^3) on Z_21: supports disjoint
        b = shift(multiple(cw7, 6), 1)
        c = multiple(cw7, 3)
        out = type_ii(b, c)
        assert out.order == 42
        assert verify(out, 16, 1)

    def test_overlapping_supports_rejected(self, cw7):
        b = multiple(cw7, 2)  # on Z_14; C(X^2) has the same even support
        with pytest.raises(ValueError, match="overlap"):
            type_ii(b, cw7)

    def test_weight_count_of_output(self, cw7):
        b = shift(multiple(cw7, 6), 1)
        out = type_ii(b, multiple(cw7, 3))
        # 4k = 16 with row sum 2s = 4: ten positives, six negatives
        pos, neg = len(out.positives), len(out.negatives)
        if pos < neg:
            pos, neg = neg, pos
        assert (pos, neg) == (10, 6)

    def test_mismatched_orders_rejected(self, cw7, cw13):
        with pytest.raises(ValueError):
            type_ii(cw7, cw13)


class TestFamily14m:
    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_members_verify_and_are_proper(self, m):
        a = cw14m_family(m)
        assert a.order == 14 * m
        assert verify(a, 16, 1)
        assert proper_decomposition(a) is None

    def test_key_exponents_nonzero(self):
        for m in (2, 3, 5):
            a = cw14m_family(m)
            for e in (0, 1, 2 * m, 7 * m):
                assert a.coeffs[e] != 0

    def test_m_below_two_rejected(self):
        with pytest.raises(ValueError):
            cw14m_family(1)


class TestRdsParameters:
    def test_small_prime_powers(self):
        params = rds_proper_parameters(9)
        assert (7, 4) in params
        assert (13, 9) in params
        assert (21, 16) in params and (63, 16) in params
        assert (31, 25) in params and (62, 25) in params
        assert (57, 49) in params and (114, 49) in params and (171, 49) in params
        assert (73, 64) in params and (511, 64) in params
        assert (91, 81) in params and (182, 81) in params and (364, 81) in params

    def test_odd_q_excludes_full_group(self):
        # n = 1 would give (q^3-1, q^2); only allowed for even q
        params = rds_proper_parameters(9)
        assert (26, 9) not in params
        assert (7**3 - 1, 49) not in params
        assert (511, 64) in params  # q = 8 even keeps n = 1

    def test_prime_power_list(self):
        assert prime_powers_up_to(10) == [2, 3, 4, 5, 7, 8, 9]
