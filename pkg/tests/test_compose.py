"""Composition, the stage algorithms, and table transforms against worked traces."""

import itertools
import math
import random

import pytest

from womkit.catalog import catalog_entry
from womkit.codec import StageView, encode_op, generation_op
from womkit.compose import (
    CompositeCode,
    CompositeMessage,
    append_counter,
    append_sync,
    compose,
    composite_decode,
    composite_encode,
    composite_recover,
    iterate_construction,
    merge_generations,
    prepend_zero_generation,
    product_with_sync,
    split_generation,
)
from womkit.core import CodeParams, check_fixed_rate, parse_state, verify_wom, wom_rate
from womkit.errors import (
    AllZeroAlreadyPresent,
    BeyondLastGeneration,
    GenerationCountMismatch,
    InconsistentBlocks,
    MessageOutOfRange,
    NothingWritten,
    PreconditionViolation,
)
from womkit.rates import NdRate


def entry(entry_id):
    return catalog_entry(entry_id).table


def s(word, q=2):
    return parse_state(word, q)


EX5 = entry("ex5_inner")  # [4,3:4,3,2]
C2 = entry("c2_writes2")  # [2,2:2,1]
FR32 = entry("fixedrate_32")  # [3,2:2,2]
Q4_SPLIT = entry("q4_split_25")  # [2,5:2,2,3,2,1]_4
Q4_26 = entry("q4_laminar_26")  # [2,6:2,2,2,1,1,1]_4

# Binary catalog codes that satisfy the composition preconditions.
COMPOSABLE = [
    "fig1_laminar",
    "ex5_inner",
    "c2_writes2",
    "greedy_33",
    "greedy_44",
    "greedy_55",
    "greedy_66",
    "w1_5356",
    "w1bis_5354",
    "fixedrate_32",
    "fixedrate_53",
]


# --- parameters and rate ------------------------------------------------------


class TestComposeParameters:
    def test_worked_example_params(self):
        comp = compose(EX5, C2)
        assert str(comp.params) == "[8,6:8,4,6,3,4,2]"
        assert comp.params == CodeParams(2, 8, 6, (8, 4, 6, 3, 4, 2))

    def test_worked_example_rate(self):
        comp = compose(EX5, C2)
        assert wom_rate(comp.params).total == pytest.approx(1.5212405, abs=5e-7)

    def test_rate_identity_over_catalog_pairs(self):
        # R(compose(C, C')) = (t'/n') R(C) + (t/n) R(C') exactly, where
        # t, n are the inner's parameters.
        for a, b in itertools.product(COMPOSABLE, repeat=2):
            inner, outer = entry(a), entry(b)
            comp = compose(inner, outer)
            lhs = wom_rate(comp.params).total
            rhs = (outer.t / outer.n) * wom_rate(inner.params).total + (
                inner.t / inner.n
            ) * wom_rate(outer.params).total
            assert lhs == pytest.approx(rhs, abs=1e-9), (a, b)

    def test_message_sizes_are_products(self):
        comp = compose(EX5, C2)
        expected = tuple(mp * ml for mp in EX5.params.M for ml in C2.params.M)
        assert comp.params.M == expected

    def test_qary_inner_binary_outer(self):
        comp = compose(Q4_SPLIT, C2)
        assert str(comp.params) == "[4,10:4,2,4,2,6,3,4,2,2,1]_4"
        assert wom_rate(comp.params).total == pytest.approx(3.5425, abs=5e-5)

    def test_fixed_rate_self_composition(self):
        comp = compose(FR32, FR32)
        assert str(comp.params) == "[9,4:4,4,4,4]"
        assert check_fixed_rate(comp.params)

    def test_equality_is_componentwise(self):
        assert compose(EX5, C2) == compose(EX5, C2)
        assert compose(EX5, C2) != compose(C2, EX5)
        assert hash(compose(EX5, C2)) == hash(compose(EX5, C2))


class TestComposePreconditions:
    def test_nonsynchronous_component_rejected(self):
        nonsync = entry("table1_nonsync")
        with pytest.raises(PreconditionViolation, match="nonsynchronous"):
            compose(nonsync, C2)

    def test_all_zero_codeword_rejected(self):
        zero = entry("fig1_prepended")
        with pytest.raises(PreconditionViolation, match="all-zero"):
            compose(EX5, zero)

    def test_wrong_type_rejected(self):
        with pytest.raises(TypeError):
            compose("not a code", C2)

    def test_nonbinary_outer_needs_fixed_rate_inner_or_unit_writes(self):
        with pytest.raises(PreconditionViolation, match="nonbinary outer"):
            compose(EX5, Q4_SPLIT)

    def test_nonbinary_outer_allowed_with_fixed_rate_inner(self):
        comp = compose(FR32, Q4_SPLIT)
        assert comp.params.q == 2
        assert comp.params.n == FR32.n * Q4_SPLIT.n
        assert comp.params.t == FR32.t * Q4_SPLIT.t

    def test_nonbinary_outer_allowed_with_unit_increment_writes(self):
        # Every codeword of the [2,6]_4 code at write l has cell sum l.
        comp = compose(EX5, Q4_26)
        assert str(comp.params) == "[8,18:8,8,8,4,4,4,6,6,6,3,3,3,4,4,4,2,2,2]"


class TestIterateConstruction:
    def test_zero_iterations_is_identity(self):
        assert iterate_construction(C2, C2, 0) is C2

    def test_two_iterations(self):
        comp = iterate_construction(C2, C2, 2)
        assert str(comp.params) == "[8,8:8,4,4,2,4,2,2,1]"
        assert wom_rate(comp.params).total == pytest.approx(1.5, abs=1e-9)

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            iterate_construction(C2, C2, -1)


# --- stage recovery on the worked example -------------------------------------


class TestStageRecovery:
    def comp(self):
        return compose(EX5, C2)

    def test_mid_stage_state(self):
        comp = self.comp()
        view = composite_recover(comp, (s("1100"), s("0010")))
        assert view.read_view == StageView(p=2, l=1, i=3, b_prime=(1, 0))
        assert view.write_view == view.read_view
        assert not view.rolled_over

    def test_fresh_memory_rolls_into_first_stage(self):
        comp = self.comp()
        view = composite_recover(comp, (s("0000"), s("0000")))
        assert view.read_view == StageView(p=0, l=2, i=0, b_prime=(1, 1))
        assert view.write_view == StageView(p=1, l=0, i=0, b_prime=(0, 0))
        assert view.rolled_over

    def test_completed_stage_rolls_over(self):
        comp = self.comp()
        view = composite_recover(comp, (s("1100"), s("0011")))
        assert view.read_view == StageView(p=2, l=2, i=4, b_prime=(1, 1))
        assert view.write_view == StageView(p=3, l=0, i=4, b_prime=(0, 0))
        assert view.rolled_over

    def test_flat_state_interface_agrees(self):
        comp = self.comp()
        assert comp.generation_of(s("11000010")) == 3
        assert comp.recover_generation(s("11000011")).read_view.i == 4

    def test_exhausted_memory_raises_but_stays_readable(self):
        comp = self.comp()
        full = (s("1111"), s("1111"))
        with pytest.raises(BeyondLastGeneration, match="all 6 writes"):
            composite_recover(comp, full)
        assert composite_decode(comp, full) == CompositeMessage(m=2, m_prime=1, m1=2)

    def test_block_generations_must_be_consecutive(self):
        comp = self.comp()
        with pytest.raises(InconsistentBlocks, match="more than two consecutive"):
            composite_recover(comp, (s("1110"), s("0010")))

    def test_block_state_must_be_outer_codeword(self):
        comp = compose(EX5, FR32)
        blocks = (s("1000"), s("0000"), s("0000"))  # reads as 100, not a codeword
        with pytest.raises(InconsistentBlocks, match="not an outer codeword"):
            composite_recover(comp, blocks)

    def test_wrong_block_count(self):
        comp = self.comp()
        with pytest.raises(InconsistentBlocks, match="expected 2 blocks"):
            composite_recover(comp, (s("1100"),))


# --- encode and decode on the worked example -----------------------------------


class TestCompositeCodec:
    def comp(self):
        return compose(EX5, C2)

    def test_decode_mid_stage(self):
        comp = self.comp()
        msg = composite_decode(comp, (s("1100"), s("0010")))
        assert msg == CompositeMessage(m=1, m_prime=2, m1=2)

    def test_decode_fresh_memory_raises(self):
        comp = self.comp()
        with pytest.raises(NothingWritten):
            composite_decode(comp, (s("0000"), s("0000")))

    def test_encode_next_write(self):
        comp = self.comp()
        after = composite_encode(comp, (s("1100"), s("0010")), 2)
        assert after == (s("1100"), s("0011"))
        assert composite_decode(comp, after) == CompositeMessage(m=2, m_prime=1, m1=2)

    def test_encode_message_out_of_range(self):
        comp = self.comp()
        with pytest.raises(MessageOutOfRange):
            composite_encode(comp, (s("1100"), s("0010")), 4)  # M_4 = 3

    def test_flat_encode_decode(self):
        comp = self.comp()
        state = comp.encode(1, 5, s("00000000"))
        assert comp.decode(1, state) == 5
        state = comp.encode(2, 4, state)
        assert comp.decode(2, state) == 4

    def test_exhaustive_write_sequences(self):
        # Every one of the prod(M_i) = 4608 full write sequences encodes
        # monotonically and decodes back at every step.
        comp = self.comp()
        count = 0
        for seq in itertools.product(*(range(1, m + 1) for m in comp.params.M)):
            state = (0,) * comp.n
            for i, m1 in enumerate(seq, start=1):
                before = state
                state = comp.encode(i, m1, state)
                assert all(x <= y for x, y in zip(before, state))
                assert comp.decode(i, state) == m1
            count += 1
        assert count == 4608

    def test_seeded_round_trips_qary_composite(self):
        comp = compose(Q4_SPLIT, C2)
        rng = random.Random(20250819)
        for trial in range(1000):
            state = (0,) * comp.n
            for i in range(1, comp.t + 1):
                m1 = rng.randint(1, comp.params.M[i - 1])
                state = comp.encode(i, m1, state)
                assert comp.decode(i, state) == m1

    def test_nested_composite_round_trips(self):
        comp = iterate_construction(C2, C2, 2)
        rng = random.Random(7)
        for trial in range(200):
            state = (0,) * comp.n
            for i in range(1, comp.t + 1):
                m1 = rng.randint(1, comp.params.M[i - 1])
                state = comp.encode(i, m1, state)
                assert comp.decode(i, state) == m1


class TestToTable:
    def test_materialized_table_matches_composite(self):
        comp = compose(EX5, C2)
        table = comp.to_table()
        assert table.params == comp.params
        report = verify_wom(table)
        assert report.properties.is_valid
        assert report.properties.is_synchronous
        rng = random.Random(11)
        for trial in range(200):
            state = (0,) * comp.n
            for i in range(1, comp.t + 1):
                m1 = rng.randint(1, comp.params.M[i - 1])
                state = comp.encode(i, m1, state)
                assert table.message_of(i, state) == m1

    def test_small_self_composition_is_laminar(self):
        table = compose(C2, C2).to_table()
        assert str(table.params) == "[4,4:4,2,2,1]"
        assert verify_wom(table).properties.is_laminar

    def test_expansion_limit(self):
        comp = compose(EX5, C2)
        with pytest.raises(PreconditionViolation, match="limit"):
            comp.to_table(limit=10)


# --- table transforms ----------------------------------------------------------


class TestPrependZero:
    def test_adds_trivial_first_write(self):
        fig1 = entry("fig1_laminar")
        out = prepend_zero_generation(fig1)
        assert out == entry("fig1_prepended")

    def test_rejects_code_that_already_has_it(self):
        with pytest.raises(AllZeroAlreadyPresent):
            prepend_zero_generation(entry("fig1_prepended"))


class TestMergeGenerations:
    def test_merge_reproduces_three_write_code(self):
        merged = merge_generations(entry("greedy_44"), 3, 4)
        assert merged == EX5

    def test_merge_reproduces_published_four_class_code(self):
        merged = merge_generations(entry("greedy_55"), 3, 5)
        assert merged == entry("w1bis_5354")

    def test_merged_code_stays_laminar(self):
        merged = merge_generations(entry("greedy_44"), 3, 4)
        assert verify_wom(merged).properties.is_laminar

    def test_bad_range(self):
        with pytest.raises(ValueError):
            merge_generations(EX5, 3, 2)
        with pytest.raises(ValueError):
            merge_generations(EX5, 1, 9)


class TestSplitGeneration:
    def test_split_then_merge_is_identity(self):
        split = split_generation(entry("q4_sync_24"), 4, ((1, 2), (3,)))
        assert split.params.M == (2, 2, 3, 2, 1)
        back = merge_generations(split, 4, 5)
        assert back == entry("q4_sync_24")

    def test_grouping_must_partition(self):
        with pytest.raises(ValueError):
            split_generation(EX5, 2, ((1,), (1, 2, 3)))
        with pytest.raises(ValueError):
            split_generation(EX5, 2, ((1,), (2,)))

    def test_published_split(self):
        split = split_generation(entry("q4_sync_24"), 4, ((1, 2), (3,)))
        assert split == Q4_SPLIT


class TestCompletions:
    def test_counter_completion(self):
        report = append_counter(NdRate(2, 4, 1.0), 6)
        assert report.counter_cells == 3
        assert report.basic_rate == pytest.approx(0.5)

    def test_sync_completion_with_checked_code(self):
        nd = NdRate(2, 2, wom_rate(entry("table1_nonsync").params).total)
        report = append_sync(nd, FR32, 6)
        assert report.n_sync == 3
        assert report.sync_rate == pytest.approx((nd.rate * 3 + (2 / 3) * 3) / 6)

    def test_sync_completion_write_count_mismatch(self):
        with pytest.raises(GenerationCountMismatch):
            append_sync(NdRate(2, 3, 1.0), FR32, 6)

    def test_product_with_sync(self):
        out = product_with_sync(entry("table1_nonsync"), FR32)
        assert str(out.params) == "[6,2:8,8]"
        report = verify_wom(out)
        assert report.properties.is_valid
        assert report.properties.is_synchronous

    def test_product_rejects_nonsynchronous_completion(self):
        with pytest.raises(PreconditionViolation):
            product_with_sync(FR32, entry("table1_nonsync"))
