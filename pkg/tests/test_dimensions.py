"""Mapping tables, value normalization, and label-to-profile lookups."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimrel import tables
from dimrel.dimensions import (
    ARITY_MONO,
    ARITY_MULTI,
    BINARY_DIMENSIONS,
    CORE_DIMENSIONS,
    DIMENSIONS,
    ORDER_A1_A2,
    ORDER_ANY,
    ORDER_N_S,
    VALUE_SETS,
    DimensionProfile,
    PdtbMappingKey,
    RstMappingKey,
    encode_profile,
    lookup_pdtb,
    lookup_rst,
    merge_profiles,
    normalize_value,
    profile_for_pdtb_row,
    profile_for_rst_row,
    stringify_value,
    underspecified_profile,
)
from dimrel.errors import UnknownLabelError, UnknownTokenError

profiles = st.builds(
    DimensionProfile,
    **{dim: st.sampled_from(VALUE_SETS[dim]) for dim in DIMENSIONS},
)


class TestEmbeddedTables:
    def test_row_counts(self):
        table = tables.load_embedded_tables()
        assert len(table.rst_rows) == 72
        assert len(table.pdtb_rows) == 52

    def test_loading_twice_is_identical(self):
        assert tables.load_embedded_tables() == tables.load_embedded_tables()

    def test_contains_known_rows(self):
        table = tables.load_embedded_tables()
        assert any(
            r.class_label == "Cause" and r.end_label == "Cause"
            and r.arity == ARITY_MONO and r.order == ORDER_N_S
            for r in table.rst_rows
        )
        assert any(
            r.level2_class == "Synchronous" for r in table.pdtb_rows
        )

    def test_checksum_guard(self, monkeypatch):
        monkeypatch.setattr(tables, "_CHECKSUM", "0" * 64)
        with pytest.raises(tables.CorruptTablesError):
            tables.load_embedded_tables()

    def test_fixture_export(self, tmp_path):
        out = tmp_path / "tables.csv"
        tables.export_fixture(out)
        lines = out.read_text().splitlines()
        # one record per row plus the header line
        assert len(lines) == 72 + 52 + 1


class TestNormalizeValue:
    def test_identity_case(self):
        assert normalize_value("polarity", "pos") == "POS"

    def test_slash_ambiguity_is_ns(self):
        assert normalize_value("polarity", "pos/neg") == "NS"
        assert normalize_value("source_of_coherence", "obj/sub") == "NS"
        assert normalize_value("implication_order", "bas/non-b") == "NS"
        assert normalize_value("temporality", "chron/anti") == "NS"
        assert normalize_value("temporality", "anti/N.A.") == "NS"

    def test_any_is_ns(self):
        for dim in CORE_DIMENSIONS:
            assert normalize_value(dim, "any") == "NS"

    def test_lone_na_is_kept(self):
        assert normalize_value("implication_order", "N.A.") == "NA"
        assert normalize_value("temporality", "N.A.") == "NA"

    def test_specificity_merges_spellings(self):
        assert normalize_value("specificity", "spec.-ex.") == "TRUE"
        assert normalize_value("specificity", "spec.-equiv.") == "TRUE"
        assert normalize_value("specificity", "") == "FALSE"

    def test_feature_cell_switches_only_named_dim(self):
        assert normalize_value("conditional", "conditional") == "TRUE"
        assert normalize_value("goal", "conditional") == "FALSE"

    def test_list_token_is_discarded(self):
        for dim in BINARY_DIMENSIONS:
            assert normalize_value(dim, "list") == "FALSE"

    def test_sync_spellings(self):
        assert normalize_value("temporality", "syn") == "SYNCHRONOUS"
        assert normalize_value("temporality", "sync") == "SYNCHRONOUS"

    def test_unknown_token_fails_loudly(self):
        with pytest.raises(UnknownTokenError) as err:
            normalize_value("polarity", "froz")
        assert err.value.dimension == "polarity"
        assert err.value.raw == "froz"

    @given(
        dim=st.sampled_from(CORE_DIMENSIONS),
        value=st.data(),
    )
    def test_idempotence(self, dim, value):
        normalized = value.draw(st.sampled_from(VALUE_SETS[dim]))
        raw = stringify_value(dim, normalized)
        assert normalize_value(dim, raw) == normalized


class TestLookupRst:
    def test_cause_mono_ns(self):
        profile = lookup_rst(RstMappingKey("Cause", "Cause", ARITY_MONO, ORDER_N_S))
        assert profile == DimensionProfile(
            "POS", "CAUSAL", "OBJECTIVE", "BASIC", "CHRONOLOGICAL")

    def test_sequence_multi(self):
        profile = lookup_rst(RstMappingKey("Temporal", "Sequence", ARITY_MULTI, ORDER_ANY))
        assert profile == DimensionProfile(
            "POS", "ADDITIVE", "OBJECTIVE", "NA", "CHRONOLOGICAL")

    def test_contrast_multi(self):
        profile = lookup_rst(RstMappingKey("Contrast", "Contrast", ARITY_MULTI, ORDER_ANY))
        assert profile == DimensionProfile("NEG", "ADDITIVE", "NS", "NA", "NS")

    def test_abbreviated_label_resolves(self):
        profile = lookup_rst(
            RstMappingKey("Elaboration", "elaboration-additional", ARITY_MONO, ORDER_N_S))
        assert profile.basic_operation == "ADDITIVE"

    def test_embedded_suffix_stripped(self):
        a = lookup_rst(RstMappingKey("Elaboration", "elaboration-additional-e",
                                     ARITY_MONO, ORDER_N_S))
        b = lookup_rst(RstMappingKey("Elaboration", "elaboration-additional",
                                     ARITY_MONO, ORDER_N_S))
        assert a == b

    def test_unknown_label(self):
        with pytest.raises(UnknownLabelError):
            lookup_rst(RstMappingKey("X", "no-such-relation", ARITY_MONO, ORDER_N_S))

    def test_totality_over_embedded_rows(self):
        table = tables.load_embedded_tables()
        for row in table.rst_rows:
            profile = lookup_rst(
                RstMappingKey(row.class_label, row.end_label, row.arity, row.order))
            for dim in DIMENSIONS:
                assert profile.value(dim) in VALUE_SETS[dim]


class TestLookupPdtb:
    def test_cause_reason(self):
        profile = lookup_pdtb(PdtbMappingKey("Cause", "Reason", ORDER_A1_A2))
        assert profile == DimensionProfile(
            "POS", "CAUSAL", "OBJECTIVE", "NONBASIC", "ANTICHRONOLOGICAL")

    def test_synchronous(self):
        profile = lookup_pdtb(PdtbMappingKey("Synchronous", "", ORDER_ANY))
        assert profile == DimensionProfile(
            "POS", "ADDITIVE", "OBJECTIVE", "NA", "SYNCHRONOUS")

    def test_condition_arg2_as_cond(self):
        profile = lookup_pdtb(PdtbMappingKey("Condition", "arg2-as-cond", ORDER_A1_A2))
        assert profile == DimensionProfile(
            "POS", "CAUSAL", "NS", "NONBASIC", "NS", conditional="TRUE")

    def test_unknown_level2(self):
        with pytest.raises(UnknownLabelError):
            lookup_pdtb(PdtbMappingKey("NotAClass", "", ORDER_ANY))

    def test_totality_over_embedded_rows(self):
        table = tables.load_embedded_tables()
        for row in table.pdtb_rows:
            profile = lookup_pdtb(
                PdtbMappingKey(row.level2_class, row.end_label, row.arg_order))
            for dim in DIMENSIONS:
                assert profile.value(dim) in VALUE_SETS[dim]


class TestProfileProperties:
    def test_additive_implies_na_on_all_rows(self):
        # stated table-wide: implication order does not apply to additive rows
        table = tables.load_embedded_tables()
        row_profiles = [profile_for_rst_row(r) for r in table.rst_rows]
        row_profiles += [profile_for_pdtb_row(r) for r in table.pdtb_rows]
        for profile in row_profiles:
            if profile.basic_operation == "ADDITIVE":
                assert profile.implication_order == "NA"

    def test_cross_dimension_value_rejected(self):
        with pytest.raises(UnknownTokenError):
            DimensionProfile("CAUSAL", "CAUSAL", "NS", "NS", "NS")

    def test_underspecified_profile(self):
        profile = underspecified_profile()
        for dim in CORE_DIMENSIONS:
            assert profile.value(dim) == "NS"
        for dim in BINARY_DIMENSIONS:
            assert profile.value(dim) == "FALSE"

    @given(a=profiles, b=profiles)
    def test_ns_merge_property(self, a, b):
        merged = merge_profiles([a, b])
        for dim in DIMENSIONS:
            va, vb = a.value(dim), b.value(dim)
            if va == vb:
                assert merged.value(dim) == va
            elif dim in BINARY_DIMENSIONS:
                assert merged.value(dim) == "TRUE"
            else:
                assert merged.value(dim) == "NS"

    @given(a=profiles, b=profiles)
    def test_encode_profile_injective(self, a, b):
        if a != b:
            assert encode_profile(a) != encode_profile(b)
        else:
            assert encode_profile(a) == encode_profile(b)

    def test_encode_first_members(self):
        profile = DimensionProfile(
            *(VALUE_SETS[dim][0] for dim in DIMENSIONS))
        assert encode_profile(profile) == [0] * 9

    def test_encode_indices_in_range(self):
        profile = lookup_rst(RstMappingKey("Cause", "Cause", ARITY_MONO, ORDER_N_S))
        ids = encode_profile(profile)
        for dim, idx in zip(DIMENSIONS, ids):
            assert 0 <= idx < len(VALUE_SETS[dim])
            assert VALUE_SETS[dim][idx] == profile.value(dim)

    def test_roundtrip_dict(self):
        profile = lookup_pdtb(PdtbMappingKey("Cause", "Reason", ORDER_A1_A2))
        assert DimensionProfile.from_dict(profile.as_dict()) == profile
