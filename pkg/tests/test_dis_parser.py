"""`.dis` parsing, span validation, and serialization round-trips."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimrel.dis_parser import (
    KIND_NUCLEUS,
    KIND_ROOT,
    KIND_SATELLITE,
    RstNode,
    parse_dis,
    serialize_dis,
)
from dimrel.errors import ParseError, SpanInconsistencyError

from conftest import fixture_path


def random_tree(rng, first_edu=1, depth=0):
    """Random well-formed tree over consecutive EDUs; returns (node, next_edu)."""
    if depth >= 3 or rng.random() < 0.4:
        leaf = RstNode(
            kind=rng.choice([KIND_NUCLEUS, KIND_SATELLITE]),
            span=(first_edu, first_edu),
            rel2par=rng.choice(["List", "elaboration-additional", "span"]),
            text=f"edu {first_edu} text",
        )
        return leaf, first_edu + 1
    children = []
    edu = first_edu
    for _ in range(rng.randint(2, 4)):
        child, edu = random_tree(rng, edu, depth + 1)
        children.append(child)
    node = RstNode(
        kind=KIND_NUCLEUS if depth else KIND_ROOT,
        span=(first_edu, edu - 1),
        rel2par="List" if depth else None,
        children=children,
    )
    return node, edu


class TestParse:
    def test_single_leaf_document(self):
        tree = parse_dis("( Root (leaf 1) (rel2par span) (text _!Hi!_) )")
        assert tree.is_leaf
        assert tree.text == "Hi"
        assert tree.span == (1, 1)

    def test_two_edu_fixture(self):
        with open(fixture_path("tiny.dis")) as fh:
            tree = parse_dis(fh.read())
        assert tree.kind == KIND_ROOT
        assert len(tree.children) == 2
        satellite = tree.children[1]
        assert satellite.kind == KIND_SATELLITE
        assert satellite.rel2par == "elaboration-additional"
        assert [leaf.text for leaf in tree.leaves()] == [
            "The committee approved the plan.",
            "which had been drafted in May.",
        ]

    def test_text_payload_may_contain_parens(self):
        with open(fixture_path("doc.dis")) as fh:
            tree = parse_dis(fh.read())
        assert tree.leaves()[1].text == "Costs fell (again)."

    def test_unbalanced_parens(self):
        with pytest.raises(ParseError):
            parse_dis("( Root (span 1 2) ( Nucleus (leaf 1)")

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            parse_dis("( Root (span 1 2)\n  ( Wrong (leaf 1) ) )")
        assert err.value.line == 2

    def test_missing_span(self):
        with pytest.raises(ParseError):
            parse_dis("( Root (rel2par span) )")

    def test_noncontiguous_children(self):
        bad = """( Root (span 1 3)
          ( Nucleus (leaf 1) (rel2par List) (text _!a!_) )
          ( Nucleus (leaf 3) (rel2par List) (text _!b!_) )
        )"""
        with pytest.raises(SpanInconsistencyError):
            parse_dis(bad)

    def test_span_not_union_of_children(self):
        bad = """( Root (span 1 3)
          ( Nucleus (leaf 1) (rel2par List) (text _!a!_) )
          ( Nucleus (leaf 2) (rel2par List) (text _!b!_) )
        )"""
        with pytest.raises(SpanInconsistencyError):
            parse_dis(bad)

    def test_leaf_without_text(self):
        with pytest.raises(SpanInconsistencyError):
            parse_dis("( Root (leaf 1) (rel2par span) )")


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["tiny.dis", "doc.dis"])
    def test_fixture_round_trip(self, name):
        with open(fixture_path(name)) as fh:
            tree = parse_dis(fh.read())
        assert parse_dis(serialize_dis(tree)) == tree

    @given(seed=st.integers(0, 10_000))
    def test_random_tree_round_trip(self, seed):
        tree, _ = random_tree(random.Random(seed))
        assert parse_dis(serialize_dis(tree)) == tree
