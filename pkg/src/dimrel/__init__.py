"""Discourse relation classification with cognitive coherence dimensions."""

__version__ = "0.1.0"
