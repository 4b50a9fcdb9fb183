"""Exact-arithmetic engine for block-partition matrix-model moments,
genus-stratified generating functions, and fixed-Betti-number graph
generating functions."""

__version__ = "0.1.0"
