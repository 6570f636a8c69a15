"""Exact all-genus equivariant Gromov-Witten correlators of [C^r/G] for finite
abelian G, by stable-graph sums with a quantized-operator cross-check."""

__version__ = "0.1.0"
