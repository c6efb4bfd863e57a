"""Stable module categories of small triangle algebras over F_p: syzygies,
stable Hom, Krull-Schmidt decomposition and adjoints of the Heller operator."""

__version__ = "0.1.0"
