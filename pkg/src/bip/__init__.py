"""Exact combinatorics and geometry of Bruhat interval polytopes in S_n."""

from __future__ import annotations

__version__ = "0.1.0"
