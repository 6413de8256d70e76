"""Finitely presented functors over Z, Z/n and GF(p)."""
