"""Exact characters, convergence certificates and finite abelian group tools
for totally bounded group topologies on countable abelian groups."""

__version__ = "0.1.0"
