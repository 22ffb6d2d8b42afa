"""Weak commutativity groups chi(H), the group nu(H) and the machinery to compute with them."""

__version__ = "0.1.0"
