"""Construction, search and exact verification of LCD codes over GF(2), GF(3), GF(4)."""

__version__ = "0.1.0"
