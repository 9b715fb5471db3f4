"""Elliptic hypergeometric limits"""

__version__ = "0.1.0"
__author__ = "Devin Sevilla"
__description__ = (
    "Verifies the elliptic beta evaluation and the basic hypergeometric identities "
    "obtained from it as limits"
)
