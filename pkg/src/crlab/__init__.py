"""Verification lab for CR Yamabe identities and the extremal family on the Heisenberg group."""

__version__ = "0.1.0"
