"""Extract guarded non-deterministic FSMs from collection-backed API classes."""

__version__ = "0.1.0"
