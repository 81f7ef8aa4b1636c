"""Branched Galois covers of the projective line: Nielsen classes, pullbacks, obstructions."""

from .groups import Group, ConjClass, Subgroup, make_group

__all__ = ["Group", "ConjClass", "Subgroup", "make_group"]
