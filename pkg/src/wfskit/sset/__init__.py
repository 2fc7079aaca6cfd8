"""Finite simplicial sets."""
