"""Passing convex polytopes through planar windows."""
