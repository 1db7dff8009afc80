"""Finite-module Tate cohomology engine with dual numba/numpy kernels."""
