# Copyright (c) 2026, nearfield-noise contributors
"""Thermal near-field noise above metal surfaces and what it does to
trapped ions, magnetically trapped atoms and guided matter waves."""

__version__ = "0.3.0"
