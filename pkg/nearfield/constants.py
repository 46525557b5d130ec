# Copyright (c) 2026, nearfield-noise contributors
# SI values, CODATA via scipy

from scipy import constants as _codata

HBAR = _codata.hbar
K_B = _codata.k
EPSILON_0 = _codata.epsilon_0
MU_0 = _codata.mu_0
C = _codata.c
ELEMENTARY_CHARGE = _codata.e
BOHR_MAGNETON = _codata.physical_constants["Bohr magneton"][0]
AMU = _codata.physical_constants["atomic mass constant"][0]

MICROMETRE = 1e-6
TWO_PI = 2.0 * _codata.pi
