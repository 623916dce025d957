"""Shared fixtures: the four running example systems."""

from fractions import Fraction as F
from pathlib import Path

import pytest

from gkzlog import CISpec, kernel_basis

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

GAUSS_MATRIX = ((1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, -1))
PYRAMID_MATRIX = ((1, 1, 1, 1, 1), (-1, 1, 1, -1, 0), (-1, -1, 1, 1, 0))
PYRAMID_BETA = (F(1), F(0), F(0))
PYRAMID_V = (F(0), F(0), F(0), F(0), F(1))

TWO_TRIANGLES_SETS = (
    (
        (0, 0, 0, 0),
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (-1, -1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (0, 0, -1, -1),
    ),
)
QUADRILATERAL_SETS = (((0, 0), (1, 1), (-1, 0), (1, -1), (1, 0)),)


def gauss_v(a, b):
    return (-F(a), -F(b), F(0), F(0))


def gauss_beta(a, b):
    return (-F(a), -F(b), F(0))


@pytest.fixture(scope="session")
def gauss_lattice():
    return kernel_basis(GAUSS_MATRIX)


@pytest.fixture(scope="session")
def pyramid_lattice():
    return kernel_basis(PYRAMID_MATRIX)


@pytest.fixture(scope="session")
def two_triangles_spec():
    return CISpec.from_lists(TWO_TRIANGLES_SETS)


@pytest.fixture(scope="session")
def quadrilateral_spec():
    return CISpec.from_lists(QUADRILATERAL_SETS)
