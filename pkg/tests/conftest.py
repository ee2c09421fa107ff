import cmath
import math

import pytest

from zzstab import CoxeterGraph, HeartDescriptor, StabilityData


@pytest.fixture
def a2():
    return CoxeterGraph.preset("A2")


@pytest.fixture
def a3():
    return CoxeterGraph.preset("A3")


@pytest.fixture
def d4():
    return CoxeterGraph.preset("D4")


@pytest.fixture
def example_charge():
    # rays at 5 and 125 degrees
    return (cmath.exp(1j * math.pi / 36), cmath.exp(1j * math.pi * 25 / 36))


@pytest.fixture
def example_sd(a2, example_charge):
    return StabilityData(HeartDescriptor.identity(a2), example_charge)
