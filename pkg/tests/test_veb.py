import random

import pytest

from roadmatch.errors import InputError
from roadmatch.veb import VebTree, next_power_of_two


def test_next_power_of_two():
    assert next_power_of_two(1) == 2
    assert next_power_of_two(2) == 2
    assert next_power_of_two(3) == 4
    assert next_power_of_two(25) == 32
    assert next_power_of_two(1024) == 1024


def test_basic_min():
    t = VebTree(24)
    for x in (3, 7, 2):
        t.insert(x)
    assert t.min() == 2
    t.delete(2)
    assert t.min() == 3


def test_contains_and_idempotence():
    t = VebTree(24)
    t.insert(5)
    t.insert(5)
    assert len(t) == 1
    assert t.contains(5)
    t.delete(5)
    t.delete(5)
    assert not t.contains(5)
    assert t.min() is None


def test_universe_boundaries():
    t = VebTree(24)  # universe 32, keys 1..31
    t.insert(1)
    t.insert(24)
    t.insert(31)
    assert t.min() == 1
    t.delete(1)
    assert t.min() == 24
    t.delete(24)
    assert t.min() == 31


def test_out_of_universe_rejected():
    t = VebTree(24)
    for bad in (0, 32, -1):
        with pytest.raises(InputError):
            t.insert(bad)
        with pytest.raises(InputError):
            t.contains(bad)


def test_empty_and_bool():
    t = VebTree(4)
    assert not t
    t.insert(3)
    assert t


@pytest.mark.parametrize("bound,ops,seed", [(24, 5000, 0), (500, 20000, 1), (2, 500, 2)])
def test_differential_against_sorted_set(bound, ops, seed):
    rng = random.Random(seed)
    t = VebTree(bound)
    reference: set[int] = set()
    hi = t.universe - 1
    for _ in range(ops):
        x = rng.randint(1, hi)
        op = rng.random()
        if op < 0.45:
            t.insert(x)
            reference.add(x)
        elif op < 0.9:
            t.delete(x)
            reference.discard(x)
        else:
            assert t.contains(x) == (x in reference)
        assert t.min() == (min(reference) if reference else None)
        assert len(t) == len(reference)
