import random
from fractions import Fraction

import pytest

from roenum.interval_tree import (BannedIntervalTree, Exhausted,
                                  OverlapViolation, generate_seed)

F = Fraction


def test_insert_take():
    tree = BannedIntervalTree()
    tree.insert(F(1, 4), F(1, 2))
    assert tree.banned_length == F(1, 4)


def test_insert_additivity_and_order():
    tree = BannedIntervalTree()
    tree.insert(F(0), F(1, 4))
    tree.insert(F(1, 2), F(3, 4))
    assert tree.banned_length == F(1, 2)
    assert [(l, h) for l, h, _ in tree.in_order()] == \
        [(F(0), F(1, 4)), (F(1, 2), F(3, 4))]


def test_overlap_rejected():
    tree = BannedIntervalTree()
    tree.insert(F(1, 4), F(1, 2))
    with pytest.raises(OverlapViolation):
        tree.insert(F(1, 8), F(3, 8))


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        BannedIntervalTree().insert(F(1, 2), F(1, 2))


def test_shift_hand_walks():
    # empty tree: identity
    assert BannedIntervalTree().shift(F(1, 3)) == F(1, 3)
    # one banned interval starting at 0: everything shifts past it
    tree = BannedIntervalTree()
    tree.insert(F(0), F(1, 2))
    assert tree.shift(F(1, 8)) == F(5, 8)
    # banned interval in the middle: low draws stay put
    tree = BannedIntervalTree()
    tree.insert(F(1, 4), F(1, 2))
    assert tree.shift(F(1, 8)) == F(1, 8)
    assert tree.shift(F(1, 4)) == F(1, 2)  # lands just past the ban


def test_generate_seed_requires_space():
    tree = BannedIntervalTree()
    tree.insert(F(0), F(1))
    with pytest.raises(Exhausted):
        generate_seed(tree, F(0), random.Random(0))


def _reference_shift(intervals, y):
    # sorted-list reference for the offset accumulation
    b = F(0)
    for low, high in sorted(intervals):
        if y + b < low:
            break
        b += high - low
    return y + b


def _random_disjoint_intervals(rng, count):
    cuts = sorted(rng.sample(range(1, 4 * count + 1), 2 * count))
    return [(F(cuts[2 * i], 4 * count + 2), F(cuts[2 * i + 1], 4 * count + 2))
            for i in range(count)]


@pytest.mark.parametrize("count", [1, 3, 10, 100, 1000])
def test_shift_matches_reference(count):
    rng = random.Random(count)
    intervals = _random_disjoint_intervals(rng, count)
    tree = BannedIntervalTree()
    order = intervals[:]
    rng.shuffle(order)
    for low, high in order:
        tree.insert(low, high)
    available = 1 - tree.banned_length
    for k in range(200):
        y = F(k, 200) * available
        r = tree.shift(y)
        assert r == _reference_shift(intervals, y)
        assert not tree.covers(r)
        assert F(0) <= r < F(1)


def test_shift_is_strictly_increasing():
    rng = random.Random(7)
    tree = BannedIntervalTree()
    for low, high in _random_disjoint_intervals(rng, 50):
        tree.insert(low, high)
    available = 1 - tree.banned_length
    values = [tree.shift(F(k, 500) * available) for k in range(500)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_take_consistency_after_rebalances():
    rng = random.Random(3)
    tree = BannedIntervalTree()
    for low, high in _random_disjoint_intervals(rng, 500):
        tree.insert(low, high)

    def recompute(node):
        if node is None:
            return Fraction(0)
        left, right = recompute(node.left), recompute(node.right)
        assert node.take == (node.high - node.low) + left + right
        return node.take

    assert recompute(tree.root) == tree.banned_length
    assert tree.count == 500


def test_height_stays_logarithmic():
    tree = BannedIntervalTree()
    n = 2000
    # adversarial sorted insertion order
    for i in range(n):
        tree.insert(F(2 * i, 2 * n), F(2 * i + 1, 2 * n))
    assert tree.root.height <= 2 * n.bit_length()


def test_generate_seed_avoids_banned():
    rng = random.Random(11)
    tree = BannedIntervalTree()
    for low, high in _random_disjoint_intervals(rng, 20):
        tree.insert(low, high)
    available = 1 - tree.banned_length
    for _ in range(500):
        r = generate_seed(tree, available, rng, precision_bits=40)
        assert not tree.covers(r)
