"""Height-balanced index of banned half-open subintervals of [0, 1).

Each node stores one banned interval [l, h) plus `take`, the total banned
length inside its subtree. Seed generation maps a uniform draw from the
available length onto [0, 1) minus the banned set by accumulating offsets
top-down, visiting at most height-many nodes. Intervals are only ever
inserted (banned), never removed, and adjacent intervals are not merged,
so the node count equals the number of emissions.
"""

from __future__ import annotations

import random
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class OverlapViolation(Exception):
    """New interval intersects a stored one; the kernels ban disjoint
    intervals by construction, so this signals a bug upstream."""


class Exhausted(Exception):
    """No available length left to sample from."""


class _Node:
    __slots__ = ("low", "high", "left", "right", "height", "take")

    def __init__(self, low: Fraction, high: Fraction):
        self.low = low
        self.high = high
        self.left: _Node | None = None
        self.right: _Node | None = None
        self.height = 1
        self.take = high - low


def _h(node: _Node | None) -> int:
    return node.height if node is not None else 0


def _take(node: _Node | None) -> Fraction:
    return node.take if node is not None else ZERO


def _refresh(node: _Node):
    node.height = 1 + max(_h(node.left), _h(node.right))
    node.take = (node.high - node.low) + _take(node.left) + _take(node.right)


def _rotate_right(node: _Node) -> _Node:
    pivot = node.left
    node.left = pivot.right
    pivot.right = node
    _refresh(node)
    _refresh(pivot)
    return pivot


def _rotate_left(node: _Node) -> _Node:
    pivot = node.right
    node.right = pivot.left
    pivot.left = node
    _refresh(node)
    _refresh(pivot)
    return pivot


def _rebalance(node: _Node) -> _Node:
    _refresh(node)
    balance = _h(node.left) - _h(node.right)
    if balance > 1:
        if _h(node.left.left) < _h(node.left.right):
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if balance < -1:
        if _h(node.right.right) < _h(node.right.left):
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


class BannedIntervalTree:
    """AVL tree over disjoint banned intervals with the take augmentation."""

    def __init__(self):
        self.root: _Node | None = None
        self.count = 0

    @property
    def banned_length(self) -> Fraction:
        return _take(self.root)

    def insert(self, low: Fraction, high: Fraction):
        if not low < high:
            raise ValueError(f"empty interval [{low}, {high})")
        self.root = self._insert(self.root, low, high)
        self.count += 1

    def _insert(self, node: _Node | None, low: Fraction, high: Fraction) -> _Node:
        if node is None:
            return _Node(low, high)
        if high <= node.low:
            node.left = self._insert(node.left, low, high)
        elif low >= node.high:
            node.right = self._insert(node.right, low, high)
        else:
            raise OverlapViolation(
                f"[{low}, {high}) intersects stored [{node.low}, {node.high})")
        return _rebalance(node)

    def covers(self, r: Fraction) -> bool:
        node = self.root
        while node is not None:
            if r < node.low:
                node = node.left
            elif r >= node.high:
                node = node.right
            else:
                return True
        return False

    def in_order(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Debug dump: (low, high, subtree take) in increasing order."""
        out = []

        def walk(node):
            if node is None:
                return
            walk(node.left)
            out.append((node.low, node.high, node.take))
            walk(node.right)

        walk(self.root)
        return out

    def shift(self, y: Fraction) -> Fraction:
        """Map y in [0, available) to the y-th point of [0,1) \\ banned:
        top-down offset accumulation, O(height)."""
        b = ZERO
        node = self.root
        while node is not None:
            temp = _take(node.left)
            if y + b + temp < node.low:
                node = node.left
            else:
                b += temp + (node.high - node.low)
                node = node.right
        return y + b


def generate_seed(tree: BannedIntervalTree, available: Fraction,
                  rng: random.Random, precision_bits: int = 160) -> Fraction:
    """Sample r in [0,1) outside every banned interval, with probability
    proportional to available-interval widths.

    y is drawn as a dyadic rational u * available with precision_bits
    random bits; the quantization distorts per-interval probabilities by at
    most 2**-precision_bits relative to the interval widths.
    """
    if available <= 0:
        raise Exhausted("no available length to sample from")
    u = Fraction(rng.getrandbits(precision_bits), 1 << precision_bits)
    return tree.shift(u * available)
