"""
Random-forest regression on standardized features.

Trees are grown by exhaustive variance-reduction splits and stored as flat
node arrays (feature, threshold, left, right, value), with feature -1 marking
a leaf. For prediction all trees are packed into one node table, so a batch of
inputs walks every tree at once.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..rng import substream
from ..runtime import ordered_map

logger = logging.getLogger(__name__)

LEAF = -1
PREDICT_BATCH = 8192
STEPS_PER_COMPACTION = 3


@dataclass(frozen=True, eq=False)
class RegressionTree:
    """One fitted tree; node 0 is the root"""
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def n_nodes(self) -> int:
        return int(self.feature.size)

    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=int)
        # children always have larger indices than their parent
        for node in range(self.n_nodes):
            if self.feature[node] != LEAF:
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
        return int(depths.max())

    def predict(self, z: np.ndarray) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=float))
        node = np.zeros(z.shape[0], dtype=int)
        rows = np.arange(z.shape[0])
        while True:
            feat = self.feature[node]
            inner = feat != LEAF
            if not inner.any():
                return self.value[node]
            r = rows[inner]
            n = node[inner]
            go_left = z[r, feat[inner]] <= self.threshold[n]
            node[inner] = np.where(go_left, self.left[n], self.right[n])

    def to_dict(self) -> Dict[str, list]:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, list]) -> "RegressionTree":
        tree = cls(
            feature=np.array(data["feature"], dtype=int),
            threshold=np.array(data["threshold"], dtype=float),
            left=np.array(data["left"], dtype=int),
            right=np.array(data["right"], dtype=int),
            value=np.array(data["value"], dtype=float),
        )
        tree.check()
        return tree

    def check(self) -> None:
        """
        Raises:
            ValueError: If the node arrays do not describe a valid tree
        """
        n = self.n_nodes
        if n == 0:
            raise ValueError("Tree has no nodes")
        for name in ("threshold", "left", "right", "value"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"Tree array '{name}' has {getattr(self, name).size} entries, expected {n}")
        inner = self.feature != LEAF
        children = np.concatenate([self.left[inner], self.right[inner]])
        parents = np.concatenate([np.nonzero(inner)[0]] * 2)
        if children.size and (children.max() >= n or np.any(children <= parents)):
            raise ValueError("Tree child indices are out of range")


def _best_split(x: np.ndarray, y: np.ndarray, min_leaf: int) -> Optional[Tuple[int, float]]:
    """
    Lowest-SSE split of the node holding rows ``x``/``y``.

    Only positions between two distinct feature values that leave at least
    ``min_leaf`` rows on each side are considered. Ties go to the lower
    feature index, then to the earlier position.
    """
    n, p = x.shape
    if n < 2 * min_leaf:
        return None
    best_sse = np.inf
    best = None
    positions = np.arange(min_leaf - 1, n - min_leaf)
    n_left = positions + 1
    n_right = n - n_left
    for f in range(p):
        order = np.argsort(x[:, f], kind='stable')
        xs = x[order, f]
        ys = y[order]
        valid = xs[positions] < xs[positions + 1]
        if not valid.any():
            continue
        csum = np.cumsum(ys)
        csum2 = np.cumsum(ys * ys)
        sum_left = csum[positions]
        sum_right = csum[-1] - sum_left
        sse = (csum2[positions] - sum_left ** 2 / n_left) \
            + (csum2[-1] - csum2[positions] - sum_right ** 2 / n_right)
        sse = np.where(valid, sse, np.inf)
        i = int(np.argmin(sse))
        if sse[i] < best_sse:
            best_sse = sse[i]
            lo, hi = xs[positions[i]], xs[positions[i] + 1]
            threshold = 0.5 * (lo + hi)
            if threshold >= hi:
                threshold = lo
            best = (f, float(threshold))
    return best


def grow_tree(z: np.ndarray, y: np.ndarray, min_leaf: int = 2) -> RegressionTree:
    """
    Grow a tree until every leaf is pure or cannot be split further.

    Raises:
        ValueError: If min_leaf < 1 or there are fewer rows than min_leaf
    """
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    if min_leaf < 1:
        raise ValueError(f"min_leaf must be at least 1, got {min_leaf}")
    if z.shape[0] < min_leaf:
        raise ValueError(f"min_leaf ({min_leaf}) is larger than the training set ({z.shape[0]} rows)")

    feature: List[int] = []
    threshold: List[float] = []
    left: List[int] = []
    right: List[int] = []
    value: List[float] = []

    def new_node(rows: np.ndarray) -> int:
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(float(y[rows].mean()))
        return len(feature) - 1

    stack = [(new_node(np.arange(z.shape[0])), np.arange(z.shape[0]))]
    while stack:
        node, rows = stack.pop()
        ys = y[rows]
        if np.ptp(ys) == 0:
            continue
        split = _best_split(z[rows], ys, min_leaf)
        if split is None:
            continue
        f, t = split
        goes_left = z[rows, f] <= t
        left_rows, right_rows = rows[goes_left], rows[~goes_left]
        feature[node] = f
        threshold[node] = t
        left[node] = new_node(left_rows)
        right[node] = new_node(right_rows)
        stack.append((right[node], right_rows))
        stack.append((left[node], left_rows))

    return RegressionTree(
        feature=np.array(feature, dtype=int),
        threshold=np.array(threshold, dtype=float),
        left=np.array(left, dtype=int),
        right=np.array(right, dtype=int),
        value=np.array(value, dtype=float),
    )


class RandomForest:
    """Bootstrap ensemble of regression trees averaged at prediction time"""

    def __init__(self, trees: List[RegressionTree], min_leaf: int = 2, bootstrap: bool = True):
        if not trees:
            raise ValueError("A forest needs at least one tree")
        self.trees = list(trees)
        self.min_leaf = min_leaf
        self.bootstrap = bootstrap
        self._pack()

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    def _pack(self) -> None:
        sizes = [tree.n_nodes for tree in self.trees]
        offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.intp)
        feature = np.concatenate([t.feature for t in self.trees])
        left = np.concatenate([np.where(t.feature == LEAF, 0, t.left) + o for t, o in zip(self.trees, offsets)])
        right = np.concatenate([np.where(t.feature == LEAF, 0, t.right) + o for t, o in zip(self.trees, offsets)])
        self._inner = feature != LEAF
        own = np.arange(feature.size)
        self._feature = np.where(self._inner, feature, 0).astype(np.intp)
        self._threshold = np.concatenate([t.threshold for t in self.trees])
        # slot 2*node holds the right child, 2*node + 1 the left one; leaves loop onto themselves
        children = np.column_stack([np.where(self._inner, right, own), np.where(self._inner, left, own)])
        self._children = children.ravel().astype(np.intp)
        self._value = np.concatenate([t.value for t in self.trees])
        self._roots = offsets

    @classmethod
    def fit(cls, z: np.ndarray, y: np.ndarray, n_trees: int = 200, min_leaf: int = 2,
            bootstrap: bool = True, seed: int = 0, workers: int = 1) -> "RandomForest":
        """
        Grow ``n_trees`` trees; tree t resamples rows with ``substream(seed, t)``.

        Raises:
            ValueError: On n_trees < 1, min_leaf < 1 or min_leaf above the row count
        """
        z = np.asarray(z, dtype=float)
        y = np.asarray(y, dtype=float)
        n = z.shape[0]
        if n_trees < 1:
            raise ValueError(f"n_trees must be at least 1, got {n_trees}")
        if min_leaf < 1:
            raise ValueError(f"min_leaf must be at least 1, got {min_leaf}")
        if n < min_leaf:
            raise ValueError(f"min_leaf ({min_leaf}) is larger than the training set ({n} rows)")

        def grow(t: int) -> RegressionTree:
            rows = substream(seed, t).integers(0, n, n) if bootstrap else np.arange(n)
            return grow_tree(z[rows], y[rows], min_leaf=min_leaf)

        trees = ordered_map(grow, range(n_trees), workers)
        logger.debug(f"Grew {n_trees} trees, max depth {max(t.depth() for t in trees)}")
        return cls(trees, min_leaf=min_leaf, bootstrap=bootstrap)

    def predict(self, z: np.ndarray) -> np.ndarray:
        """
        Average of the per-tree leaf values for each row of ``z``.

        Every (row, tree) lane walks its own tree; lanes that reached a leaf
        are dropped from the batch every few steps.
        """
        z = np.atleast_2d(np.asarray(z, dtype=float))
        n_trees = self._roots.size
        out = np.empty(z.shape[0])
        for start in range(0, z.shape[0], PREDICT_BATCH):
            chunk = np.ascontiguousarray(z[start:start + PREDICT_BATCH])
            n_rows, n_features = chunk.shape
            flat = chunk.ravel()

            leaf = np.tile(self._roots, n_rows)
            lane = np.arange(leaf.size)
            live = self._inner[leaf]
            node, lane = leaf[live], lane[live]
            base = (lane // n_trees) * n_features
            while node.size:
                for _ in range(STEPS_PER_COMPACTION):
                    x = flat[base + self._feature[node]]
                    node = self._children[2 * node + (x <= self._threshold[node])]
                done = ~self._inner[node]
                leaf[lane[done]] = node[done]
                keep = ~done
                node, lane, base = node[keep], lane[keep], base[keep]

            out[start:start + n_rows] = self._value[leaf].reshape(n_rows, n_trees).mean(axis=1)
        return out

    def to_dict(self) -> dict:
        return {
            "n_trees": self.n_trees,
            "min_leaf": self.min_leaf,
            "bootstrap": self.bootstrap,
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RandomForest":
        trees = [RegressionTree.from_dict(t) for t in data["trees"]]
        if len(trees) != int(data["n_trees"]):
            raise ValueError(f"Forest declares {data['n_trees']} trees but stores {len(trees)}")
        return cls(trees, min_leaf=int(data["min_leaf"]), bootstrap=bool(data["bootstrap"]))
