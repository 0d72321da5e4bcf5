"""GCN training on the line expansion.

Pipeline: scatter vertex features to line nodes with P_v, run K convolution
layers with the renormalized operator, fuse back to vertices with P_v', and
train against masked cross-entropy with full-batch gradient descent. All
gradients are exact reverse-mode; arithmetic is float64 throughout.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, asdict

import numpy as np
import scipy.sparse as sp

from .expansions import (
    HYPEREDGE_SIMILAR,
    VERTEX_SIMILAR,
    LineExpansion,
    NormalizedOperator,
    ProjectionSet,
    line_expand,
    projections,
    renormalized_operator,
)
from .hypergraph import Hypergraph, HypergraphError, validate


class TrainingError(RuntimeError):
    pass


class NumericError(TrainingError):
    """Non-finite values appeared; carries the layer index."""

    def __init__(self, layer: int):
        super().__init__(f"non-finite values in layer {layer}")
        self.layer = layer


@dataclass
class Dataset:
    """Vertex features, labels (-1 where absent), and disjoint split masks."""

    features: np.ndarray       # |V| x d_i
    labels: np.ndarray         # |V| ints, -1 = unlabeled
    train_mask: np.ndarray
    val_mask: np.ndarray
    test_mask: np.ndarray
    num_classes: int

    def __post_init__(self):
        n = self.features.shape[0]
        for m in (self.train_mask, self.val_mask, self.test_mask):
            if m.shape != (n,):
                raise ValueError("mask shape mismatch")
        if (
            (self.train_mask & self.val_mask).any()
            or (self.train_mask & self.test_mask).any()
            or (self.val_mask & self.test_mask).any()
        ):
            raise ValueError("masks must be disjoint")
        if (self.labels[self.train_mask] < 0).any():
            raise ValueError("every train vertex needs a label")
        if self.features.ndim != 2 or self.features.shape[1] < 1:
            raise ValueError("features must be |V| x d_i with d_i >= 1")


@dataclass
class SamplingConfig:
    """Neighbor-sampling thresholds: delta_v caps vertex-similar neighbor
    sets (same vertex), delta_e caps hyperedge-similar sets (same edge)."""

    delta_v: int
    delta_e: int
    seed: int = 0

    def __post_init__(self):
        if self.delta_v < 1 or self.delta_e < 1:
            raise ValueError("sampling thresholds must be >= 1")


@dataclass
class SampledNeighborhood:
    """Per-kind neighbor sample with the |N|/threshold unbiasedness scale."""

    node: int
    vertex_similar: np.ndarray
    vertex_scale: float
    hyperedge_similar: np.ndarray
    hyperedge_scale: float


@dataclass
class TrainConfig:
    w_v: float = 1.0
    w_e: float = 1.0
    layers: int = 2
    hidden: int = 16
    lr: float = 0.01
    epochs: int = 200
    weight_decay: float = 0.0
    delta_v: int = 16
    delta_e: int = 16
    seed: int = 0
    activation: str = "relu"   # "relu" | "leaky-relu"
    leaky_slope: float = 0.01
    sampling: bool = False
    early_stopping: bool = False
    patience: int = 20


@dataclass
class Model:
    thetas: list[np.ndarray]
    w_v: float
    w_e: float
    activation: str
    leaky_slope: float = 0.01

    def copy(self) -> "Model":
        return Model(
            [t.copy() for t in self.thetas],
            self.w_v,
            self.w_e,
            self.activation,
            self.leaky_slope,
        )


@dataclass
class TrainReport:
    losses: list[float]
    val_accuracies: list[float]
    test_accuracy: float
    wall_time_s: float
    seed: int
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _activate(s: np.ndarray, kind: str, slope: float) -> np.ndarray:
    if kind == "relu":
        return np.maximum(s, 0.0)
    if kind == "leaky-relu":
        return np.where(s > 0, s, slope * s)
    raise ValueError(f"unknown activation {kind!r}")


def _activate_grad(s: np.ndarray, kind: str, slope: float) -> np.ndarray:
    if kind == "relu":
        return (s > 0).astype(np.float64)
    if kind == "leaky-relu":
        return np.where(s > 0, 1.0, slope)
    raise ValueError(f"unknown activation {kind!r}")


def init_params(
    d_in: int, hidden: int, d_out: int, layers: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """Glorot-uniform layer parameters chaining d_in -> hidden... -> d_out."""
    sizes = [d_in] + [hidden] * (layers - 1) + [d_out]
    thetas = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        thetas.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
    return thetas


def feature_project(p: ProjectionSet, x: np.ndarray) -> np.ndarray:
    """h0 = P_v x: each line node (v, e) copies the feature row of v."""
    if x.shape[0] != p.p_v.shape[1]:
        raise ValueError("feature rows must match vertex count")
    return p.p_v @ x


def representation_project(p: ProjectionSet, h: np.ndarray) -> np.ndarray:
    """y = P_v' h: convex per-vertex aggregation of line-node rows."""
    if h.shape[0] != p.p_v_back.shape[1]:
        raise ValueError("row count must match line-node count")
    return p.p_v_back @ h


def conv_forward(
    op: sp.csr_array,
    theta: np.ndarray,
    h: np.ndarray,
    activation: str,
    leaky_slope: float,
    apply_activation: bool,
    layer_index: int = 0,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One convolution layer. Returns (output, aggregated, preactivation)."""
    m = op @ h
    s = m @ theta
    out = _activate(s, activation, leaky_slope) if apply_activation else s
    if not np.isfinite(out).all():
        raise NumericError(layer_index)
    return out, m, s


def forward(
    model: Model, op: sp.csr_array, p: ProjectionSet, x: np.ndarray
) -> tuple[np.ndarray, list[tuple[np.ndarray, np.ndarray]]]:
    """Full pipeline; caches (aggregated, preactivation) per layer."""
    h = feature_project(p, x)
    caches = []
    last = len(model.thetas) - 1
    for k, theta in enumerate(model.thetas):
        h, m, s = conv_forward(
            op, theta, h, model.activation, model.leaky_slope, k != last, k
        )
        caches.append((m, s))
    return representation_project(p, h), caches


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    ex = np.exp(shifted)
    return ex / ex.sum(axis=1, keepdims=True)


def cross_entropy(logits: np.ndarray, labels: np.ndarray, mask: np.ndarray) -> float:
    """Mean negative log-likelihood over masked vertices."""
    if not mask.any():
        raise ValueError("empty mask")
    idx = np.flatnonzero(mask)
    probs = softmax(logits[idx])
    picked = probs[np.arange(len(idx)), labels[idx]]
    return float(-np.log(picked).mean())


def backward(
    model: Model,
    op: sp.csr_array,
    p: ProjectionSet,
    logits: np.ndarray,
    caches: list[tuple[np.ndarray, np.ndarray]],
    labels: np.ndarray,
    mask: np.ndarray,
    weight_decay: float = 0.0,
) -> list[np.ndarray]:
    """Exact gradients of the masked cross-entropy wrt every theta."""
    idx = np.flatnonzero(mask)
    d_logits = np.zeros_like(logits)
    probs = softmax(logits[idx])
    probs[np.arange(len(idx)), labels[idx]] -= 1.0
    d_logits[idx] = probs / len(idx)

    dh = p.p_v_back.T @ d_logits
    grads: list[np.ndarray] = [None] * len(model.thetas)  # type: ignore[list-item]
    last = len(model.thetas) - 1
    for k in range(last, -1, -1):
        m, s = caches[k]
        ds = dh if k == last else dh * _activate_grad(
            s, model.activation, model.leaky_slope
        )
        grads[k] = m.T @ ds + weight_decay * model.thetas[k]
        if k > 0:
            dh = op.T @ (ds @ model.thetas[k].T)
    return grads


def accuracy(logits: np.ndarray, labels: np.ndarray, mask: np.ndarray) -> float:
    idx = np.flatnonzero(mask)
    if len(idx) == 0:
        return 0.0
    return float((logits[idx].argmax(axis=1) == labels[idx]).mean())


def _neighbor_groups(le: LineExpansion) -> tuple[list[list[int]], list[list[int]]]:
    """Per line node: (vertex-similar neighbors, hyperedge-similar neighbors)."""
    by_vertex: dict[int, list[int]] = {}
    by_edge: dict[int, list[int]] = {}
    for i, (v, e) in enumerate(le.nodes):
        by_vertex.setdefault(v, []).append(i)
        by_edge.setdefault(e, []).append(i)
    vsim = []
    esim = []
    for i, (v, e) in enumerate(le.nodes):
        vsim.append([j for j in by_vertex[v] if j != i])
        esim.append([j for j in by_edge[e] if j != i])
    return vsim, esim


def sample_neighbors(
    le: LineExpansion,
    node: int,
    cfg: SamplingConfig,
    rng: np.random.Generator,
) -> SampledNeighborhood:
    """Uniform without-replacement sample of each neighbor set.

    Sets at or under their threshold are returned whole with scale 1;
    larger sets are cut to the threshold with scale |N|/threshold, making
    the scaled sampled sum an unbiased estimator of the full sum.
    """
    if not 0 <= node < le.num_nodes:
        raise IndexError(f"line node {node} out of range")
    vsim, esim = _neighbor_groups(le)

    def draw(neigh: list[int], threshold: int) -> tuple[np.ndarray, float]:
        arr = np.asarray(neigh, dtype=np.int64)
        if len(arr) <= threshold:
            return arr, 1.0
        pick = rng.choice(arr, size=threshold, replace=False)
        return np.sort(pick), len(arr) / threshold

    v_pick, v_scale = draw(vsim[node], cfg.delta_v)
    e_pick, e_scale = draw(esim[node], cfg.delta_e)
    return SampledNeighborhood(node, v_pick, v_scale, e_pick, e_scale)


def sampled_operator(
    le: LineExpansion, cfg: SamplingConfig, rng: np.random.Generator
) -> NormalizedOperator:
    """Renormalized operator over a per-node sampled neighborhood.

    Vertex-similar entries carry w_e, hyperedge-similar entries w_v, each
    scaled by |N|/threshold when cut; self-loops weigh w_v + w_e. Row-wise
    sampling can make the matrix asymmetric before normalization.
    """
    vsim, esim = _neighbor_groups(le)
    n = le.num_nodes
    rows, cols, data = [], [], []

    def add(i: int, neigh: list[int], threshold: int, weight: float):
        arr = np.asarray(neigh, dtype=np.int64)
        scale = 1.0
        if len(arr) > threshold:
            arr = rng.choice(arr, size=threshold, replace=False)
            scale = len(neigh) / threshold
        for j in arr:
            rows.append(i)
            cols.append(int(j))
            data.append(weight * scale)

    for i in range(n):
        add(i, vsim[i], cfg.delta_v, le.w_e)
        add(i, esim[i], cfg.delta_e, le.w_v)
    s = le.w_v + le.w_e
    a_tilde = sp.csr_array(
        (np.asarray(data), (rows, cols)), shape=(n, n)
    ) + s * sp.identity(n, format="csr")
    rowsum = np.asarray(a_tilde.sum(axis=1)).ravel()
    d_inv_sqrt = sp.diags_array(1.0 / np.sqrt(rowsum), format="csr")
    return NormalizedOperator(
        sp.csr_array(d_inv_sqrt @ a_tilde @ d_inv_sqrt), le.w_v, le.w_e, s
    )


def train(
    h: Hypergraph, dataset: Dataset, config: TrainConfig
) -> tuple[Model, TrainReport]:
    """Full-batch gradient descent; deterministic given the seed.

    Returns the best-validation model when a validation mask exists (and
    early stopping is enabled), otherwise the final model.
    """
    if not validate(h).ok:
        raise HypergraphError("hypergraph has empty hyperedges")
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    le = line_expand(h, config.w_v, config.w_e)
    p = projections(h)
    full_op = renormalized_operator(le).matrix
    x = np.asarray(dataset.features, dtype=np.float64)

    thetas = init_params(
        x.shape[1], config.hidden, dataset.num_classes, config.layers, rng
    )
    model = Model(thetas, config.w_v, config.w_e, config.activation, config.leaky_slope)

    scfg = SamplingConfig(config.delta_v, config.delta_e, config.seed)
    losses: list[float] = []
    val_accs: list[float] = []
    best_val = -1.0
    best_model = model.copy()
    since_best = 0
    for _epoch in range(config.epochs):
        op = (
            sampled_operator(le, scfg, rng).matrix if config.sampling else full_op
        )
        logits, caches = forward(model, op, p, x)
        loss = cross_entropy(logits, dataset.labels, dataset.train_mask)
        if config.weight_decay:
            loss += 0.5 * config.weight_decay * sum(
                float((t**2).sum()) for t in model.thetas
            )
        if not np.isfinite(loss):
            raise TrainingError(f"training diverged at epoch {_epoch}")
        grads = backward(
            model,
            op,
            p,
            logits,
            caches,
            dataset.labels,
            dataset.train_mask,
            config.weight_decay,
        )
        for t, g in zip(model.thetas, grads):
            t -= config.lr * g
        losses.append(loss)

        eval_logits, _ = forward(model, full_op, p, x)
        val = accuracy(eval_logits, dataset.labels, dataset.val_mask)
        val_accs.append(val)
        if dataset.val_mask.any():
            if val > best_val:
                best_val = val
                best_model = model.copy()
                since_best = 0
            else:
                since_best += 1
                if config.early_stopping and since_best > config.patience:
                    break
        else:
            best_model = model

    final = best_model if dataset.val_mask.any() else model
    final_logits, _ = forward(final, full_op, p, x)
    test_acc = accuracy(final_logits, dataset.labels, dataset.test_mask)
    report = TrainReport(
        losses=losses,
        val_accuracies=val_accs,
        test_accuracy=test_acc,
        wall_time_s=time.perf_counter() - start,
        seed=config.seed,
        config=asdict(config),
    )
    return final, report


def separable_toy(
    vertices_per_class: int = 10, seed: int = 0
) -> tuple[Hypergraph, Dataset]:
    """Two disjoint hyperedge clusters whose features equal their labels;
    linearly separable, so training should reach perfect test accuracy."""
    n = 2 * vertices_per_class
    left = tuple(range(vertices_per_class))
    right = tuple(range(vertices_per_class, n))
    edges = (left, left[: max(2, vertices_per_class // 2)],
             right, right[: max(2, vertices_per_class // 2)])
    h = Hypergraph(n, edges)
    labels = np.array([0] * vertices_per_class + [1] * vertices_per_class)
    feats = np.zeros((n, 2))
    feats[np.arange(n), labels] = 1.0
    rng = np.random.default_rng(seed)
    train_mask = np.zeros(n, dtype=bool)
    for cls_verts in (left, right):
        pick = rng.choice(cls_verts, size=max(2, vertices_per_class // 3), replace=False)
        train_mask[pick] = True
    test_mask = ~train_mask
    val_mask = np.zeros(n, dtype=bool)
    ds = Dataset(feats, labels, train_mask, val_mask, test_mask, 2)
    return h, ds


def value_hypergraph(table: np.ndarray) -> Hypergraph:
    """One hyperedge per (column, value) group of a categorical table: all
    rows sharing a value of a categorical feature form a hyperedge."""
    n, cols = table.shape
    edges = []
    for c in range(cols):
        values: dict = {}
        for r in range(n):
            values.setdefault(table[r, c], []).append(r)
        for val in sorted(values, key=str):
            edges.append(tuple(sorted(values[val])))
    return Hypergraph(n, tuple(edges))


def load_zoo(path: str, seed: int = 0) -> tuple[Hypergraph, Dataset]:
    """UCI Zoo: name, 16 categorical attributes, class in 1..7. Hyperedges
    group animals sharing an attribute value; split is 66 train / 35 test."""
    rows = []
    labels = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            rows.append([int(x) for x in parts[1:17]])
            labels.append(int(parts[17]) - 1)
    table = np.asarray(rows, dtype=np.int64)
    h = value_hypergraph(table)
    n = len(rows)
    labels_arr = np.asarray(labels)
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    train_mask = np.zeros(n, dtype=bool)
    train_mask[perm[:66]] = True
    test_mask = ~train_mask
    val_mask = np.zeros(n, dtype=bool)
    ds = Dataset(
        table.astype(np.float64),
        labels_arr,
        train_mask,
        val_mask,
        test_mask,
        int(labels_arr.max()) + 1,
    )
    return h, ds
