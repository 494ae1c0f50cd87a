"""End-to-end pipeline turning one matching task into n subtasks.

Stages: build the inverted index, train embeddings for its words and
entities, compose per-entry vectors, cluster them with k-means, then turn
each cluster's candidate mappings into a pair of locality modules.  The
final stage is an order-independent map over clusters gathered in cluster
id order, so it may run on several threads without affecting the output.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping as MappingT

import numpy as np

from .clustering import clusters_to_entries, kmeans
from .embedding import TrainingConfig, entry_vectors, train_embeddings
from .errors import InvariantError
from .lexindex import (LexConfig, LexKey, LexValue, Mapping, RELATIONS,
                       build_lexi, mappings_of)
from .locality import context_of
from .metrics import Alignment, size_ratio_task
from .ontology import EntityRef, Ontology, read_ontology, serialize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatchingTask:
    source: Ontology
    target: Ontology
    candidates: frozenset[Mapping]
    task_id: int = 0


@dataclass(frozen=True)
class Division:
    n: int
    subtasks: tuple[MatchingTask, ...]
    provenance: MappingT[str, object]


@dataclass(frozen=True)
class DivisionConfig:
    seed: int = 0
    alpha: int = 60
    max_subsets: int = 50
    dim: int = 64
    epochs: int = 100
    negatives: int = 10
    margin: float = 0.05
    learning_rate: float = 0.05
    kmeans_max_iters: int = 300
    workers: int = 1

    def provenance(self) -> dict[str, object]:
        return {
            "seed": self.seed,
            "alpha": self.alpha,
            "max_subsets": self.max_subsets,
            "dim": self.dim,
            "epochs": self.epochs,
            "negatives": self.negatives,
            "margin": self.margin,
            "learning_rate": self.learning_rate,
        }


def subtask_from_cluster(cluster: Iterable[tuple[LexKey, LexValue]],
                         o1: Ontology, o2: Ontology,
                         task_id: int = 0) -> MatchingTask:
    """Candidate mappings of one entry cluster plus their context modules."""
    cluster = tuple(cluster)
    if not cluster:
        raise ValueError("cluster must be non-empty")
    candidates = mappings_of(cluster)
    left, right = context_of(candidates, o1, o2)
    return MatchingTask(left.ontology, right.ontology, candidates, task_id)


def divide(o1: Ontology, o2: Ontology, n: int,
           cfg: DivisionConfig | None = None) -> Division:
    """Divide the matching task (o1, o2) into n subtasks."""
    if cfg is None:
        cfg = DivisionConfig()
    if n < 1:
        raise ValueError("n must be ≥ 1")

    lexi = build_lexi(o1, o2, LexConfig(alpha=cfg.alpha,
                                        max_subsets=cfg.max_subsets))
    if n > len(lexi):
        raise ValueError(
            f"n={n} exceeds the number of index entries ({len(lexi)}); "
            "choose a smaller n")

    emb_seq, km_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    emb_seed = int(emb_seq.generate_state(1, np.uint64)[0])
    km_seed = int(km_seq.generate_state(1, np.uint64)[0])

    space = train_embeddings(lexi, TrainingConfig(
        dim=cfg.dim, epochs=cfg.epochs, negatives=cfg.negatives,
        margin=cfg.margin, learning_rate=cfg.learning_rate, seed=emb_seed))
    points = entry_vectors(lexi, space)
    assignment = kmeans(points, n, km_seed, cfg.kmeans_max_iters)
    clusters = clusters_to_entries(assignment, lexi)
    if any(not c for c in clusters):
        raise InvariantError("k-means returned an empty cluster")

    def build(item: tuple[int, tuple]) -> MatchingTask:
        i, cluster = item
        return subtask_from_cluster(cluster, o1, o2, task_id=i)

    items = list(enumerate(clusters))
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            subtasks = tuple(pool.map(build, items))
    else:
        subtasks = tuple(build(it) for it in items)
    logger.info("divided task into %d subtasks from %d index entries",
                n, len(lexi))
    return Division(n, subtasks, cfg.provenance())


# --- alignment / division file formats ------------------------------------

def write_alignment_tsv(mappings: Iterable[Mapping], path) -> None:
    """`e1-iri \\t e2-iri \\t relation(=,<,>) \\t confidence`, sorted."""
    rows = sorted(mappings, key=lambda m: m.key)
    with open(path, "w", encoding="utf-8") as fh:
        for m in rows:
            fh.write(f"{m.e1.iri}\t{m.e2.iri}\t{m.relation}"
                     f"\t{m.confidence:.6f}\n")


def read_alignment_tsv(path) -> Alignment:
    """Read mappings from TSV; missing confidence defaults to 1.0."""
    mappings: set[Mapping] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (3, 4):
                raise ValueError(
                    f"{path}:{lineno}: expected 3 or 4 tab-separated columns")
            e1, e2, rel = parts[0], parts[1], parts[2]
            if rel not in RELATIONS:
                raise ValueError(f"{path}:{lineno}: bad relation {rel!r}")
            conf = float(parts[3]) if len(parts) == 4 else 1.0
            mappings.add(Mapping(EntityRef(e1), EntityRef(e2), rel, conf))
    return Alignment(frozenset(mappings))


def write_division(div: Division, orig: tuple[Ontology, Ontology],
                   out_dir) -> Path:
    """Write `task_<i>/{source.ofn,target.ofn,candidates.tsv}` + division.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    task_rows = []
    for task in div.subtasks:
        task_dir = out / f"task_{task.task_id}"
        task_dir.mkdir(exist_ok=True)
        (task_dir / "source.ofn").write_text(serialize(task.source),
                                             encoding="utf-8")
        (task_dir / "target.ofn").write_text(serialize(task.target),
                                             encoding="utf-8")
        write_alignment_tsv(task.candidates, task_dir / "candidates.tsv")
        ratio = size_ratio_task(task, orig)
        task_rows.append({
            "task": task.task_id,
            "source_signature": len(task.source.signature),
            "target_signature": len(task.target.signature),
            "candidates": len(task.candidates),
            "size_ratio": ratio,
        })
    payload = {
        "n": div.n,
        "tasks": task_rows,
        "size_ratio_total": sum(r["size_ratio"] for r in task_rows),
        "provenance": dict(div.provenance),
    }
    (out / "division.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    return out


def read_division(path) -> Division:
    """Load a division directory written by `write_division`."""
    root = Path(path)
    meta_path = root / "division.json"
    if not meta_path.is_file():
        raise FileNotFoundError(f"not a division directory: {root}")
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    subtasks = []
    for row in meta["tasks"]:
        task_dir = root / f"task_{row['task']}"
        source = read_ontology(task_dir / "source.ofn")
        target = read_ontology(task_dir / "target.ofn")
        candidates = read_alignment_tsv(task_dir / "candidates.tsv").mappings
        subtasks.append(MatchingTask(source, target, candidates,
                                     task_id=row["task"]))
    return Division(meta["n"], tuple(subtasks), meta.get("provenance", {}))
