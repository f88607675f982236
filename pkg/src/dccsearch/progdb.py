"""Island/cluster program database: sampling, storage, dedup, resets, snapshots.

Functions with identical size signatures share a cluster and its score;
islands evolve independently and are periodically reset from the survivors.
All mutations and sampling go through the owning database object so runs
are reproducible under a fixed seed.
"""

import json
import math
import random
from dataclasses import dataclass, field

from .errors import SnapshotError, StateError

SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class Candidate:
    id: str
    source: str
    length: int
    hash: int  # functional dedup hash of the priority vector


@dataclass
class Cluster:
    signature: tuple  # sizes over the ordered evaluation pairs
    score: float
    founder: Candidate
    members: list = field(default_factory=list)


@dataclass
class Island:
    id: int
    clusters: dict = field(default_factory=dict)  # signature -> Cluster
    n_j: int = 0
    dedup_index: set = field(default_factory=set)

    def sorted_clusters(self):
        return [self.clusters[sig] for sig in sorted(self.clusters)]

    def best_cluster(self):
        # score descending, signature ascending as the deterministic tie rule
        return max(self.sorted_clusters(), key=lambda c: (c.score, [-x for x in c.signature]))

    def best_score(self):
        return max(c.score for c in self.clusters.values())


@dataclass
class SearchConfig:
    num_islands: int = 10
    temperature: float = 0.1  # initial cluster-sampling temperature T
    period: int = 30_000  # sampling period P
    reset_interval: int = 1_200  # stored functions per island reset R
    decay_horizon: int | None = None  # LLM-temperature horizon D
    score_mode: str = "largest"
    eval_preset: str = "single"
    budget: int = 400_000
    post_optimal_budget: int = 20_000

    def __post_init__(self):
        if self.temperature <= 0:
            raise ValueError("initial temperature must be positive")
        if self.period < 1 or self.reset_interval < 1 or self.budget < 1:
            raise ValueError("period, reset interval, and budget must be >= 1")


def island_temperature(T, n_j, P):
    """T * (1 - (n_j mod P) / P); resets to T after every P stored functions."""
    return T * (1 - (n_j % P) / P)


def softmax_probabilities(scores, temperature):
    """Stabilized softmax over cluster scores."""
    top = max(scores)
    exps = [math.exp((sc - top) / temperature) for sc in scores]
    total = sum(exps)
    return [e / total for e in exps]


@dataclass(frozen=True)
class PromptPair:
    island_id: int
    low: Candidate
    low_score: float
    high: Candidate | None = None  # None on a fresh island (single cluster)
    high_score: float = 0.0


class ProgramDatabase:
    def __init__(self, config, rng=None):
        self.config = config
        self.rng = rng if rng is not None else random.Random(0)
        self.islands = [Island(id=j) for j in range(config.num_islands)]
        self.stored_total = 0
        self.stored_since_reset = 0
        # run-loop counters, persisted so a restored run continues exactly
        self.processed = 0
        self.optimal_found_at = None

    # -- initialization ---------------------------------------------------

    def initialize(self, candidate, signature, score):
        """Seed every island with the same trivial priority function."""
        if any(i.clusters for i in self.islands):
            raise StateError("database already initialized")
        for island in self.islands:
            self._seed_island(island, candidate, tuple(signature), score)

    def _seed_island(self, island, candidate, signature, score):
        island.clusters = {
            signature: Cluster(
                signature=signature, score=score, founder=candidate, members=[candidate]
            )
        }
        island.n_j = 1
        island.dedup_index = {candidate.hash}

    # -- sampling ---------------------------------------------------------

    def sample_cluster(self, island):
        if not island.clusters:
            raise StateError(f"island {island.id} has no clusters")
        clusters = island.sorted_clusters()
        t_j = island_temperature(
            self.config.temperature, island.n_j, self.config.period
        )
        probs = softmax_probabilities([c.score for c in clusters], t_j)
        return self.rng.choices(clusters, weights=probs, k=1)[0]

    def sample_member(self, cluster):
        if not cluster.members:
            raise StateError("cluster has no members")
        lengths = [m.length for m in cluster.members]
        lo, hi = min(lengths), max(lengths)
        weights = [math.exp(-(ln - lo) / (hi - lo + 1e-6)) for ln in lengths]
        return self.rng.choices(cluster.members, weights=weights, k=1)[0]

    def sample_prompt_pair(self):
        """Uniform island, two distinct clusters, members ordered by score."""
        if all(not i.clusters for i in self.islands):
            raise StateError("database is empty")
        island = self.rng.choice(self.islands)
        clusters = island.sorted_clusters()
        if len(clusters) < 2:
            only = clusters[0]
            return PromptPair(
                island_id=island.id,
                low=self.sample_member(only),
                low_score=only.score,
            )
        first = self.sample_cluster(island)
        # without replacement: renormalize over the remaining clusters
        rest = [c for c in clusters if c.signature != first.signature]
        t_j = island_temperature(
            self.config.temperature, island.n_j, self.config.period
        )
        probs = softmax_probabilities([c.score for c in rest], t_j)
        second = self.rng.choices(rest, weights=probs, k=1)[0]
        low, high = sorted(
            [first, second], key=lambda c: (c.score, list(c.signature))
        )
        return PromptPair(
            island_id=island.id,
            low=self.sample_member(low),
            low_score=low.score,
            high=self.sample_member(high),
            high_score=high.score,
        )

    # -- storage ----------------------------------------------------------

    def store(self, island_id, candidate, result):
        """Returns "stored", "duplicate", or "discarded"."""
        if not 0 <= island_id < len(self.islands):
            raise StateError(f"unknown island {island_id}")
        if result.status != "ok":
            return "discarded"
        island = self.islands[island_id]
        if candidate.hash in island.dedup_index:
            return "duplicate"
        signature = tuple(result.sizes)
        cluster = island.clusters.get(signature)
        if cluster is None:
            island.clusters[signature] = Cluster(
                signature=signature,
                score=result.score,
                founder=candidate,
                members=[candidate],
            )
        else:
            cluster.members.append(candidate)
        island.dedup_index.add(candidate.hash)
        island.n_j += 1
        self.stored_total += 1
        self.stored_since_reset += 1
        return "stored"

    def reset_due(self):
        return self.stored_since_reset >= self.config.reset_interval

    def reset_islands(self):
        """Clear the worst half; reseed each from a surviving island's best founder."""
        ranked = sorted(
            self.islands, key=lambda i: (i.best_score(), -i.id), reverse=True
        )
        half = len(self.islands) // 2
        survivors = ranked[: len(self.islands) - half]
        cleared = ranked[len(self.islands) - half :]
        report = []
        for island in cleared:
            source = self.rng.choice(survivors)
            best = source.best_cluster()
            self._seed_island(island, best.founder, best.signature, best.score)
            report.append((island.id, source.id))
        self.stored_since_reset = 0
        return report

    def best_score(self):
        return max(i.best_score() for i in self.islands if i.clusters)

    # -- snapshots --------------------------------------------------------

    def to_dict(self):
        def cand(c):
            return {"id": c.id, "source": c.source, "length": c.length, "hash": c.hash}

        return {
            "version": SNAPSHOT_VERSION,
            "config": self.config.__dict__,
            "islands": [
                {
                    "id": i.id,
                    "n_j": i.n_j,
                    "clusters": [
                        {
                            "signature": list(c.signature),
                            "score": c.score,
                            "founder": cand(c.founder),
                            "members": [cand(m) for m in c.members],
                        }
                        for c in i.sorted_clusters()
                    ],
                }
                for i in self.islands
            ],
            "counters": {
                "stored_total": self.stored_total,
                "stored_since_reset": self.stored_since_reset,
                "processed": self.processed,
                "optimal_found_at": self.optimal_found_at,
            },
            "rng_state": _encode_rng_state(self.rng.getstate()),
        }

    def snapshot(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @classmethod
    def restore(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(f"unsupported snapshot version {data.get('version')}")
        config = SearchConfig(**data["config"])
        db = cls(config)
        for idata in data["islands"]:
            island = db.islands[idata["id"]]
            island.n_j = idata["n_j"]
            for cdata in idata["clusters"]:
                members = [Candidate(**m) for m in cdata["members"]]
                cluster = Cluster(
                    signature=tuple(cdata["signature"]),
                    score=cdata["score"],
                    founder=Candidate(**cdata["founder"]),
                    members=members,
                )
                island.clusters[cluster.signature] = cluster
                island.dedup_index.update(m.hash for m in members)
        db.stored_total = data["counters"]["stored_total"]
        db.stored_since_reset = data["counters"]["stored_since_reset"]
        db.processed = data["counters"].get("processed", 0)
        db.optimal_found_at = data["counters"].get("optimal_found_at")
        db.rng.setstate(_decode_rng_state(data["rng_state"]))
        return db


def _encode_rng_state(state):
    version, internal, gauss_next = state
    return [version, list(internal), gauss_next]


def _decode_rng_state(data):
    version, internal, gauss_next = data
    return (version, tuple(internal), gauss_next)
