"""The search run loop: sample prompt, generate, evaluate, store, reset.

A single logical database owner serializes all mutations; LLM and
evaluator workers are stateless and communicate only through a transport.
The in-process transport pumps messages in order, so a run under the mock
client and a fixed seed is fully deterministic (byte-identical snapshots).
"""

import hashlib
import logging
import random
from collections import deque
from dataclasses import dataclass, field

from . import confgraph, evaluator, gateway, priolib
from .errors import StateError
from .evaluator import PRESETS, ScoreSpec
from .progdb import Candidate, ProgramDatabase

logger = logging.getLogger(__name__)


@dataclass
class RunState:
    processed: int = 0
    stored: int = 0
    duplicates: int = 0
    non_executable: int = 0
    invalid_priority: int = 0
    timeouts: int = 0
    best_score: float = 0.0
    best_scores_log: list = field(default_factory=list)  # (processed, best_score)
    optimal_found_at: int | None = None

    def to_dict(self):
        return dict(self.__dict__)


def candidate_id_for(prompt_id, completion, sequence):
    """Content hash making redelivered results idempotent."""
    digest = hashlib.sha256(
        f"{prompt_id}\x00{sequence}\x00{completion}".encode()
    ).hexdigest()
    return digest[:16]


class InProcessTransport:
    """Three in-memory queues with exactly-once delivery."""

    queue_names = ("prompts", "candidates", "results")

    def __init__(self):
        self.queues = {name: deque() for name in self.queue_names}

    def put(self, queue, message):
        self.queues[queue].append(message)

    def get(self, queue):
        q = self.queues[queue]
        return q.popleft() if q else None


class AmqpTransport:
    """RabbitMQ-backed transport (at-least-once); requires a broker URL.

    Queue topology (three durable queues named dcc.prompts, dcc.candidates,
    dcc.results, prefetch 1) is artifact plumbing; result handling stays
    idempotent via candidate ids.
    """

    queue_names = ("prompts", "candidates", "results")

    def __init__(self, broker_url):
        try:
            import pika
        except ImportError as exc:
            raise StateError("amqp transport requires the pika package") from exc
        try:
            self._connection = pika.BlockingConnection(pika.URLParameters(broker_url))
        except Exception as exc:
            raise StateError(f"broker unreachable: {exc}") from exc
        self._channel = self._connection.channel()
        self._channel.basic_qos(prefetch_count=1)
        for name in self.queue_names:
            self._channel.queue_declare(queue=f"dcc.{name}", durable=True)

    def put(self, queue, message):
        import json

        self._channel.basic_publish(
            exchange="", routing_key=f"dcc.{queue}", body=json.dumps(message)
        )

    def get(self, queue):
        import json

        method, _, body = self._channel.basic_get(f"dcc.{queue}", auto_ack=True)
        if method is None:
            return None
        return json.loads(body)


def queue_transport(mode, broker_url=None):
    if mode in ("in_process", "in-process"):
        return InProcessTransport()
    if mode == "amqp":
        if not broker_url:
            raise StateError("amqp transport requires a broker URL")
        return AmqpTransport(broker_url)
    raise ValueError(f"unknown transport mode {mode!r}")


def run_search(
    config,
    client,
    seed,
    template_id="baseline",
    transport=None,
    executor=None,
    checkpoint_path=None,
    resume_db=None,
):
    """Run the evolutionary loop; returns (RunState, ProgramDatabase).

    Deterministic under the mock client and a fixed seed.  On an
    unrecoverable client error the database is checkpointed (when
    ``checkpoint_path`` is set) before the exception propagates.
    """
    inputs = PRESETS[config.eval_preset]
    spec = ScoreSpec(config.score_mode)
    graphs = {pair: confgraph.get_graph(*pair) for pair in inputs.pairs}
    template = gateway.TEMPLATES[template_id]
    base_params = gateway.LlmParams(decay_horizon=config.decay_horizon)
    if transport is None:
        transport = InProcessTransport()

    if resume_db is not None:
        db = resume_db
    else:
        db = ProgramDatabase(config, rng=random.Random(seed))
        trivial = priolib.get("trivial")
        seed_result = evaluator.evaluate(trivial, inputs, spec, graphs=graphs)
        assert seed_result.ok, "trivial priority function must evaluate"
        db.initialize(
            Candidate(
                id="trivial",
                source=trivial.source,
                length=trivial.length,
                hash=seed_result.vector_hash,
            ),
            seed_result.sizes,
            seed_result.score,
        )

    state = RunState(best_score=db.best_score())
    state.processed = db.processed
    state.optimal_found_at = db.optimal_found_at
    state.best_scores_log.append((state.processed, state.best_score))
    seen_candidates = set()

    try:
        while state.processed < config.budget:
            pair = db.sample_prompt_pair()
            prompt_id = f"prompt-{state.processed}"
            prompt_text = gateway.render_prompt(
                template,
                pair.low.source,
                pair.high.source if pair.high is not None else None,
            )
            params = base_params
            if config.decay_horizon:
                island = db.islands[pair.island_id]
                params = base_params.with_temperature(
                    gateway.dynamic_temperature(
                        base_params.temperature, island.n_j, config.decay_horizon
                    )
                )
            transport.put(
                "prompts",
                {
                    "prompt_id": prompt_id,
                    "island_id": pair.island_id,
                    "text": prompt_text,
                    "llm_params": params.to_dict(),
                },
            )

            # LLM worker
            prompt_msg = transport.get("prompts")
            completion = client.generate(prompt_msg["text"], params)
            cid = candidate_id_for(prompt_msg["prompt_id"], completion, state.processed)
            source = gateway.extract_candidate(completion)
            transport.put(
                "candidates",
                {
                    "candidate_id": cid,
                    "prompt_id": prompt_msg["prompt_id"],
                    "island_id": prompt_msg["island_id"],
                    "source": source,
                },
            )

            # evaluator worker
            cand_msg = transport.get("candidates")
            f = priolib.external(cand_msg["source"], cand_msg["candidate_id"])
            result = evaluator.evaluate(
                f, inputs, spec, graphs=graphs, executor=executor
            )
            transport.put(
                "results",
                {
                    "candidate_id": cand_msg["candidate_id"],
                    "island_id": cand_msg["island_id"],
                    "source": cand_msg["source"],
                    "eval_result": result.to_record(),
                    "vector_hash": result.vector_hash,
                },
            )

            # database owner applies results in arrival order
            while True:
                res_msg = transport.get("results")
                if res_msg is None:
                    break
                if res_msg["candidate_id"] in seen_candidates:
                    continue  # redelivery; ignore
                seen_candidates.add(res_msg["candidate_id"])
                state.processed += 1
                db.processed = state.processed
                record = res_msg["eval_result"]
                outcome = db.store(
                    res_msg["island_id"],
                    Candidate(
                        id=res_msg["candidate_id"],
                        source=res_msg["source"],
                        length=len(res_msg["source"]),
                        hash=res_msg["vector_hash"],
                    ),
                    evaluator.EvalResult(
                        candidate_id=record["candidate_id"],
                        status=record["status"],
                        sizes=record["sizes"],
                        score=record["score"],
                    ),
                )
                if outcome == "stored":
                    state.stored += 1
                elif outcome == "duplicate":
                    state.duplicates += 1
                elif record["status"] == "invalid_priority":
                    state.invalid_priority += 1
                elif record["status"] == "timeout":
                    state.timeouts += 1
                else:
                    state.non_executable += 1
                if record["status"] == "ok":
                    if record["score"] > state.best_score:
                        state.best_score = record["score"]
                        state.best_scores_log.append(
                            (state.processed, state.best_score)
                        )
                    if (
                        inputs == evaluator.SINGLE
                        and state.optimal_found_at is None
                        and list(record["sizes"]) == evaluator.OPTIMAL_SINGLE_SIZES
                    ):
                        state.optimal_found_at = state.processed
                        db.optimal_found_at = state.processed
                        logger.info(
                            "optimal function found at processed=%d", state.processed
                        )
                if db.reset_due():
                    db.reset_islands()

            if (
                state.optimal_found_at is not None
                and state.processed
                >= state.optimal_found_at + config.post_optimal_budget
            ):
                break
    except Exception:
        if checkpoint_path:
            db.snapshot(checkpoint_path)
            logger.exception("run aborted; resumable snapshot at %s", checkpoint_path)
        raise

    return state, db
