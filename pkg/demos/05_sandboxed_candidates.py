"""Evaluate untrusted candidate sources in an isolated subprocess.

Model-generated code cannot be trusted to terminate or behave, so
unrecognized sources run in a separate worker process that talks JSON
over stdin/stdout, sees only a restricted namespace plus a read-only
graph view, and gets killed at a wall-clock timeout.  Requires the
companion dccsandbox package (installed from sandbox/).
"""

from dccsearch import confgraph, evaluator, priolib
from dccsearch.errors import EvaluationError
from dccsearch.evaluator import EvalInput
from dccsearch.sandboxing import SubprocessExecutor

executor = SubprocessExecutor(timeout=10)

# A hand-written candidate the registry does not recognize: prefer
# low-degree vertices, break ties toward the lexicographic front.
candidate = priolib.external(
    "def priority(v, G, n, s):\n"
    "    return (-float(G.degree(v)), v)\n"
)
result = evaluator.evaluate(
    candidate, EvalInput(((6, 1), (7, 1), (8, 1))), executor=executor
)
print("low-degree candidate:", result.status, "sizes", result.sizes)

# A hostile candidate: the worker is killed at the timeout and the
# evaluation simply reports it as non-executable.
hostile = priolib.external(
    "def priority(v, G, n, s):\n    while True:\n        pass\n"
)
quick = SubprocessExecutor(timeout=1.0)
result = evaluator.evaluate(hostile, EvalInput(((3, 1),)), executor=quick)
print("hostile candidate:", result.status)

# The parent process is unharmed and keeps evaluating.
follow_up = evaluator.evaluate(priolib.get("vt-equivalent"))
print("follow-up evaluation:", follow_up.status, "score", follow_up.score)
