"""Run the evolutionary search loop end to end with a scripted model.

The real loop samples one or two priority functions from an island
database, asks a language model to improve them, and scores each
completion by the code sizes it produces.  A mock client replaying a
fixed completion cycle makes the whole run deterministic, which is how
the loop itself is tested: junk is discarded, a rediscovered trivial
function deduplicates, and the weight-quotient function scores 172 and
ends the run after the configured post-optimal budget.
"""

from dccsearch import gateway, priolib
from dccsearch.orchestrator import run_search
from dccsearch.progdb import SearchConfig

config = SearchConfig(
    num_islands=3, budget=50, post_optimal_budget=6, reset_interval=10
)

completions = [
    "    this is not even python (\n",                                 # discarded
    "    return 0.0\n",                                                # duplicate of the seed
    "\n".join(priolib.get("vt-equivalent").source.splitlines()[1:]) + "\n",
]
client = gateway.MockClient(completions)

print("prompt sent for the first sample:\n")
print(gateway.render_prompt(gateway.TEMPLATES["baseline"],
                            priolib.get("trivial").source))

state, db = run_search(config, client, seed=7)
print("run summary:")
for key, value in state.to_dict().items():
    print(f"  {key}: {value}")
print(f"\nbest score {state.best_score} "
      f"(optimal found after {state.optimal_found_at} candidates)")
