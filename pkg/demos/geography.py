"""Generalized geography: who wins when the tokens start on each vertex.

``winning V E X`` holds when the player to move from ``X`` has a move to a
vertex from which the opponent loses in the graph with ``X`` removed.
"""

from importlib import resources

from hoast.cli import main

SOURCE = str(resources.files("hoast") / "corpus" / "geography.hol")

for x in "abc":
    print(f"winning v e {x}: ", end="", flush=True)
    main(["query", SOURCE, f"winning v e {x}"])
