"""Abstract argumentation over a two-argument mutual attack.

The arguments ``a`` and ``b`` attack each other. The grounded extension is
empty, while each singleton is a stable extension.
"""

from importlib import resources

from hoast.cli import main

SOURCE = str(resources.files("hoast") / "corpus" / "af.hol")

for expr in ["grounded arg attacks a", "grounded arg attacks b",
             "stable arg attacks", "preferred arg attacks"]:
    print(f"{expr}:")
    main(["query", SOURCE, expr])
