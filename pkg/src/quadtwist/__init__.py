"""Exact cyclotomic arithmetic and Galois cohomology checks for quadratic
twists of abelian varieties, plus a local-global power scanner."""

__version__ = "0.1.0"


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas: ``certificate`` or ``gwreport``."""
    import json
    from importlib.resources import files

    return json.loads((files(__name__) / "schemas" / f"{name}.schema.json").read_text())
