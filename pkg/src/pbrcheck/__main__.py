"""Allow ``python -m pbrcheck``."""

from .cli import entrypoint

entrypoint()
