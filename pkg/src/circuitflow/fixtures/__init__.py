"""Instance files reproducing the worked examples."""

from importlib import resources

from ..network import Network, load_network

NAMES = ("fig2.min", "fig4.min", "fig6.max", "fig7.max", "fig9.max", "fixture3x3.csv")


def path(name: str):
    """Filesystem path of a bundled fixture."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__name__) / name


def load(name: str) -> Network:
    return load_network(str(path(name)))
