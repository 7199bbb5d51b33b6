"""Python surface of the rtglab C++ core.

The heavy lifting lives in the `_rtglab` extension; this package re-exports
it and keeps a few conveniences on top.
"""

try:
    from rtglab._rtglab import *  # noqa: F401,F403  (wheel layout)
    from rtglab._rtglab import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _rtglab import *  # noqa: F401,F403
    from _rtglab import __version__  # noqa: F401


def tree_edges(tree):
    """Edge list (parent, child) of a (root, parents) pair."""
    root, parents = tree
    return [(parents[v], v) for v in range(1, len(parents)) if v != root]
