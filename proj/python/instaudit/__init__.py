"""Instagram fake/automated account classification pipeline."""

try:
    from ._instaudit import *  # noqa: F401,F403
    from ._instaudit import __version__  # noqa: F401
except ImportError:
    # In-tree builds leave the extension next to the package instead of inside it.
    from _instaudit import *  # noqa: F401,F403
    from _instaudit import __version__  # noqa: F401
