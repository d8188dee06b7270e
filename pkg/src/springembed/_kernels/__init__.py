"""Hot-kernel backend selection.

Prefers the compiled Cython extension; falls back to the pure NumPy twin.
Set ``SPRINGEMBED_PURE=1`` to force the fallback (used by the benchmark and
by tests that compare the two backends).
"""

import os

if os.environ.get("SPRINGEMBED_PURE") == "1":
    from ._pure import BACKEND, crossing_count_brute, crossing_count_pairs, triangulate
else:
    try:
        from ._core import BACKEND, crossing_count_brute, crossing_count_pairs, triangulate
    except ImportError:
        from ._pure import (
            BACKEND,
            crossing_count_brute,
            crossing_count_pairs,
            triangulate,
        )

__all__ = ["BACKEND", "triangulate", "crossing_count_brute", "crossing_count_pairs"]
