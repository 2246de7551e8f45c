"""Hot numeric kernels, with a compiled core when available.

`bernoulli_even_mod_p` dominates the irregular-index scan; the Cython build
is selected at import time and the pure-Python reference is the fallback.
"""

try:
    from ._fast import bernoulli_even_mod_p

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build environment
    from ._reference import bernoulli_even_mod_p

    BACKEND = "python"

__all__ = ["bernoulli_even_mod_p", "BACKEND"]
