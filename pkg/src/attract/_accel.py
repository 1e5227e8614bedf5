"""JIT dispatch layer.

Every hot kernel in this package is decorated with :func:`kernel`.  By
default that is numba's ``njit`` (nopython, bounds-checked so that bad
indexing raises IndexError exactly like the interpreter).  Setting
``ATTRACT_JIT=0`` in the environment before import selects a pure-Python
fallback: the decorator becomes a no-op and the same source runs on the
interpreter.  The fallback is far slower but has identical semantics,
which the test suite and the bundled benchmark both rely on.
"""

import os

JIT_ENABLED = os.environ.get("ATTRACT_JIT", "1") not in ("0", "false", "no")

if JIT_ENABLED:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a hard dependency
        JIT_ENABLED = False

if JIT_ENABLED:

    def kernel(func):
        """Compile a hot function with bounds checking kept on."""
        return numba.njit(boundscheck=True, cache=True)(func)

    def kernel_sig(signature):
        """Like :func:`kernel` but compiled eagerly for one signature.

        Self-recursive functions whose return type is only known after a
        second inference pass leave two entries in numba's on-disk cache,
        and reloading such a pair crashes.  Pinning the signature keeps
        the build single-pass and the cache reloadable.
        """
        return numba.njit(signature, boundscheck=True, cache=True)

else:

    def kernel(func):
        """Fallback: run the same source on the interpreter."""
        return func

    def kernel_sig(signature):
        del signature
        return kernel
