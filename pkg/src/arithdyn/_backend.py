"""Select the compiled kernels when available, else the pure-Python twins.

Set ``ARITHDYN_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("ARITHDYN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"

poly_mul = kernels.poly_mul
poly_rem = kernels.poly_rem
poly_mulmod = kernels.poly_mulmod
poly_powmod = kernels.poly_powmod
cyclic_subgroup = kernels.cyclic_subgroup
isotropy_scan = kernels.isotropy_scan
prime_sieve = kernels.prime_sieve

__all__ = [
    "BACKEND",
    "kernels",
    "poly_mul",
    "poly_rem",
    "poly_mulmod",
    "poly_powmod",
    "cyclic_subgroup",
    "isotropy_scan",
    "prime_sieve",
]
