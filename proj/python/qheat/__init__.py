"""Python front end for the exact p-adic convection/heat arithmetic core."""

import json
import os
import sys

_mod_dir = os.environ.get("QHEAT_MODULE_DIR")
if _mod_dir and _mod_dir not in sys.path:
    sys.path.insert(0, _mod_dir)

try:
    from qheat._qheat import (  # type: ignore  # wheel layout
        b_eval,
        bn_diff_valuation,
        census_json,
        expand_json,
        instability_json,
        u_mult_json,
        verify_json,
    )
except ImportError:  # build-tree layout (module dir on sys.path)
    from _qheat import (  # type: ignore
        b_eval,
        bn_diff_valuation,
        census_json,
        expand_json,
        instability_json,
        u_mult_json,
        verify_json,
    )


def expand(name, terms):
    """Fixture q-expansion as a dict with lowest/M/coeffs (decimal strings)."""
    return json.loads(expand_json(name, terms))


def u_mult(p, z, kappa, alpha, M):
    """Exact-rational multiplicative solution family."""
    return json.loads(u_mult_json(p, str(z), kappa, str(alpha), M))


def verify(p, N, f, kappa, z, rhs, alpha="1", zeta=1, M=50, tol=-1):
    """Residual report for zeta/beta times the multiplicative family."""
    return json.loads(verify_json(p, N, f, kappa, str(z), rhs, str(alpha), zeta, M, tol))


def census(p, N, kappa, z, rhs=0, M=30):
    """Pivot census of the coefficientwise solver."""
    return json.loads(census_json(p, N, str(kappa), str(z), rhs, M))


def instability(p, kappa, alpha, alpha0, z, z0, M=30, rows=10):
    """Mod-p perturbation witness with the b_n valuation table."""
    return json.loads(instability_json(p, kappa, str(alpha), str(alpha0), str(z), str(z0), M, rows))


__all__ = [
    "b_eval",
    "bn_diff_valuation",
    "census",
    "expand",
    "instability",
    "u_mult",
    "verify",
]
