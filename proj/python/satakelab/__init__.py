"""Exact dual-group combinatorics.

Thin Python facade over the C++ core: root data and their duals, affine Weyl
and Hecke combinatorics with Kazhdan-Lusztig polynomials, exact irreducible
representations, and the principal-nilpotent filtration machinery.  All
results are exact: polynomials come back as ``{exponent: coefficient}``
dicts, weights as tuples of integers, rationals as strings.
"""

try:
    # Installed layout: the extension lives inside this package.
    from ._satakelab import *  # noqa: F401,F403
    from . import _satakelab as _ext
except ImportError:
    # Build-tree layout: the extension sits on sys.path next to the package.
    from _satakelab import *  # type: ignore[no-redef]  # noqa: F401,F403
    import _satakelab as _ext

__version__ = "1.0.0"
__all__ = sorted(name for name in dir(_ext) if not name.startswith("_"))
