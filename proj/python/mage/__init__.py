"""Monge-Ampere structures and the generalized almost geometries they induce."""

_NAMES = [
    "EvalDomainError", "Expr", "ExprParseError", "GenEndo", "MAStructure",
    "MageError", "banos", "divergence_check", "j_alpha", "j_omega", "j_rho",
    "k_value", "lr_integrability", "parse", "prove_zero", "quadric_type",
    "run_config", "validate_config", "__version__",
]

try:
    from . import _mage as _impl  # installed layout: extension inside the package
except ImportError:  # flat build tree: extension next to the package
    import _mage as _impl

globals().update({name: getattr(_impl, name) for name in _NAMES})
__all__ = [n for n in _NAMES if n != "__version__"]
