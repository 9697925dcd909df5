"""Non-emptiness certificates for affine Deligne-Lusztig varieties X_x(b)."""

from weylreduce.affine import AffineElement, group_mode
from weylreduce.coxeter import coxeter_system, type_a, type_c2, type_g2
from weylreduce.reduction import nonemptiness, reduce, verify_certificate

__all__ = [
    "AffineElement",
    "coxeter_system",
    "group_mode",
    "nonemptiness",
    "reduce",
    "type_a",
    "type_c2",
    "type_g2",
    "verify_certificate",
]
