"""Exact computations in the covering quantum algebra of osp(1|2)."""

from ._qcover import (
    DotElement,
    Element,
    InternalError,
    ParseError,
    Scalar,
    ZeroDivisorError,
    bilinear_form,
    cb,
    decompose,
    qbinom,
    qint,
    run_cli,
    structure_constants,
    suites,
    tensor_cb,
    theta_coeff,
    verify,
)

__all__ = [
    "DotElement", "Element", "InternalError", "ParseError", "Scalar", "ZeroDivisorError",
    "bilinear_form", "cb", "decompose", "qbinom", "qint", "run_cli", "structure_constants",
    "suites", "tensor_cb", "theta_coeff", "verify",
]
