from __future__ import annotations

import math
from typing import Union

from .models import AffineParams, MertonParams, VasicekParams

AnyParams = Union[MertonParams, VasicekParams, AffineParams]


def to_generic(params: AnyParams) -> AffineParams:
    """Embed a named model into the generic affine form.

    Merton{phi, sigma}         -> {alpha1=phi,         alpha2=0,     beta1=sigma^2, beta2=0}
    Vasicek{kappa, theta, sig} -> {alpha1=kappa*theta, alpha2=kappa, beta1=sigma^2, beta2=0}
    """
    if isinstance(params, AffineParams):
        return params
    if isinstance(params, MertonParams):
        return AffineParams(alpha1=params.phi, alpha2=0.0, beta1=params.sigma**2, beta2=0.0)
    return AffineParams(
        alpha1=params.kappa * params.theta,
        alpha2=params.kappa,
        beta1=params.sigma**2,
        beta2=0.0,
    )


def from_generic(params: AnyParams) -> AnyParams:
    """Map a Gaussian (beta2 == 0) generic model back onto Merton or Vasicek.

    Named models pass through. Generic models with ``beta2 != 0`` or a negative
    ``alpha2`` have no named counterpart and are returned unchanged.
    """
    if not isinstance(params, AffineParams):
        return params
    if params.beta2 != 0.0 or params.alpha2 < 0.0 or params.beta1 < 0.0:
        return params
    sigma = math.sqrt(params.beta1)
    if params.alpha2 == 0.0:
        return MertonParams(phi=params.alpha1, sigma=sigma)
    return VasicekParams(
        kappa=params.alpha2, theta=params.alpha1 / params.alpha2, sigma=sigma
    )


def has_closed_form(params: AnyParams) -> bool:
    """True when bond and option prices are available analytically."""
    return not isinstance(from_generic(params), AffineParams)
