"""Python front end to the kderiv core. Results are plain dicts."""

import json

from . import _kderiv
from ._kderiv import (CapabilityError, CapExceeded, InvalidArgument, enumeration_cap,
                      set_enumeration_cap, set_worker_count)

__all__ = ["k0", "check", "nerve", "CapabilityError", "CapExceeded", "InvalidArgument",
           "enumeration_cap", "set_enumeration_cap", "set_worker_count"]


def _degrees(degrees):
    lo, hi = degrees
    return int(lo), int(hi)


def k0(model="s", base="vect-iso", bound=1, q=2, degrees=(0, 1), cof=""):
    lo, hi = _degrees(degrees)
    return json.loads(_kderiv.k0_json(model, base, bound, q, lo, hi, cof))


def check(suite="all", base="vect-iso", bound=1, q=2, degrees=(0, 1)):
    lo, hi = _degrees(degrees)
    return json.loads(_kderiv.check_json(suite, base, bound, q, lo, hi))


def nerve(shape="[1]", trunc=2):
    return json.loads(_kderiv.nerve_json(shape, trunc))
