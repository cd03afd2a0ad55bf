"""Bundled certificate data.

g1/g2 are degree-22 expansions for codes in dimension 4 with products in
T = [-1, 1/2]; their companion files add the distance-distribution
constant M produced by an external semidefinite solve. M is consumed as a
published constant: the pieces behind it are not part of this package and
it cannot be re-derived here.
"""

from __future__ import annotations

import json
from importlib import resources


def _load(name: str) -> dict:
    with resources.files(__package__).joinpath(name).open() as fh:
        return json.load(fh)


def load_expansion(name: str):
    """Bundled expansion by name: 'g1' or 'g2'."""
    from ..gegenbauer import GegenbauerExpansion

    return GegenbauerExpansion.from_dict(_load(f"{name}.json"))


def load_certificate(name: str):
    """Bundled distance-distribution certificate: 'g1' or 'g2'."""
    from ..bounds import DDCertificate

    return DDCertificate.from_dict(_load(f"{name}_cert.json"))
