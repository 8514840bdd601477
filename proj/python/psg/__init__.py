"""Polynomial semigroup toolkit.

Thin wrapper over the compiled ``_psg`` extension. Functions that produce
JSON reports in the C++ core return parsed dictionaries here.
"""

import json as _json

from . import _psg
from ._psg import (  # noqa: F401
    AdmissibilityError,
    GenfileError,
    Generator,
    GeneratorSet,
    Polynomial,
    PreconditionError,
    Raster,
    Viewport,
    backward_sample,
    boundary_extract,
    component_count,
    connectivity_check,
    count_m_components,
    default_render_radius,
    example,
    example_names,
    fiber_raster,
    format_generator_set,
    jordan,
    julia_raster,
    khat_raster,
    m_set,
    parse_generator_set,
    pcb_check,
    psi,
    random_fiber,
    read_generator_file,
    set_thread_count,
)

BOUNDED, ESCAPED, BOUNDARY = 0, 1, 2


def check(gs):
    """Postcritical, connectivity and M-set report as a dict."""
    return _json.loads(_psg.check_json(gs))


def analyze(raster):
    """Components, surrounding order and curve report for a raster."""
    return _json.loads(_psg.analyze_json(raster))


def certify_json(statement, gs, region, *, r_out=0.0, depth=None):
    """Certificate as canonical JSON text.

    ``region`` is ``("disk", center, r)`` or ``("annulus", center, r_in, r_out)``.
    ``r_out`` is the escape radius used for preimages; 0 picks twice the
    largest generator escape radius.
    """
    kind, center, *radii = region
    a = radii[0]
    b = radii[1] if len(radii) > 1 else 0.0
    args = dict(r_out=r_out)
    if depth is not None:
        args["depth"] = depth
    return _psg.certify(statement, gs, kind, complex(center), a, b, **args)


def certify(statement, gs, region, **kwargs):
    """Certificate as a dict."""
    return _json.loads(certify_json(statement, gs, region, **kwargs))


def replay(text):
    """Recompute a certificate from its JSON text and compare bytes."""
    return _psg.replay_certificate(text) == text
