"""Positive-invariance checks for convex sets under continuous dynamics."""

import json

from ._core import (
    ConvexSet,
    DynamicalSystem,
    NagumoError,
    __version__,
    ellipsoid,
    expm,
    expression,
    gen_eig_max,
    hpolyhedron,
    integrate,
    linear,
    lorenz,
    orthant,
    set_from_json,
    solve_linear,
    sym_eig,
    vcone,
    vpolytope,
    cone_contains_at,
)
from . import _core


def check(set, system, samples=10000, seed=0, t0=0.0):
    """Verdict as a dict: decision, method, certificate, counterexample."""
    return json.loads(_core.check_json(set, system, samples, seed, t0))


def tangent(set, x):
    return json.loads(_core.tangent_json(set, x))


def lp_feasible(vertices, f, i):
    return json.loads(_core.lp_feasible_json(vertices, f, i))


def qp_nearest(vertices, f, i):
    return json.loads(_core.qp_nearest_json(vertices, f, i))


def falsify(set, system, starts=100, horizon=10.0, step=1e-3, seed=0):
    """First exit as a dict, or None."""
    return json.loads(_core.falsify_json(set, system, starts, horizon, step, seed))


def run_cli(args):
    """(exit code, stdout, stderr) of the command-line tool."""
    return _core.run_cli(list(args))
