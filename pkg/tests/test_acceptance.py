"""Acceptance criteria, one test per criterion, at the stated tolerances.

Criteria 9 and 10 are the long statistical runs (about 2 and 20 minutes);
deselect them with `-m "not slow"` during development.  The `verify` CLI
runs the same checks.
"""

import pytest

from sixvertex.acceptance import CRITERIA

slow = pytest.mark.slow


def _run(name):
    _, fn = CRITERIA[name]
    ok, detail = fn()
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


def test_criterion_01_counts_square():
    _run("1-counts")


def test_criterion_02_refined_counts():
    _run("2-refined")


def test_criterion_03_lambda_convolution():
    _run("3-lambda")


def test_criterion_04_identity_suite():
    _run("4-identities")


def test_criterion_05_saddle_gradients():
    _run("5-saddle")


def test_criterion_06_envelope_tangency():
    _run("6-envelope")


def test_criterion_07_hexagon_ellipse():
    _run("7-hexagon")


def test_criterion_08_triangoloid_consistency():
    _run("8-triangoloid")


@slow
def test_criterion_09_sampler_distribution():
    _run("9-sampler")


@slow
def test_criterion_10_figure_scale():
    _run("10-figure")


def test_criterion_11_gauge_invariance():
    _run("11-gauge")
