"""Winding-number certificate for the boundary-frame determinant loop."""
from __future__ import annotations

import math

import numpy as np
import pytest

from repvar.chern import (
    CONTOUR,
    DETERMINANT_MODULUS,
    JUNCTION_TOL,
    MIN_SAMPLES_PER_SEGMENT,
    chern_pairing,
    closed_form_gap,
    contour_determinants,
    junction_gaps,
    modulus_deviation,
    segment,
    winding_number,
    _loop_winding,
)


def test_contour_has_eight_connected_segments():
    assert len(CONTOUR) == 8
    names = [s.name for s in CONTOUR]
    assert len(set(names)) == 8
    assert np.max(junction_gaps()) < 1e-12


def test_segment_lookup():
    seg = segment("disc1-outer")
    assert seg is CONTOUR[0]
    with pytest.raises(ValueError) as err:
        segment("nонsense")
    assert "disc1-outer" in str(err.value)


def test_pinned_determinant_values():
    assert segment("disc1-outer").determinant(0.0) == pytest.approx(
        32.0 + 0.0j, abs=1e-12
    )
    assert segment("cut-lower").determinant(0.0) == pytest.approx(
        -32.0j, abs=1e-12
    )
    assert segment("disc2-outer").determinant(math.pi) == pytest.approx(
        -32.0 + 0.0j, abs=1e-12
    )
    assert segment("disc1-above-cut").determinant(2 * math.pi) == pytest.approx(
        32.0 + 0.0j, abs=1e-12
    )


def test_frames_are_4x4_and_match_closed_forms():
    for seg in CONTOUR:
        params = seg.parameters(16)
        for t in params:
            m = seg.frame_matrix(float(t))
            assert m.shape == (4, 4)
            assert m.dtype == np.complex128
    assert closed_form_gap() < 1e-12
    assert closed_form_gap(samples_per_segment=128) < 1e-12


def test_frame_matrix_rejects_out_of_range_parameters():
    seg = segment("disc1-outer")  # runs over [0, pi]
    with pytest.raises(ValueError):
        seg.frame_matrix(seg.end + 0.5)


def test_determinant_modulus_is_constant():
    assert DETERMINANT_MODULUS == 32.0
    assert modulus_deviation() < 1e-12
    assert modulus_deviation(second_contour=True) < 1e-12


def test_second_contour_is_the_pointwise_negation():
    first = contour_determinants()
    second = contour_determinants(second_contour=True)
    assert np.max(np.abs(first + second)) < 1e-12


def test_winding_numbers():
    assert winding_number() == -1
    assert winding_number(second_contour=True) == -1
    assert winding_number(samples_per_segment=256) == -1
    assert winding_number(mirrored=True) == 1
    assert winding_number(second_contour=True, mirrored=True) == 1


def test_sampling_floor_is_enforced():
    assert MIN_SAMPLES_PER_SEGMENT == 64
    with pytest.raises(ValueError):
        winding_number(samples_per_segment=63)
    with pytest.raises(ValueError):
        contour_determinants(samples_per_segment=10)


def test_winding_guards():
    t = np.linspace(0.0, 2 * math.pi, 512)
    loop = 32.0 * np.exp(1j * t)
    assert _loop_winding(loop) == 1
    # too close to the origin for a trustworthy argument
    with pytest.raises(ValueError):
        _loop_winding(2.0 * np.exp(1j * t))
    # a non-closing arc has no integer winding
    with pytest.raises(ValueError):
        _loop_winding(32.0 * np.exp(1j * t[: len(t) // 2]))
    # angular steps of pi or more are ambiguous
    coarse = 32.0 * np.exp(1j * np.linspace(0.0, 2 * math.pi, 3))
    with pytest.raises(ValueError):
        _loop_winding(coarse)


def test_junction_tolerance_is_stricter_than_observed():
    assert np.max(junction_gaps()) < JUNCTION_TOL


def test_pairing_is_minus_two_for_any_pair_count():
    assert chern_pairing() == -2
    assert chern_pairing(pairs=3) == -2
    assert chern_pairing(pairs=5) == -2
    with pytest.raises(ValueError):
        chern_pairing(pairs=1)
