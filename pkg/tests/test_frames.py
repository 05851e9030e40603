import math

import numpy as np
import pytest

from roboface.errors import ValidationError
from roboface.frames import (
    BlendshapeFrame,
    HeadPose,
    VaPoint,
    check_monotonic_timestamps,
    frames_to_matrix,
    validate_actuators,
    validate_coefficients,
)


def test_strict_rejects_out_of_range():
    values = np.zeros(52)
    values[17] = 1.2
    with pytest.raises(ValidationError) as exc:
        validate_coefficients(values)
    assert "17" in str(exc.value)


def test_lenient_clamps_and_counts():
    values = np.zeros(52)
    values[0] = -0.3
    values[17] = 1.2
    arr, n = validate_coefficients(values, lenient=True)
    assert n == 2
    assert arr[0] == 0.0 and arr[17] == 1.0


def test_wrong_length_rejected():
    with pytest.raises(ValidationError):
        validate_coefficients(np.zeros(51))


def test_non_finite_rejected_even_lenient():
    values = np.zeros(52)
    values[3] = float("nan")
    with pytest.raises(ValidationError):
        validate_coefficients(values, lenient=True)


def test_frame_coefficients_read_only():
    frame = BlendshapeFrame(np.zeros(52), 0.0)
    with pytest.raises(ValueError):
        frame.coefficients[0] = 1.0


def test_frame_validates_on_construction():
    bad = np.zeros(52)
    bad[5] = 2.0
    with pytest.raises(ValidationError):
        BlendshapeFrame(bad, 0.0)
    with pytest.raises(ValidationError):
        BlendshapeFrame(np.zeros(52), float("inf"))


def test_head_pose_bounds():
    HeadPose(math.pi, -math.pi, 0.0)
    with pytest.raises(ValidationError):
        HeadPose(3.2, 0.0, 0.0)
    with pytest.raises(ValidationError):
        HeadPose(0.0, float("nan"), 0.0)


def test_monotonic_timestamps():
    frames = [BlendshapeFrame(np.zeros(52), t) for t in (0.0, 40.0, 80.0)]
    check_monotonic_timestamps(frames)
    frames = [BlendshapeFrame(np.zeros(52), t) for t in (0.0, 40.0, 40.0)]
    with pytest.raises(ValidationError):
        check_monotonic_timestamps(frames)


def test_frames_to_matrix_stacks_in_order():
    rng = np.random.default_rng(1)
    coeffs = rng.uniform(0, 1, (4, 52))
    frames = [BlendshapeFrame(c, 40.0 * i) for i, c in enumerate(coeffs)]
    assert np.array_equal(frames_to_matrix(frames), coeffs)
    with pytest.raises(ValidationError):
        frames_to_matrix([])


def test_actuator_validation():
    out = validate_actuators([0.0, 0.5, 1.0], 3)
    assert not out.flags.writeable
    with pytest.raises(ValidationError):
        validate_actuators([0.0, 1.5, 1.0], 3)
    with pytest.raises(ValidationError):
        validate_actuators([0.0, 0.5], 3)


def test_va_point_bounds():
    VaPoint(-1.0, 1.0)
    with pytest.raises(ValidationError):
        VaPoint(1.1, 0.0)
    with pytest.raises(ValidationError):
        VaPoint(0.0, float("nan"))
