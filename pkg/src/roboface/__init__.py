"""Avatar-to-robot facial retargeting: piecewise anchor maps from ARKit
blendshapes to actuator commands, emotion-range metrics, baselines, a
binary motor-frame protocol, and a calibration service."""

from .baselines import PairedDataset, nnr_baseline, random_baseline
from .channels import ARKIT_CHANNELS, NUM_CHANNELS, channel_index, clamp_unit
from .csvio import (
    blendshape_csv,
    motor_csv,
    paired_csv,
    parse_blendshape_csv,
    parse_motor_csv,
    parse_paired_csv,
    parse_va_csv,
    va_csv,
)
from .edr import DEFAULT_TRIM_FRACTION, HullPolygon, convex_hull, edr, trim_outliers
from .errors import (
    ParseError,
    ProfileError,
    RobofaceError,
    UnknownChannelError,
    ValidationError,
)
from .frames import BlendshapeFrame, HeadPose, VaPoint, frames_to_matrix
from .profile import (
    MergeRule,
    NeckAxis,
    PiecewiseMap,
    RetargetProfile,
    SmoothingConfig,
    load_profile,
    load_profile_file,
    save_profile,
)
from .retarget import (
    eval_piecewise,
    map_head_pose,
    merge_channels,
    retarget_frame,
    retarget_sequence,
    smooth_sequence,
)
from .wire import MotorFrame, decode_motor_frame, decode_stream, encode_motor_frame, encode_stream

__version__ = "0.1.0"

__all__ = [
    "ARKIT_CHANNELS",
    "NUM_CHANNELS",
    "BlendshapeFrame",
    "HeadPose",
    "VaPoint",
    "HullPolygon",
    "MergeRule",
    "MotorFrame",
    "NeckAxis",
    "PairedDataset",
    "ParseError",
    "PiecewiseMap",
    "ProfileError",
    "RetargetProfile",
    "RobofaceError",
    "SmoothingConfig",
    "UnknownChannelError",
    "ValidationError",
    "DEFAULT_TRIM_FRACTION",
    "blendshape_csv",
    "channel_index",
    "clamp_unit",
    "convex_hull",
    "decode_motor_frame",
    "decode_stream",
    "edr",
    "encode_motor_frame",
    "encode_stream",
    "eval_piecewise",
    "frames_to_matrix",
    "load_profile",
    "load_profile_file",
    "map_head_pose",
    "merge_channels",
    "motor_csv",
    "nnr_baseline",
    "paired_csv",
    "parse_blendshape_csv",
    "parse_motor_csv",
    "parse_paired_csv",
    "parse_va_csv",
    "random_baseline",
    "retarget_frame",
    "retarget_sequence",
    "save_profile",
    "smooth_sequence",
    "trim_outliers",
    "va_csv",
]
