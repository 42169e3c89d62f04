"""Graded ring rewriting, Chern classes and volume tables."""

from .chern import (ChernClass, bundle_presentation, plane_cubic_bundle_chern,
                    projective_bundle_relation, projective_space, tensor_line, whitney_quotient)
from .ring import (RingElement, RingPresentation, Rule, check_confluence, check_integration_table,
                   check_interreduced, format_presentation, integrate, normal_form,
                   parse_presentation, parse_polynomial)
from .volumes import (H12_P3, PRESETS, flag_normalization_oracle, load_preset, load_preset_text,
                      nef_volume, volume_table_d3_r2, volume_table_d3_r3)

__all__ = [
    "ChernClass", "RingElement", "RingPresentation", "Rule", "H12_P3", "PRESETS",
    "bundle_presentation", "check_confluence", "check_integration_table", "check_interreduced",
    "flag_normalization_oracle", "format_presentation", "integrate", "load_preset",
    "load_preset_text", "nef_volume", "normal_form", "parse_polynomial", "parse_presentation",
    "plane_cubic_bundle_chern", "projective_bundle_relation", "projective_space", "tensor_line",
    "volume_table_d3_r2", "volume_table_d3_r3", "whitney_quotient",
]
