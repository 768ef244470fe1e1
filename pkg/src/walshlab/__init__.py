"""Computational laboratory for Walsh-function correlation bounds.

Sieved arithmetic tables, exact Walsh spectra, trigonometric coefficient
norms, band-limited substitutes, bilinear sum objects, and the inequality
checkers that audit each bound with explicit or fitted constants.
"""

from ._version import __version__
from .approximant import (
    ApproximantConfig,
    SampledApproximant,
    band_profile,
    build_approximant,
    l2_error,
    trapezoid_eta,
)
from .fwht import Spectrum, fwht_in_place, max_correlation, spectrum
from .lemmas import (
    CheckReport,
    ScanConfig,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    report_from_dict,
    run_scan,
    scan_lemma_at,
    summarize,
)
from .limits import ResourceLimitError, resolve_max_mem_gib
from .report import (
    CSV_HEADER,
    RunManifest,
    emit_csv,
    manifest_from_json,
    manifest_to_json,
    parse_csv,
)
from .sieve import (
    ArithmeticSequence,
    custom_sequence,
    dump_sequence,
    load_sequence,
    sequence,
    sieve_liouville,
    sieve_moebius,
    sieve_von_mangoldt,
)
from .sums import (
    BilinearConfig,
    CarryResult,
    FrequencyTestResult,
    QuadFormResult,
    SplitConfig,
    SplitResult,
    bilinear_sum,
    carry_report,
    carry_truncation_rate,
    cauchy_schwarz_chain,
    coefficient_table,
    correlation_report,
    frequency_report,
    frequency_test_count,
    quadform_report,
    shifted_quadratic_form,
    spectral_split,
    split_report,
    theorem_scan,
    type1_report,
    type1_sum,
)
from .walsh import (
    FullRange,
    Interval,
    ResidueClass,
    TrigCoefficient,
    WalshMask,
    all_mask_l1,
    all_mask_sup,
    coefficient_values,
    l1_accumulate,
    magnitude_row,
    mask_sweep,
    step_h,
    sup_norm,
    trig_coefficient,
    walsh_eval,
    walsh_signs,
    walsh_table,
)

__all__ = [
    "__version__",
    "ApproximantConfig",
    "ArithmeticSequence",
    "BilinearConfig",
    "CarryResult",
    "CheckReport",
    "FrequencyTestResult",
    "FullRange",
    "Interval",
    "QuadFormResult",
    "ResidueClass",
    "ResourceLimitError",
    "RunManifest",
    "SampledApproximant",
    "ScanConfig",
    "Spectrum",
    "SplitConfig",
    "SplitResult",
    "TrigCoefficient",
    "WalshMask",
    "all_mask_l1",
    "all_mask_sup",
    "band_profile",
    "bilinear_sum",
    "build_approximant",
    "carry_report",
    "carry_truncation_rate",
    "cauchy_schwarz_chain",
    "check_lemma1",
    "check_lemma2",
    "check_lemma3",
    "check_lemma4",
    "check_lemma5",
    "check_lemma6",
    "coefficient_table",
    "coefficient_values",
    "correlation_report",
    "custom_sequence",
    "dump_sequence",
    "CSV_HEADER",
    "emit_csv",
    "frequency_report",
    "frequency_test_count",
    "fwht_in_place",
    "l1_accumulate",
    "l2_error",
    "load_sequence",
    "magnitude_row",
    "manifest_from_json",
    "manifest_to_json",
    "mask_sweep",
    "max_correlation",
    "parse_csv",
    "quadform_report",
    "report_from_dict",
    "resolve_max_mem_gib",
    "run_scan",
    "scan_lemma_at",
    "sequence",
    "shifted_quadratic_form",
    "sieve_liouville",
    "sieve_moebius",
    "sieve_von_mangoldt",
    "spectral_split",
    "spectrum",
    "split_report",
    "step_h",
    "summarize",
    "sup_norm",
    "theorem_scan",
    "trapezoid_eta",
    "trig_coefficient",
    "type1_report",
    "type1_sum",
    "walsh_eval",
    "walsh_signs",
    "walsh_table",
]
