"""Rate-distortion curves for Gaussian sources under a spectrum-oblivious codebook."""

from ._rdgap import (
    GapRecord,
    Spectrum,
    __version__,
    d_rc,
    d_wf,
    dd_rc,
    dd_wf,
    gap_at,
    generator,
    haar_orthogonal,
    maximize_gap,
    merge_close,
    per_coord_distortions,
    quantize_tau,
    r_rc,
    r_wf,
    rr_rc,
    rr_wf,
    simulate_coupling,
    simulate_filter,
    simulate_scheme,
    simulate_success,
    sweep_csv,
    t_for_distortion,
    t_rc_for_distortion,
    t_rc_for_rate,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
