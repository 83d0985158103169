"""Noise channels diagonal in the chord representation on a discrete torus.

Modules split along the pipeline: phase-space kinematics (translations and
the chord transform), state constructors with the discrete Wigner function,
the noise channels themselves, quantized torus maps, spectra of the noisy
propagators, and a small CLI.
"""

from .phasespace import (
    TorusGeometry,
    PhasePoint,
    translation_operator,
    composition_phase,
    wedge,
    hs_inner,
    chord_transform,
    chord_inverse,
)
from .states import (
    WignerGrid,
    coherent_state,
    cat_state,
    density_from_pure,
    wigner_function,
    wigner_overlap,
)
from .channels import (
    DiagonalChordChannel,
    ChannelSpectrum,
    PhaseSpaceLine,
    make_depolarizing,
    line_points,
    make_phase_damping_line,
    make_gaussian,
    channel_spectrum,
    apply_channel,
    apply_channel_kraus,
    kraus_operators,
    su_n_generator_superoperator,
)
from .dynamics import (
    LinearMapSpec,
    ChordSuperMatrix,
    quantize_linear_map,
    nonlinear_kick,
    chord_supermatrix,
)
from .spectral import (
    TruncatedPropagator,
    SpectrumResult,
    build_noisy_propagator,
    leading_spectrum,
    sort_by_modulus,
    stability_report,
)

__version__ = "0.1.0"
