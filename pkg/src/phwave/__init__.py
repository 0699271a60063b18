"""Frequency-adaptive (polyharmonic subdivision) wavelet toolkit.

Non-stationary Daubechies-type filter banks parametrized by a frequency
``xi`` and level ``k``, a mixed Fourier x wavelet 2D image transform, a
classical separable Daubechies baseline, and a quantizer + entropy codec
with metrics, all behind a small CLI (``phwave``).
"""

from .baseline2d import Db2dCoefficients, db_forward, db_inverse
from .codec import (
    ContainerError,
    Metrics,
    QuantizerConfig,
    compress,
    decompress,
    dequantize,
    measure,
    psnr,
    quantize,
)
from .filters import FilterPair, make_filter_pair, make_level_params
from .grid import ImageGrid, InvalidImageError
from .synth import natural_image, star_field
from .transform2d import MixedCoefficients, forward, inverse
from .wavelet1d import (
    Boundary,
    CoefficientPyramid,
    WaveletPlan,
    analyze,
    make_plan,
    synthesize,
)

__version__ = "0.1.0"
