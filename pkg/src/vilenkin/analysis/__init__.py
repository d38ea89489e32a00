"""Groups, transforms, kernels, means and approximation bounds."""

from vilenkin.analysis.approx import (
    ModulusProfile,
    VerificationReport,
    lip_function,
    modulus,
    modulus_profile,
)
from vilenkin.analysis.kernels import (
    KernelFamily,
    dirichlet_kernel,
    fejer_kernel,
    t_kernel,
)
from vilenkin.analysis.means import (
    WeightSeq,
    fejer_mean,
    make_weights,
    norlund_mean,
    t_mean,
)
from vilenkin.analysis.spectral import GridFunction, Spectrum, analyze, synthesize
from vilenkin.analysis.vgroup import GroupSpec, Point, build_group

__all__ = [
    "GroupSpec",
    "Point",
    "build_group",
    "GridFunction",
    "Spectrum",
    "analyze",
    "synthesize",
    "KernelFamily",
    "dirichlet_kernel",
    "fejer_kernel",
    "t_kernel",
    "WeightSeq",
    "make_weights",
    "fejer_mean",
    "t_mean",
    "norlund_mean",
    "ModulusProfile",
    "VerificationReport",
    "modulus",
    "modulus_profile",
    "lip_function",
]
