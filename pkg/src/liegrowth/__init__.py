"""liegrowth: exact computational algebra for torsion-growth certificates.

Subpackage map:

* ``zpmod``   -- finitely generated Z/p^s-modules, Smith normal form,
                 images, split injections, Tor.
* ``freelie`` -- bracketing trees, Hall bases, Witt numbers, the tensor
                 algebra model of the free graded Lie algebra.
* ``difflie`` -- differentials, bigraded homology, the tau/sigma cycles,
                 acyclic bases, weighted-dimension inequalities.
* ``moore``   -- wedges of Moore spaces: splitting, smash, loop-space
                 factors, and the growth certificate.
* ``growth``  -- exponential-growth verdicts and Witt asymptotics.
* ``cli``     -- the ``liegrowth`` command.
"""

from .zpmod import (
    BasisChange,
    DirectSumSplit,
    GradedModule,
    ModuleMorphism,
    RingSpec,
    SNFResult,
    compose,
    dim_of,
    factor_tensor_check,
    free_presentation,
    image_dims,
    is_injective,
    is_surjective,
    smith_normal_form,
    split_injection_normalize,
    tensor_morphism,
    tensor_reduce,
    tor,
)
from .freelie import (
    BracketTree,
    FreeNAElement,
    GeneratorSet,
    HallBasis,
    TensorElement,
    basic_products,
    bracket,
    embed_tensor,
    hall_basis,
    lie_component,
    mobius,
    pbw_series_diagnostic,
    tensor_dim,
    tree_degree,
    tree_from_names,
    tree_to_names,
    tree_weight,
    witt,
    zeta,
)
from .difflie import (
    AcyclicBasis,
    BigradedComplex,
    DifferentialSpec,
    acyclic_basis,
    bigraded_complex,
    boundary_growth,
    check_weight_inequalities,
    differential_pair,
    differentiate,
    homology,
    sigma,
    tau,
    weighted_dim,
)
from .moore import (
    GrowthParams,
    MooreSummand,
    MooreWedge,
    crt_split,
    growth_certificate,
    hilton_milnor_expansion,
    homology_poincare,
    smash,
    smash_power_binomial,
)
from .growth import GrowthReport, GrowthSequence, analyze, witt_asymptotic

__version__ = "0.1.0"
