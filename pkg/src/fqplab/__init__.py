"""Finite commutative rings in the Prüfer hierarchy.

Rings are explicit addition/multiplication tables.  The package decides
chained, arithmetical, fqp (every finitely generated ideal quasi-projective),
Gaussian and related properties, cross-checks quasi-projectivity by brute
force, and runs theorem-checking suites over a corpus of ring constructions.
"""

__version__ = "0.1.0"

from .config import Config, load_config
from .deciders import (
    PropertyReport,
    classify,
    fqp_dichotomy,
    gaussian_content_witness,
    is_arithmetical,
    is_chained,
    is_fqp,
    is_gaussian,
    is_local,
    is_prufer,
    is_reduced,
    is_total_quotient_ring,
    is_von_neumann_regular,
    lemma38_inspect,
    wdim_classify,
)
from .errors import AxiomError, FqpLabError, ResourceCapError, SpecSyntaxError
from .ideals import Ideal, all_ideals, annihilator, ideal_generated, maximal_ideal, minimal_generators
from .modules import (
    FiniteModule,
    are_isomorphic,
    homs,
    is_projective,
    is_quasi_projective,
    module_from_ideal,
    quasi_projective_oracle,
)
from .rings import (
    FiniteRing,
    check_axioms,
    local_factors,
    make_poly_quot,
    make_product,
    make_trivial_extension,
    make_zmod,
    quotient_ring,
)
from .specparse import build_ring, parse_spec, print_spec

__all__ = [name for name in dir() if not name.startswith("_")]
