"""Free chain complexes over orbit categories and their homological checks."""
from .build import (
    add_contractible_pair,
    from_gcw,
    from_gset,
    join,
    point,
    random_free_complex,
    reflection_circle,
    rotation_circle,
)
from .category import OrbitCategory, build_orbit_category
from .chain import Chain, HomologyGroup, cone, is_quasi_isomorphism
from .complex import (
    Cell,
    Evaluation,
    HomologyTable,
    OCComplex,
    check_algrep,
    dim_functions,
    is_homology_sphere,
    is_oriented,
    is_tight,
    orientation_report,
    sphere_report,
)
from .functors import (
    CellMap,
    GroupRingComplex,
    Subcomplex,
    extension_functor,
    image_sum,
    image_sum_homology,
    level_quotient,
    periodic_resolution,
    pushout,
    restriction_image,
    splitting,
    tensor_trivial_rank,
)
from .io import complex_from_json, complex_to_json, load_complex
from .snf import smith


def evaluate(C, H):
    """``C(H)``; see :meth:`OCComplex.evaluate`."""
    return C.evaluate(H)


def homology(C, prime=None, actions=True):
    return C.homology(prime, actions=actions)


__all__ = [
    "Cell", "CellMap", "Chain", "Evaluation", "GroupRingComplex", "HomologyGroup",
    "HomologyTable", "OCComplex", "OrbitCategory", "Subcomplex", "add_contractible_pair",
    "build_orbit_category", "check_algrep", "complex_from_json", "complex_to_json", "cone",
    "dim_functions", "evaluate", "extension_functor", "from_gcw", "from_gset", "homology",
    "image_sum", "image_sum_homology", "is_homology_sphere", "is_oriented",
    "is_quasi_isomorphism", "is_tight", "join", "level_quotient", "load_complex",
    "orientation_report", "periodic_resolution", "point", "pushout", "random_free_complex",
    "reflection_circle", "restriction_image", "rotation_circle", "smith", "sphere_report",
    "splitting", "tensor_trivial_rank",
]
