"""exdg: exact dg categories over finite-dimensional path algebras, made computable."""

from .algebra import Algebra, InputError, Quiver, build_algebra
from .complexes import GradedMap, ProjComplex, category_of, cone, shift, stalk
from .exactness import (TWO_TERM, HCospan, HSpan, ProbeSet, SubcategorySpec, check_exactness, homotopy_cokernel,
                        homotopy_kernel, homotopy_pullback, homotopy_pushout, is_ambient_exact, is_left_exact,
                        is_right_exact)
from .extri import (ExtClass, ar_quiver, baer_sum, class_of, defect_of, ext_group, is_split, realize,
                    substructure_lattice, verify_axioms)
from .h3t import HComplex3, SixTuple, validate_h3
from .linalg import GF, QQ, Field
from .loader import load_fixture
from .stable import SVCat, is_stable, stable_gives_triangulated, sv_homotopy_cokernel, sv_homotopy_kernel

__all__ = [
    "Algebra",
    "ar_quiver",
    "baer_sum",
    "build_algebra",
    "category_of",
    "check_exactness",
    "class_of",
    "cone",
    "defect_of",
    "ext_group",
    "ExtClass",
    "Field",
    "GF",
    "GradedMap",
    "HComplex3",
    "HCospan",
    "homotopy_cokernel",
    "homotopy_kernel",
    "homotopy_pullback",
    "homotopy_pushout",
    "HSpan",
    "InputError",
    "is_ambient_exact",
    "is_left_exact",
    "is_right_exact",
    "is_split",
    "is_stable",
    "load_fixture",
    "ProbeSet",
    "ProjComplex",
    "QQ",
    "Quiver",
    "realize",
    "shift",
    "SixTuple",
    "stable_gives_triangulated",
    "stalk",
    "SubcategorySpec",
    "substructure_lattice",
    "sv_homotopy_cokernel",
    "sv_homotopy_kernel",
    "SVCat",
    "TWO_TERM",
    "validate_h3",
    "verify_axioms",
]

__version__ = "0.1.0"
