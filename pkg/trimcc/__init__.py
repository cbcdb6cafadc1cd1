from trimcc.calculus import (
    ChowRingSpec,
    cc_inverse,
    cc_transform,
    chern_mather,
    chern_schwartz_macpherson,
    euler_obstruction,
    euler_obstruction_via_trim,
    ic_report,
    stringy_class,
    stringy_euler_number,
)
from trimcc.conormal import conormal_ideal, dual_variety, segre_class
from trimcc.cycles import (
    ChowVector,
    ConstructibleFunction,
    CycleKey,
    LagrangianCycle,
)
from trimcc.exceptions import (
    ComputationLimitError,
    Error,
    InputError,
    InternalError,
    ParseError,
    PreconditionError,
    ProjectError,
    TrimccWarning,
    UnsupportedFiberError,
)
from trimcc.ideal import (
    Ideal,
    dimension_and_degree,
    eliminate,
    groebner,
    saturation,
)
from trimcc.morphism import (
    MorphismSpec,
    StratificationSpec,
    Stratum,
    fiber_product_smallness,
    generic_degree,
    omega_trim_check,
    small_check,
    trim_check,
)
from trimcc.polynomial import PolynomialRing
from trimcc.project import Project
from trimcc.pushforward import (
    pushforward_generically_finite,
    pushforward_support,
    pushforward_trim,
)
from trimcc.settings import limits
from trimcc.varieties import AffineVariety, ProjectiveVariety


__all__ = [
    'AffineVariety',
    'ChowRingSpec',
    'ChowVector',
    'ComputationLimitError',
    'ConstructibleFunction',
    'CycleKey',
    'Error',
    'Ideal',
    'InputError',
    'InternalError',
    'LagrangianCycle',
    'MorphismSpec',
    'ParseError',
    'PolynomialRing',
    'PreconditionError',
    'Project',
    'ProjectError',
    'ProjectiveVariety',
    'StratificationSpec',
    'Stratum',
    'TrimccWarning',
    'UnsupportedFiberError',
    'cc_inverse',
    'cc_transform',
    'chern_mather',
    'chern_schwartz_macpherson',
    'conormal_ideal',
    'dimension_and_degree',
    'dual_variety',
    'eliminate',
    'euler_obstruction',
    'euler_obstruction_via_trim',
    'fiber_product_smallness',
    'generic_degree',
    'groebner',
    'ic_report',
    'limits',
    'omega_trim_check',
    'pushforward_generically_finite',
    'pushforward_support',
    'pushforward_trim',
    'saturation',
    'segre_class',
    'small_check',
    'stringy_class',
    'stringy_euler_number',
    'trim_check',
]
