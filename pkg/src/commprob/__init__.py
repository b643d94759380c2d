"""commprob: exact commuting-probability computations on finite groups.

The package builds finite groups as explicit multiplication tables,
computes cp(G) by three independent exact methods, evaluates a battery
of inequalities with exact rational arithmetic, tabulates the partition
counts behind the symmetric/alternating/dihedral closed forms, and
scans a built-in catalog for the spectrum of attained cp values.
"""

__version__ = "0.1.0"

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    CommprobError,
    DegreeMismatch,
    FormulaMismatch,
    InvalidParameter,
    MethodDisagreement,
    NotNormal,
    NotSubgroup,
    OddPermutationType,
    OrderCapExceeded,
    ParseError,
)
from .perms import Permutation
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    SubgroupEmbedding,
    alternating,
    closure,
    cyclic,
    cyclic_subgroup_indices,
    dihedral,
    direct_product,
    is_elementary_abelian_p_squared,
    is_klein_four,
    quaternion,
    quotient,
    semidirect_product,
    subgroup_from_indices,
    subgroup_generated,
    symmetric,
)
from .specparse import GroupSpec, build, build_from_text, describe, parse_group_spec
from .structure import (
    DEFAULT_NORMAL_ENUM_CAP,
    ClassDecomposition,
    CompositionSeries,
    CycleType,
    an_class_splits,
    center,
    centralizer,
    centralizer_sizes,
    commutator_values,
    composition_series,
    conjugacy_classes,
    cycle_type,
    derived_series,
    derived_subgroup,
    is_odc,
    is_simple,
    is_solvable,
    normal_subgroups,
)
from .commuting import (
    CpReport,
    McEstimate,
    Rational,
    commuting_probability,
    cp_centralizer_sum,
    cp_class_count,
    cp_pairs,
    cp_value,
    mc_estimate,
    wilson_interval_99,
)
from .partitions import (
    PartitionTable,
    build_partition_table,
    cp_alternating_closed,
    cp_dihedral_closed,
    cp_symmetric_closed,
)
from .bounds import (
    BoundReport,
    SimpleGroupFacts,
    run_suite,
    suite_findings,
    suite_holds,
)
from .catalog import (
    CatalogEntry,
    SpectrumReport,
    builtin_catalog,
    export,
    export_catalog,
    order21_nonabelian,
    psl_2_7,
    spectrum,
    spectrum_from_entries,
)
