"""Exact sum-product combinatorics: set arithmetic, energies, incidences and
mechanical checks of the inequalities relating them."""

from .chain import ChainReport, proof_chain
from .energy import (
    EnergyValue, additive_energy, cubic_energy, cubic_energy_via_slices,
    energy_on_subset, multiplicative_energy, popular_set,
)
from .errors import (
    ComputationTooLarge, DegenerateInputError, ParseError, SumprodError,
    UndersizedInputError, ValidationError, ZeroDivisorError,
)
from .exact import Line, PlanarPointSet, Point2, Scalar, canonical_line, line_through_points
from .families import FamilySpec, generate, parse_family_spec, parse_set_file
from .incidence import (
    OriginDecomposition, WeightedLineSet, count_incidences, dyadic_weight_groups,
    origin_line_decomposition, rich_lines, rich_points, rich_sums, translate_and_weight,
    weighted_incidences,
)
from .sets import ElementSet, RepFunction, arithmetic_set, rep_function, set_size, slice_set
from .verify import (
    InequalityReport, check_exact_inequalities, check_st_reports, elekes_check,
    report_document, theorem_report,
)

__version__ = "0.1.0"
