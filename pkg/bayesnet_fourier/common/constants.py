# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

# Bump CONSTANTS_VERSION whenever a threshold below changes; it is written
# into every result record.
CONSTANTS_VERSION = '1'

# Structure classes reported by bn.model.validate
PRODUCT = 'product'
CHAIN = 'chain'
TREE = 'tree'
FOREST = 'forest'
GENERAL = 'general'
STRUCTURES = (PRODUCT, CHAIN, TREE, FOREST, GENERAL)

# Function range tags
RANGE_01 = '01'
RANGE_PM1 = 'pm1'
RANGES = (RANGE_01, RANGE_PM1)

# KM modes
MODE_EXACT = 'exact'
MODE_SAMPLED = 'sampled'

# Hypothesis clamps
CLAMP_NONE = 'none'
CLAMP_UNIT = 'unit'

# Arborescence modes
MAXIMUM = 'max'
MINIMUM = 'min'

# Virtual root marker in parent maps
VIRTUAL_ROOT = -1

# Numerical tolerances
COEFFICIENT_DROP = 1e-14
ORTHONORMALITY_TOLERANCE = 1e-10
CLOSED_FORM_TOLERANCE = 1e-9
BISECTION_TOLERANCE = 1e-10
FLOAT_DIGITS = 12

# Enumeration defaults
ENUMERATION_LIMIT = 20
SPECTRUM_LIMIT = 24

# Spectral-norm constants
SINGLE_LITERAL_NORM = 1.2
PRODUCT_NORM_BASE = 1.21
UNBOUNDED_CHAIN_GROWTH = 1.2
BOUNDED_CHAIN_TAIL_SUM = 1.07147
GSTAR_GROWTH = 1.05

# Lower-bound constructions
UNBOUNDED_CHAIN_C = 0.00001
UNBOUNDED_CHAIN_ALPHA = 0.353
BOUNDED_CHAIN_MU0 = 0.07
BOUNDED_CHAIN_MU1 = 0.56
BOUNDED_CHAIN_LENGTH = 23
GSTAR_ALPHA = 0.01
GSTAR_D = 0.49
GSTAR_N = 3

# KM
KM_LIST_FACTOR = 4.0
KM_G_EVALUATION_SLACK = 2.0
KM_Z3_VARIANCE = 1.25
MAX_SAMPLE_BUDGET = 10 ** 9

# PTF construction
PTF_LINF_FACTOR = 5.0
PTF_VIOLATION_FACTOR = 1.5
PTF_ITERATION_FACTOR = 4.0

# Fraction of seeded runs that must succeed in statistical experiments
SEEDED_SUCCESS_FRACTION = 0.9

THRESHOLDS = {
    'version': CONSTANTS_VERSION,
    'single_literal_norm': SINGLE_LITERAL_NORM,
    'product_norm_base': PRODUCT_NORM_BASE,
    'unbounded_chain_growth': UNBOUNDED_CHAIN_GROWTH,
    'bounded_chain_tail_sum': BOUNDED_CHAIN_TAIL_SUM,
    'gstar_growth': GSTAR_GROWTH,
    'ptf_linf_factor': PTF_LINF_FACTOR,
    'km_list_factor': KM_LIST_FACTOR,
    'orthonormality_tolerance': ORTHONORMALITY_TOLERANCE,
    'closed_form_tolerance': CLOSED_FORM_TOLERANCE,
    'seeded_success_fraction': SEEDED_SUCCESS_FRACTION,
}
