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

import copy
import os

from oslo_config import cfg

from bayesnet_fourier._i18n import _
from bayesnet_fourier.common import constants

OUTPUT_DIR_ENV = 'BNFOURIER_OUTPUT_DIR'

NETWORK_SOURCES = ('file', 'product', 'chain', 'gstar', 'random_product',
                   'random_chain', 'random_tree', 'random_forest',
                   'random_dag', 'kjunta')
TARGET_KINDS = ('conjunction', 'dnf', 'decision_tree', 'random_dnf',
                'callable')

default_opts = [
    cfg.IntOpt('seed',
               help=_('Master seed; required by every sampled experiment.')),
    cfg.StrOpt('output_dir',
               help=_('Directory receiving result files; defaults to '
                      '$%s, then the working directory.') % OUTPUT_DIR_ENV),
    cfg.StrOpt('output_format', default='csv', choices=['csv', 'json'],
               help=_('Format of the result file.')),
    cfg.IntOpt('jobs', default=1, min=1,
               help=_('Worker processes for independent seeds.')),
    cfg.IntOpt('repeats', default=1, min=1,
               help=_('Seeds spawned from the master seed.')),
    cfg.StrOpt('result_log', default='results.jsonl',
               help=_('Append-only JSON-lines log inside output_dir.')),
]

enumeration_opts = [
    cfg.IntOpt('limit', default=constants.ENUMERATION_LIMIT, min=1,
               help=_('Largest n enumerated over the whole cube.')),
    cfg.IntOpt('spectrum_limit', default=constants.SPECTRUM_LIMIT, min=1,
               help=_('Largest n for which dense spectra are computed.')),
    cfg.IntOpt('orthonormality_max_size',
               help=_('Largest subset size checked for orthonormality; '
                      'unset checks all subsets.')),
]

network_opts = [
    cfg.StrOpt('source', default='random_chain', choices=NETWORK_SOURCES,
               help=_('How the network is obtained.')),
    cfg.StrOpt('file', help=_('Network JSON file for source=file.')),
    cfg.IntOpt('n', default=6, min=1, help=_('Number of variables.')),
    cfg.FloatOpt('mu0', default=0.3,
                 help=_('Chain row for parent value 0.')),
    cfg.FloatOpt('mu1', default=0.6,
                 help=_('Chain row for parent value 1.')),
    cfg.ListOpt('mus', help=_('Product marginals, one per variable.')),
    cfg.FloatOpt('c', default=0.1, help=_('Boundedness of random cpts.')),
    cfg.FloatOpt('alpha', default=0.3,
                 help=_('Difference bound of random cpts.')),
    cfg.FloatOpt('D', default=constants.GSTAR_D,
                 help=_('Anti-tree row spread for source=gstar.')),
    cfg.FloatOpt('gstar_alpha', default=constants.GSTAR_ALPHA,
                 help=_('Anti-tree base row for source=gstar.')),
    cfg.IntOpt('m', default=2, min=1,
               help=_('Chain length per leaf for source=gstar.')),
    cfg.IntOpt('junta_size', default=2, min=0,
               help=_('Junta size for source=kjunta.')),
    cfg.IntOpt('max_parents', default=2, min=0,
               help=_('In-degree cap for source=random_dag.')),
    cfg.IntOpt('roots', default=2, min=1,
               help=_('Component count for source=random_forest.')),
]

target_opts = [
    cfg.StrOpt('kind', default='conjunction', choices=TARGET_KINDS,
               help=_('Target function family.')),
    cfg.ListOpt('literals', default=['+1'],
                help=_('Signed 1-based literals of a conjunction.')),
    cfg.StrOpt('dnf_file', help=_('DNF text file for kind=dnf.')),
    cfg.IntOpt('terms', default=2, min=1,
               help=_('Terms of a random DNF.')),
    cfg.IntOpt('term_length', default=2, min=1,
               help=_('Literals per random DNF term.')),
    cfg.BoolOpt('disjoint', default=False,
                help=_('Draw a disjoint random DNF.')),
    cfg.IntOpt('depth', default=3, min=0,
               help=_('Depth of a random decision tree.')),
    cfg.StrOpt('callable',
               help=_('Dotted path of a function of one assignment.')),
    cfg.StrOpt('range', default=constants.RANGE_PM1,
               choices=list(constants.RANGES),
               help=_('Range of the callable target.')),
]

km_opts = [
    cfg.FloatOpt('theta', default=0.25, help=_('Heavy threshold.')),
    cfg.FloatOpt('gamma', default=0.1, help=_('Coefficient accuracy.')),
    cfg.FloatOpt('delta', default=0.05, help=_('Failure probability.')),
    cfg.StrOpt('mode', default=constants.MODE_EXACT,
               choices=[constants.MODE_EXACT, constants.MODE_SAMPLED],
               help=_('Exact expectations or sampled estimates.')),
    cfg.IntOpt('max_budget', default=constants.MAX_SAMPLE_BUDGET, min=1,
               help=_('Ceiling for the per-estimate sample counts.')),
]

learning_opts = [
    cfg.FloatOpt('epsilon', default=0.1, help=_('Target error.')),
    cfg.FloatOpt('delta', default=0.05, help=_('Failure probability.')),
    cfg.IntOpt('terms', default=2, min=1,
               help=_('Term-count bound s given to the learner.')),
    cfg.FloatOpt('c', default=0.5,
                 help=_('Boundedness used for the truncation length.')),
    cfg.StrOpt('l1_bound', default='product',
               choices=['product', 'chain', 'refined_chain', 'tree',
                        'forest', 'kjunta'],
               help=_('Spectral-norm bound family L1(d).')),
    cfg.IntOpt('junta_size', min=0,
               help=_('Junta size for l1_bound=kjunta.')),
    cfg.StrOpt('algorithm', default='disjoint', choices=['disjoint', 'ptf'],
               help=_('Disjoint-DNF learner or PTF construction.')),
    cfg.StrOpt('mode', default=constants.MODE_EXACT,
               choices=[constants.MODE_EXACT, constants.MODE_SAMPLED],
               help=_('KM mode used by the learner.')),
    cfg.IntOpt('error_samples', default=100000, min=1,
               help=_('Samples for the error estimate when n is too large '
                      'to enumerate.')),
]

tree_learning_opts = [
    cfg.StrOpt('algorithm', default='diff_restricted',
               choices=['baseline', 'diff_restricted', 'lp'],
               help=_('Tree learner.')),
    cfg.IntOpt('samples', default=20000, min=1,
               help=_('Samples drawn from the hidden network.')),
    cfg.FloatOpt('c', default=0.1, help=_('Boundedness parameter.')),
    cfg.FloatOpt('alpha', default=0.4,
                 help=_('Difference bound for the l_P learner.')),
    cfg.FloatOpt('epsilon', default=0.05, help=_('KL target.')),
    cfg.FloatOpt('delta', default=0.05, help=_('Failure probability.')),
    cfg.StrOpt('samples_file',
               help=_('CSV of 0/1 samples used instead of sampling.')),
]

GROUPS = (
    (None, default_opts),
    ('enumeration', enumeration_opts),
    ('network', network_opts),
    ('target', target_opts),
    ('km', km_opts),
    ('learning', learning_opts),
    ('tree_learning', tree_learning_opts),
)


def register_opts(conf=cfg.CONF):
    for group, opts in GROUPS:
        conf.register_opts(opts, group=group)


def list_opts():
    return [(group, copy.deepcopy(opts)) for group, opts in GROUPS]


def snapshot(conf=cfg.CONF):
    """Plain {group: {option: value}} copy of the registered options."""
    doc = {}
    for group, opts in GROUPS:
        source = conf if group is None else conf[group]
        doc[group or 'DEFAULT'] = dict((o.dest, source[o.dest])
                                       for o in opts)
    return doc


def output_dir(conf=cfg.CONF):
    return conf.output_dir or os.environ.get(OUTPUT_DIR_ENV) or os.getcwd()
