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

"""Networks, targets and bound families named by configuration."""

from oslo_log import log as logging
from oslo_utils import importutils

from bayesnet_fourier.bn import constructors
from bayesnet_fourier.bn import io as bn_io
from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.learning import formulas
from bayesnet_fourier.spectral import basis
from bayesnet_fourier.spectral import bounds
from bayesnet_fourier.spectral import conjunction

LOG = logging.getLogger(__name__)

RANDOM_SOURCES = ('random_product', 'random_chain', 'random_tree',
                  'random_forest', 'random_dag', 'kjunta')
RANDOM_TARGETS = ('decision_tree', 'random_dnf')


def _required(section, group, name):
    value = getattr(section, name)
    if value is None:
        raise exceptions.ConfigError(field='%s.%s' % (group, name),
                                     reason='a value is required here')
    return value


def _network(network, rng):
    source = network.source
    n = network.n
    if source == 'file':
        return bn_io.load(_required(network, 'network', 'file'))
    if source == 'product':
        mus = [float(m) for m in _required(network, 'network', 'mus')]
        if len(mus) != n:
            raise exceptions.ConfigError(
                field='network.mus',
                reason='%d marginals given for n=%d' % (len(mus), n))
        return constructors.make_product(mus)
    if source == 'chain':
        return constructors.make_constant_chain(n, network.mu0, network.mu1)
    if source == 'gstar':
        return constructors.make_gstar(n, network.m, network.gstar_alpha,
                                       network.D, network.mu0, network.mu1)
    if source == 'random_product':
        return constructors.random_product(n, rng, network.c)
    if source == 'random_chain':
        return constructors.random_chain(n, rng, network.c, network.alpha)
    if source == 'random_tree':
        return constructors.random_tree(n, rng, network.c, network.alpha)
    if source == 'random_forest':
        return constructors.random_forest(n, rng, network.c, network.alpha,
                                          network.roots)
    if source == 'random_dag':
        return constructors.random_dag(n, rng, network.max_parents,
                                       network.c)
    if source == 'kjunta':
        return constructors.make_kjunta(n, range(network.junta_size), rng,
                                        network.c)
    raise exceptions.ConfigError(field='network.source',
                                 reason='unknown source %r' % (source,))


def build_net(network, rng):
    """The network described by the [network] section."""
    try:
        net = _network(network, rng)
    except exceptions.InvalidInput as e:
        raise exceptions.ConfigError(field='network.%s' % network.source,
                                     reason=e.msg)
    LOG.info('Network from source %(source)s: %(net)r',
             {'source': network.source, 'net': net})
    return net


def _target(target, n, rng):
    kind = target.kind
    if kind == 'conjunction':
        f = conjunction.Conjunction.from_literals(target.literals)
        if f.mask >> n:
            raise exceptions.ConfigError(
                field='target.literals',
                reason='literals %s exceed n=%d' % (target.literals, n))
        return f
    if kind == 'dnf':
        return formulas.load(_required(target, 'target', 'dnf_file'), n=n)
    if kind == 'decision_tree':
        return formulas.random_decision_tree(n, target.depth, rng)
    if kind == 'random_dnf':
        return formulas.random_dnf(n, target.terms, target.term_length, rng,
                                   disjoint=target.disjoint)
    if kind == 'callable':
        path = _required(target, 'target', 'callable')
        try:
            func = importutils.import_class(path)
        except ImportError as e:
            raise exceptions.ConfigError(field='target.callable',
                                         reason=str(e))
        return basis.as_function(func, range=target.range)
    raise exceptions.ConfigError(field='target.kind',
                                 reason='unknown kind %r' % (kind,))


def build_target(target, n, rng):
    """The target function described by the [target] section."""
    try:
        f = _target(target, n, rng)
    except exceptions.InvalidInput as e:
        raise exceptions.ConfigError(field='target.%s' % target.kind,
                                     reason=e.msg)
    LOG.info('Target %(kind)s: %(f)r', {'kind': target.kind, 'f': f})
    return f


def term_count(f, default):
    """Terms of a formula target, else the configured bound."""
    if isinstance(f, formulas.DnfFormula):
        return f.s
    if isinstance(f, formulas.DecisionTree):
        return f.to_dnf().s
    if isinstance(f, conjunction.Conjunction):
        return 1
    return default


def build_l1_of_d(learning, report):
    """L1(d) for the [learning] bound family, fed from a net's report."""
    k = learning.junta_size
    try:
        return bounds.l1_of_d(learning.l1_bound, c=report.c_star,
                              alpha=report.alpha, d_mu=report.alpha_mu,
                              d_sigma=report.alpha_sigma, k=k)
    except exceptions.InvalidInput as e:
        raise exceptions.ConfigError(field='learning.l1_bound', reason=e.msg)


def is_realizable(net):
    """True when the net is itself a tree or forest."""
    return model.validate(net).structure != constants.GENERAL
