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

"""Seeded experiment pipelines producing ResultRecords.

Every experiment is a registered ExperimentBase. A run is fully determined
by its ExperimentConfig and seed: repeats get seeds spawned from the
master seed and may execute in worker processes, and records always come
back in seed order.
"""

import abc
import copy
import functools

from concurrent import futures

import numpy as np
from oslo_log import log as logging
from oslo_utils import excutils
from oslo_utils import timeutils
import six

from bayesnet_fourier.bn import constructors
from bayesnet_fourier.bn import model
from bayesnet_fourier.common import config as bn_config
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils
from bayesnet_fourier.harness import results
from bayesnet_fourier.harness import sources
from bayesnet_fourier.learning import dnf
from bayesnet_fourier.learning import formulas
from bayesnet_fourier.learning import km
from bayesnet_fourier.spectral import basis
from bayesnet_fourier.spectral import bounds
from bayesnet_fourier.spectral import conjunction
from bayesnet_fourier.spectral import lower_bounds
from bayesnet_fourier.trees import chow_liu
from bayesnet_fourier.trees import diagnostics
from bayesnet_fourier.trees import information

LOG = logging.getLogger(__name__)

EXPERIMENTS = {}


class Section(object):
    """Attribute view of one option group."""

    def __init__(self, values):
        self.__dict__.update(values)

    def to_dict(self):
        return dict(self.__dict__)

    def __repr__(self):
        return '<Section %s>' % sorted(self.__dict__.items())


class ExperimentConfig(object):
    """Picklable snapshot of the registered options.

    Built from ``config.snapshot`` output, {group: {option: value}} with
    'DEFAULT' for ungrouped options. Groups are reachable as attributes,
    e.g. ``config.network.n``.
    """

    def __init__(self, doc):
        self._doc = copy.deepcopy(doc)
        for group, values in self._doc.items():
            if group != 'DEFAULT':
                setattr(self, group, Section(values))
        defaults = self._doc.get('DEFAULT', {})
        self.seed = defaults.get('seed')
        self.repeats = defaults.get('repeats') or 1
        self.jobs = defaults.get('jobs') or 1

    @classmethod
    def from_conf(cls, conf):
        return cls(bn_config.snapshot(conf))

    def settings(self, groups):
        """The option groups a result depends on, for the input digest."""
        doc = dict((g, self._doc[g]) for g in groups if g in self._doc)
        doc['repeats'] = self.repeats
        return doc

    def to_dict(self):
        return copy.deepcopy(self._doc)


def _field(config, group, name):
    return getattr(getattr(config, group), name)


def _check_open_unit(config, group, *names):
    for name in names:
        value = _field(config, group, name)
        if value is None or not 0.0 < value < 1.0:
            raise exceptions.ConfigError(
                field='%s.%s' % (group, name),
                reason='%r does not lie in (0, 1)' % (value,))


def _enumerable(config, n):
    return n <= config.enumeration.limit


def _random_inputs(config):
    return (config.network.source in sources.RANDOM_SOURCES or
            config.target.kind in sources.RANDOM_TARGETS)


def _flatten(prefix, doc):
    out = {}
    for key, value in doc.items():
        if isinstance(value, dict):
            out.update(_flatten('%s%s_' % (prefix, key), value))
        elif key != 'wall_time' and not isinstance(value, (list, tuple)):
            out[prefix + key] = value
    return out


@six.add_metaclass(abc.ABCMeta)
class ExperimentBase(object):
    """One experiment kind.

    ``run_seed`` returns (metrics, passed) rows for a single seed. When
    ``statistical`` is set and several seeds run, the per-seed rows lose
    their verdict and a summary row checks the success fraction instead.
    """

    name = None
    groups = ()
    statistical = False

    def needs_seed(self, config):
        return True

    def validate(self, config):
        pass

    @abc.abstractmethod
    def run_seed(self, config, rng):
        """Rows of (metrics dict, passed) for one seed."""

    def records(self, config, seed):
        watch = timeutils.StopWatch()
        watch.start()
        rng = utils.make_rng(0 if seed is None else seed)
        rows = self.run_seed(config, rng)
        watch.stop()
        digest = results.inputs_digest(self.name,
                                       config.settings(self.groups), seed)
        elapsed = watch.elapsed() / max(len(rows), 1)
        return [results.ResultRecord(self.name, seed, digest, metrics,
                                     passed, elapsed)
                for metrics, passed in rows]


def register(cls):
    EXPERIMENTS[cls.name] = cls()
    return cls


def get(name):
    try:
        return EXPERIMENTS[name]
    except KeyError:
        raise exceptions.UnknownExperiment(name=name)


def names():
    return sorted(EXPERIMENTS)


def _learn_tree(section, stats):
    algorithm = section.algorithm
    if algorithm == 'baseline':
        return chow_liu.chow_liu_baseline(stats)
    if algorithm == 'diff_restricted':
        return chow_liu.chow_liu_diff_restricted(stats, section.c,
                                                 section.delta)
    if algorithm == 'lp':
        return chow_liu.lp_chow_liu(stats, section.c, section.alpha)
    raise exceptions.ConfigError(field='tree_learning.algorithm',
                                 reason='unknown algorithm %r' % (algorithm,))


def _validate_tree_learning(config):
    _check_open_unit(config, 'tree_learning', 'epsilon', 'delta')
    section = config.tree_learning
    if not 0.0 < section.c < 0.5:
        raise exceptions.ConfigError(field='tree_learning.c',
                                     reason='%r does not lie in (0, 0.5)'
                                            % (section.c,))
    if section.algorithm == 'lp' and not (
            0.0 <= section.alpha <= 1.0 - 2.0 * section.c):
        raise exceptions.ConfigError(field='tree_learning.alpha',
                                     reason='%r does not lie in [0, 1 - 2c]'
                                            % (section.alpha,))


def _tree_samples(config, net, rng):
    section = config.tree_learning
    if section.samples_file:
        X = chow_liu.load_samples_csv(section.samples_file)
        if X.shape[1] != net.n:
            raise exceptions.ConfigError(
                field='tree_learning.samples_file',
                reason='%d columns for a network of %d variables'
                       % (X.shape[1], net.n))
        return X
    return model.ancestral_sample(net, rng, section.samples)


def _learner(config):
    if config.learning.algorithm == 'disjoint':
        return dnf.learn_disjoint_dnf
    return dnf.learn_dnf


def _learn_function(config, net, f, rng):
    """(hypothesis, None) or (None, metrics of a capped PTF run)."""
    learning = config.learning
    report = model.validate(net)
    params = dnf.LearnParams(learning.epsilon, learning.delta,
                             learning.terms, learning.c,
                             sources.build_l1_of_d(learning, report))
    try:
        h = _learner(config)(net, f, params, rng, learning.mode,
                             config.enumeration.limit,
                             config.km.max_budget)
    except exceptions.PtfIterationCapReached as e:
        LOG.warning('PTF construction capped: %s', e)
        return None, {'ptf_cap_reached': True, 'ptf_updates': e.updates,
                      'ptf_cap': e.cap}
    return h, None


def _error(config, net, f, h, rng):
    if _enumerable(config, net.n):
        return dnf.exact_error(net, f, h, config.enumeration.limit), True
    return dnf.estimate_error(net, f, h, config.learning.error_samples,
                              rng), False


@register
class SpectrumExperiment(ExperimentBase):
    """Spectrum, orthonormality and bound checks for one (net, target)."""

    name = 'spectrum'
    groups = ('enumeration', 'network', 'target')

    def needs_seed(self, config):
        return _random_inputs(config)

    def run_seed(self, config, rng):
        limit = config.enumeration.spectrum_limit
        net = sources.build_net(config.network, rng)
        f = sources.build_target(config.target, net.n, rng)
        report = model.validate(net)
        X, p, values = basis.enumerate_cube(net, f, limit)
        dense = basis.spectrum_vector(net, f, limit)
        l1 = float(np.sum(np.abs(dense)))
        parseval = abs(float(np.dot(dense, dense)) -
                       float(np.dot(p, values * values)))
        ortho = basis.orthonormality_residual(
            net, config.enumeration.orthonormality_max_size, limit)
        tolerance = constants.ORTHONORMALITY_TOLERANCE
        metrics = {'n': net.n, 'structure': report.structure,
                   'c_star': report.c_star, 'alpha': report.alpha,
                   'nonzero': int(np.sum(np.abs(dense) >
                                         constants.COEFFICIENT_DROP)),
                   'l1': l1, 'expectation': float(dense[0]),
                   'parseval_residual': parseval,
                   'orthonormality_residual': ortho}
        passed = parseval <= tolerance and ortho <= tolerance
        if isinstance(f, conjunction.Conjunction):
            passed = self._conjunction_checks(net, report, f, dense, l1,
                                              metrics) and passed
        return [(metrics, passed)]

    def _conjunction_checks(self, net, report, f, dense, l1, metrics):
        tolerance = constants.CLOSED_FORM_TOLERANCE
        passed = True
        best = bounds.l1_bounds(report, f.d).best()
        metrics.update(d=f.d, l1_bound=best,
                       bound_holds=best is None or l1 <= best + tolerance)
        passed = passed and metrics['bound_holds']
        lo, hi = conjunction.expectation_range(report.c_star, f.d)
        metrics['expectation_in_range'] = (
            lo - tolerance <= dense[0] <= hi + tolerance)
        passed = passed and metrics['expectation_in_range']
        if report.structure == constants.CHAIN and net.n > 1:
            closed = conjunction.chain_spectrum(net, f)
            metrics['closed_form_residual'] = float(
                np.max(np.abs(closed - dense)))
            metrics['closed_norm_residual'] = abs(
                conjunction.chain_spectral_norm_exact(net, f) - l1)
            passed = (passed and
                      metrics['closed_form_residual'] <= tolerance and
                      metrics['closed_norm_residual'] <= tolerance)
        elif report.structure == constants.PRODUCT:
            metrics['closed_norm_residual'] = abs(
                conjunction.product_spectral_norm(net, f) - l1)
            passed = (passed and
                      metrics['closed_norm_residual'] <= tolerance)
        return passed


@register
class KmExperiment(ExperimentBase):
    """One KM run, judged against the enumerated spectrum when possible."""

    name = 'km'
    groups = ('enumeration', 'network', 'target', 'km')
    statistical = True

    def needs_seed(self, config):
        return (_random_inputs(config) or
                config.km.mode == constants.MODE_SAMPLED)

    def validate(self, config):
        _check_open_unit(config, 'km', 'theta', 'gamma', 'delta')

    def run_seed(self, config, rng):
        section = config.km
        net = sources.build_net(config.network, rng)
        f = dnf.target_oracle(
            sources.build_target(config.target, net.n, rng),
            config.target.range)
        params = km.KmParams(section.theta, section.gamma, section.delta)
        output = km.km_run(net, f, params, section.mode, rng,
                           config.enumeration.limit, section.max_budget)
        list_bound = constants.KM_LIST_FACTOR / section.theta ** 2
        metrics = {'n': net.n, 'mode': section.mode,
                   'sets': len(output.sets), 'list_bound': list_bound}
        metrics.update(_flatten('km_', output.stats.to_dict()))
        if output.budget is not None:
            metrics.update(_flatten('budget_', output.budget.to_dict()))
        passed = len(output.sets) <= list_bound
        if _enumerable(config, net.n):
            passed = self._check_sets(config, net, f, output,
                                      metrics) and passed
        return [(metrics, passed)]

    def _check_sets(self, config, net, f, output, metrics):
        theta = config.km.theta
        dense = basis.spectrum_vector(net, f, config.enumeration.limit)
        heavy = set(int(S) for S in np.flatnonzero(np.abs(dense) >= theta))
        found = set(output.sets)
        missing = heavy - found
        light = [S for S in found if abs(dense[S]) < theta / 2.0]
        error = max([abs(output.coeffs[S] - dense[S]) for S in found] or
                    [0.0])
        metrics.update(heavy=len(heavy), missing=len(missing),
                       light=len(light), max_coefficient_error=error)
        if config.km.mode == constants.MODE_EXACT:
            return (found == heavy and
                    error <= constants.CLOSED_FORM_TOLERANCE)
        return not missing and not light and error <= config.km.gamma


@register
class LearnDnfExperiment(ExperimentBase):
    """Learn a DNF or decision tree target under a known network."""

    name = 'learn-dnf'
    groups = ('enumeration', 'network', 'target', 'learning', 'km')
    statistical = True

    def needs_seed(self, config):
        return (_random_inputs(config) or
                config.learning.mode == constants.MODE_SAMPLED)

    def validate(self, config):
        _check_open_unit(config, 'learning', 'epsilon', 'delta', 'c')

    def run_seed(self, config, rng):
        learning = config.learning
        net = sources.build_net(config.network, rng)
        f = sources.build_target(config.target, net.n, rng)
        metrics = {'n': net.n, 'algorithm': learning.algorithm,
                   'mode': learning.mode, 'epsilon': learning.epsilon,
                   'target_terms': sources.term_count(f, learning.terms)}
        h, capped = _learn_function(config, net, f, rng)
        if h is None:
            metrics.update(capped)
            return [(metrics, False)]
        error, exact = _error(config, net, f, h, rng)
        metrics.update(_flatten('learner_', h.report))
        metrics.update(error=error, error_exact=exact)
        passed = error <= learning.epsilon
        if 'linf_within_bound' in h.report:
            passed = passed and h.report['linf_within_bound']
        return [(metrics, passed)]


@register
class LearnTreeExperiment(ExperimentBase):
    """Learn a tree network from samples of a hidden network."""

    name = 'learn-tree'
    groups = ('enumeration', 'network', 'tree_learning')
    statistical = True

    def validate(self, config):
        _validate_tree_learning(config)

    def run_seed(self, config, rng):
        section = config.tree_learning
        net = sources.build_net(config.network, rng)
        X = _tree_samples(config, net, rng)
        stats = chow_liu.PairwiseStats.from_samples(X)
        tree, learned = _learn_tree(section, stats)
        learned_report = model.validate(learned)
        metrics = {'n': net.n, 'algorithm': section.algorithm,
                   'samples': stats.m, 'edges': len(tree.edges()),
                   'roots': len(tree.roots),
                   'tree': ';'.join('%d>%d' % e for e in tree.edges()),
                   'learned_c': learned_report.c_star,
                   'learned_alpha': learned_report.alpha,
                   'recommended_samples': diagnostics.recommended_sample_size(
                       net.n, section.epsilon, section.delta)}
        passed = True
        if section.algorithm == 'diff_restricted':
            bound = 0.5 - section.c / 2.0
            metrics['difference_bounded'] = (
                learned_report.alpha <=
                bound + constants.CLOSED_FORM_TOLERANCE)
            passed = metrics['difference_bounded']
        if _enumerable(config, net.n):
            conditions = diagnostics.high_level_conditions(
                net, tree, learned, section.epsilon,
                limit=config.enumeration.limit)
            metrics.update(conditions)
            metrics['pinsker_tv_bound'] = information.pinsker_bound(
                conditions['kl_learned'])
            passed = passed and conditions['implication_holds']
        return [(metrics, passed)]


@register
class EndToEndExperiment(ExperimentBase):
    """Learn the network's tree, then learn f in the learned basis.

    The error is measured under the hidden network. Realizable hidden
    networks must reach 2 eps; otherwise sqrt(opt / 2) is added, opt being
    the KL divergence of the best tree projection.
    """

    name = 'end-to-end'
    groups = ('enumeration', 'network', 'target', 'learning',
              'tree_learning', 'km')
    statistical = True

    def validate(self, config):
        _check_open_unit(config, 'learning', 'epsilon', 'delta', 'c')
        _validate_tree_learning(config)

    def run_seed(self, config, rng):
        limit = config.enumeration.limit
        epsilon = config.learning.epsilon
        hidden = sources.build_net(config.network, rng)
        f = sources.build_target(config.target, hidden.n, rng)
        stats = chow_liu.PairwiseStats.from_samples(
            _tree_samples(config, hidden, rng))
        tree, learned = _learn_tree(config.tree_learning, stats)
        realizable = sources.is_realizable(hidden)
        metrics = {'n': hidden.n, 'realizable': realizable,
                   'tree_algorithm': config.tree_learning.algorithm,
                   'learning_algorithm': config.learning.algorithm,
                   'epsilon': epsilon, 'edges': len(tree.edges())}
        h, capped = _learn_function(config, learned, f, rng)
        if h is None:
            metrics.update(capped)
            return [(metrics, False)]
        error, exact = _error(config, hidden, f, h, rng)
        metrics.update(error=error, error_exact=exact)
        threshold = 2.0 * epsilon
        if _enumerable(config, hidden.n):
            kl = model.kl_between(hidden, learned, limit)
            metrics.update(kl_tree=kl,
                           tv_bound=information.pinsker_bound(kl))
            if not realizable:
                opt = model.kl_between(
                    hidden, diagnostics.project_onto_tree(
                        hidden, diagnostics.best_tree(hidden, limit), limit),
                    limit)
                metrics['opt'] = opt
                threshold += information.pinsker_bound(opt)
        metrics['threshold'] = threshold
        return [(metrics, error <= threshold)]


@register
class LowerBoundsExperiment(ExperimentBase):
    """The three spectral-norm lower-bound certificates."""

    name = 'lower-bounds'

    def needs_seed(self, config):
        return False

    def run_seed(self, config, rng):
        rows = []
        for cert in lower_bounds.lower_bound_certificates():
            metrics = cert.to_dict()
            metrics.pop('pass')
            rows.append((metrics, cert.passed))
        return rows


def _grid_edge_cost(stats, i, j, c, alpha, step=1e-3):
    """Smallest l_P edge cost over a grid of bounded conditionals."""
    w = stats.parent_counts(j) / stats.m
    p = stats.conditional(i, j, smoothing=False)
    grid = np.arange(c, 1.0 - c + step / 2.0, step)
    kl0 = information.bernoulli_kl(p[0], grid)
    kl1 = information.bernoulli_kl(p[1], grid)
    total = w[0] * kl0[:, None] + w[1] * kl1[None, :]
    total[np.abs(grid[:, None] - grid[None, :]) > alpha] = np.inf
    return (float(np.min(total)) -
            information.mutual_information(stats.joint(i, j)))


@register
class OracleCheckExperiment(ExperimentBase):
    """Closed forms and optimizers against enumeration and grid search.

    Each row reports the largest residual over a handful of instances
    drawn from the seed (0 when no seed is given).
    """

    name = 'oracle-check'
    groups = ('enumeration',)
    instances = 5
    n = 6

    def needs_seed(self, config):
        return False

    def _row(self, check, residuals, tolerance):
        worst = float(max(residuals))
        return ({'check': check, 'instances': len(residuals),
                 'max_residual': worst, 'tolerance': tolerance},
                worst <= tolerance)

    def _random_function(self, n, rng):
        table = rng.integers(0, 2, size=1 << n).astype(np.float64)
        weights = 1 << np.arange(n)
        return basis.BooleanFunction(
            lambda X: table[np.asarray(X, dtype=np.int64) @ weights],
            range=constants.RANGE_01, vectorized=True, name='table')

    def _random_conjunction(self, n, rng, d):
        chosen = rng.choice(n, size=d, replace=False)
        signs = rng.integers(0, 2, size=d)
        return conjunction.Conjunction.from_indices(
            [int(v) for v, s in zip(chosen, signs) if s],
            [int(v) for v, s in zip(chosen, signs) if not s])

    def run_seed(self, config, rng):
        limit = config.enumeration.limit
        n = self.n
        ortho, parseval, closed, chain_norm, product_norm = [], [], [], [], []
        walsh, km_mismatch, edge = [], [], []
        for _ in range(self.instances):
            dag = constructors.random_dag(n, rng, max_parents=2)
            ortho.append(basis.orthonormality_residual(dag, limit=limit))
            g = self._random_function(n, rng)
            _, p, values = basis.enumerate_cube(dag, g, limit)
            dense = basis.spectrum_vector(dag, g, limit)
            parseval.append(abs(float(np.dot(dense, dense)) -
                                float(np.dot(p, values * values))))

            chain = constructors.random_chain(n, rng)
            f = self._random_conjunction(n, rng, int(rng.integers(1, 4)))
            dense = basis.spectrum_vector(chain, f, limit)
            closed.append(float(np.max(np.abs(
                conjunction.chain_spectrum(chain, f) - dense))))
            chain_norm.append(abs(conjunction.chain_spectral_norm_exact(
                chain, f) - float(np.sum(np.abs(dense)))))

            product = constructors.random_product(n, rng)
            product_norm.append(abs(
                conjunction.product_spectral_norm(product, f) -
                float(np.sum(np.abs(basis.spectrum_vector(product, f,
                                                          limit))))))

            uniform = constructors.make_product([0.5] * n)
            walsh.append(float(np.max(np.abs(
                basis.classical_fourier(g, n, limit) -
                basis.spectrum_vector(uniform, g, limit)))))

            target = dnf.target_oracle(
                formulas.random_dnf(n, 2, 2, rng), constants.RANGE_PM1)
            exact = km.km_run(chain, target, km.KmParams(0.25, 0.25, 0.5),
                              constants.MODE_EXACT, limit=limit)
            heavy = np.flatnonzero(
                np.abs(basis.spectrum_vector(chain, target, limit)) >= 0.25)
            km_mismatch.append(len(set(exact.sets) ^
                                   set(int(S) for S in heavy)))

            stats = chow_liu.PairwiseStats.from_net(
                constructors.random_dag(3, rng, max_parents=2), limit=limit)
            fit = chow_liu.lp_edge_cost(stats, 1, 0, 0.1, 0.2)
            edge.append(max(0.0, fit.cost -
                            _grid_edge_cost(stats, 1, 0, 0.1, 0.2)))

        single = conjunction.product_spectral_norm(
            [0.9], conjunction.Conjunction.from_indices([0]))
        enumerated, factorized = lower_bounds.gstar_factorization()
        tolerance = constants.CLOSED_FORM_TOLERANCE
        return [
            self._row('orthonormality', ortho,
                      constants.ORTHONORMALITY_TOLERANCE),
            self._row('parseval', parseval,
                      constants.ORTHONORMALITY_TOLERANCE),
            self._row('chain_closed_form', closed, tolerance),
            self._row('chain_spectral_norm', chain_norm, tolerance),
            self._row('product_spectral_norm', product_norm, tolerance),
            self._row('single_literal_norm',
                      [abs(single - constants.SINGLE_LITERAL_NORM)],
                      tolerance),
            self._row('walsh_hadamard', walsh, tolerance),
            self._row('km_exact_sets', km_mismatch, 0),
            self._row('lp_edge_cost', edge, 1e-6),
            self._row('gstar_factorization', [abs(enumerated - factorized)],
                      tolerance),
        ]


def _run_seed(name, config, seed):
    experiment = get(name)
    try:
        return experiment.records(config, seed)
    except Exception:
        with excutils.save_and_reraise_exception():
            LOG.error('Experiment %(name)s failed for seed %(seed)s',
                      {'name': name, 'seed': seed})


def _summary(experiment, config, records):
    successes = sum(1 for r in records if r.passed)
    fraction = float(successes) / len(records)
    for record in records:
        record.metrics['success'] = record.passed
        record.passed = None
    digest = results.inputs_digest(experiment.name,
                                   config.settings(experiment.groups),
                                   config.seed)
    metrics = {'summary': True, 'seeds': len(records),
               'successes': successes, 'success_fraction': fraction,
               'required_fraction': constants.SEEDED_SUCCESS_FRACTION}
    return results.ResultRecord(
        experiment.name, config.seed, digest, metrics,
        fraction >= constants.SEEDED_SUCCESS_FRACTION,
        sum(r.wall_time for r in records))


def run(name, config):
    """Records of experiment ``name`` over every configured seed."""
    experiment = get(name)
    experiment.validate(config)
    if config.seed is None:
        if experiment.needs_seed(config):
            raise exceptions.ConfigError(
                field='DEFAULT.seed',
                reason='the %s experiment draws random inputs' % name)
        seeds = [None]
    elif config.repeats == 1:
        seeds = [config.seed]
    else:
        seeds = utils.spawn_seeds(config.seed, config.repeats)
    LOG.info('Running %(name)s over %(count)d seed(s) with %(jobs)d '
             'job(s)', {'name': name, 'count': len(seeds),
                        'jobs': config.jobs})
    worker = functools.partial(_run_seed, name, config)
    if config.jobs > 1 and len(seeds) > 1:
        with futures.ProcessPoolExecutor(
                max_workers=min(config.jobs, len(seeds))) as pool:
            batches = list(pool.map(worker, seeds))
    else:
        batches = [worker(seed) for seed in seeds]
    records = [r for batch in batches for r in batch]
    if experiment.statistical and len(seeds) > 1:
        records.append(_summary(experiment, config, records))
    return records
