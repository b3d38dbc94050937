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

import pickle

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.harness import experiments
from bayesnet_fourier.tests import base


CHAIN = {'source': 'chain', 'n': 4, 'mu0': 0.3, 'mu1': 0.6}


class TestRegistry(base.TestCase):

    def test_names(self):
        self.assertEqual(['end-to-end', 'km', 'learn-dnf', 'learn-tree',
                          'lower-bounds', 'oracle-check', 'spectrum'],
                         experiments.names())
        self.assertEqual('km', experiments.get('km').name)

    def test_unknown(self):
        e = self.assertRaises(exceptions.UnknownExperiment,
                              experiments.get, 'nope')
        self.assertIsInstance(e, exceptions.ConfigError)


class TestExperimentConfig(base.TestCase):

    def test_sections(self):
        config = base.make_config(seed=4, network=CHAIN)
        self.assertEqual(4, config.seed)
        self.assertEqual('chain', config.network.source)
        self.assertEqual(constants.ENUMERATION_LIMIT,
                         config.enumeration.limit)
        self.assertEqual(['network', 'repeats'],
                         sorted(config.settings(['network', 'missing'])))

    def test_is_picklable(self):
        config = base.make_config(seed=4, network=CHAIN)
        again = pickle.loads(pickle.dumps(config))
        self.assertEqual(config.to_dict(), again.to_dict())


class TestRun(base.TestCase):

    def test_lower_bounds(self):
        records = experiments.run('lower-bounds', base.make_config())
        self.assertEqual(['unbounded_chain', 'bounded_chain', 'gstar'],
                         [r.metrics['construction'] for r in records])
        self.assertTrue(all(r.passed for r in records))
        self.assertTrue(all(r.seed is None for r in records))

    def test_spectrum_of_chain_conjunction(self):
        config = base.make_config(network=CHAIN,
                                  target={'kind': 'conjunction',
                                          'literals': ['+1', '-3']})
        [record] = experiments.run('spectrum', config)
        self.assertTrue(record.passed)
        self.assertEqual(constants.CHAIN, record.metrics['structure'])
        self.assertEqual(2, record.metrics['d'])
        self.assertLessEqual(record.metrics['closed_form_residual'],
                             constants.CLOSED_FORM_TOLERANCE)
        self.assertTrue(record.metrics['bound_holds'])

    def test_random_source_needs_seed(self):
        config = base.make_config(network={'source': 'random_tree', 'n': 4})
        self.assertRaises(exceptions.ConfigError, experiments.run,
                          'spectrum', config)

    def test_sampled_km_needs_seed(self):
        config = base.make_config(network=CHAIN, km={'mode': 'sampled'})
        e = self.assertRaises(exceptions.ConfigError, experiments.run,
                              'km', config)
        self.assertEqual('DEFAULT.seed', e.field)

    def test_km_validates_parameters(self):
        config = base.make_config(network=CHAIN, km={'theta': 1.5})
        e = self.assertRaises(exceptions.ConfigError, experiments.run,
                              'km', config)
        self.assertEqual('km.theta', e.field)

    def test_km_exact(self):
        config = base.make_config(network=CHAIN,
                                  target={'kind': 'conjunction',
                                          'literals': ['+1', '+2']})
        [record] = experiments.run('km', config)
        self.assertTrue(record.passed)
        self.assertEqual(record.metrics['heavy'], record.metrics['sets'])
        self.assertEqual(0, record.metrics['missing'])

    def test_summary_row(self):
        config = base.make_config(seed=7, repeats=3, network=CHAIN)
        records = experiments.run('km', config)
        self.assertEqual(4, len(records))
        for record in records[:3]:
            self.assertIsNone(record.passed)
            self.assertTrue(record.metrics['success'])
        summary = records[-1]
        self.assertTrue(summary.passed)
        self.assertTrue(summary.metrics['summary'])
        self.assertEqual(3, summary.metrics['seeds'])
        self.assertEqual(1.0, summary.metrics['success_fraction'])
        self.assertEqual(7, summary.seed)
        self.assertEqual(3, len(set(r.seed for r in records[:3])))

    def test_seeded_runs_repeat(self):
        config = base.make_config(
            seed=3, network={'source': 'random_chain', 'n': 4})
        first = experiments.run('spectrum', config)
        second = experiments.run('spectrum', config)
        self.assertEqual([r.metrics for r in first],
                         [r.metrics for r in second])
        self.assertEqual([r.inputs_digest for r in first],
                         [r.inputs_digest for r in second])
        other = experiments.run('spectrum', base.make_config(
            seed=4, network={'source': 'random_chain', 'n': 4}))
        self.assertNotEqual(first[0].inputs_digest, other[0].inputs_digest)

    def test_learn_dnf_uniform_conjunction(self):
        config = base.make_config(
            network={'source': 'product', 'n': 4, 'mus': ['0.5'] * 4},
            target={'kind': 'conjunction', 'literals': ['+1', '+2']},
            learning={'terms': 1})
        [record] = experiments.run('learn-dnf', config)
        self.assertTrue(record.passed)
        self.assertEqual(0.0, record.metrics['error'])
        self.assertTrue(record.metrics['error_exact'])

    def test_product_marginal_count(self):
        config = base.make_config(
            network={'source': 'product', 'n': 4, 'mus': ['0.5'] * 3})
        e = self.assertRaises(exceptions.ConfigError, experiments.run,
                              'spectrum', config)
        self.assertEqual('network.mus', e.field)

    def test_oracle_check(self):
        records = experiments.run('oracle-check', base.make_config())
        self.assertEqual(10, len(records))
        for record in records:
            self.assertTrue(record.passed, record.metrics)


class TestTreeExperiments(base.TestCase):

    def test_learn_tree_realizable_chain(self):
        config = base.make_config(seed=2, network=CHAIN)
        [record] = experiments.run('learn-tree', config)
        self.assertTrue(record.passed, record.metrics)
        self.assertEqual(3, record.metrics['edges'])
        self.assertTrue(record.metrics['difference_bounded'])
        self.assertTrue(record.metrics['conclusion'])
        self.assertTrue(record.metrics['implication_holds'])

    def test_learn_tree_verdict_is_the_implication(self):
        # the chain's difference of 0.8 is out of reach for alpha = 0.2
        config = base.make_config(
            seed=1,
            network={'source': 'chain', 'n': 4, 'mu0': 0.1, 'mu1': 0.9},
            tree_learning={'algorithm': 'lp', 'c': 0.1, 'alpha': 0.2,
                           'samples': 50000})
        [record] = experiments.run('learn-tree', config)
        self.assertFalse(record.metrics['c2'])
        self.assertFalse(record.metrics['conclusion'])
        self.assertTrue(record.metrics['implication_holds'])
        self.assertTrue(record.passed)

    def test_end_to_end_realizable(self):
        config = base.make_config(seed=2, network=CHAIN,
                                  target={'kind': 'conjunction',
                                          'literals': ['+1', '+2']})
        [record] = experiments.run('end-to-end', config)
        self.assertTrue(record.metrics['realizable'])
        self.assertNotIn('opt', record.metrics)
        self.assertAlmostEqual(2 * record.metrics['epsilon'],
                               record.metrics['threshold'])
        self.assertLessEqual(record.metrics['error'],
                             record.metrics['threshold'])
        self.assertTrue(record.metrics['error_exact'])
        self.assertTrue(record.passed)
