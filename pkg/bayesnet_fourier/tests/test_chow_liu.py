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

import os

import fixtures
import hypothesis
from hypothesis import strategies as st
import numpy as np

from bayesnet_fourier.bn import constructors
from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils
from bayesnet_fourier.tests import base
from bayesnet_fourier.tests import oracles
from bayesnet_fourier.trees import chow_liu


class TestPairwiseStats(base.TestCase):

    def test_counts(self):
        X = np.array([[0, 1], [1, 1], [1, 0], [1, 1]], dtype=np.uint8)
        stats = chow_liu.PairwiseStats.from_samples(X)
        self.assertEqual(4, stats.m)
        self.assertAllClose([[0, 1], [1, 2]], stats.counts[0, 1])
        self.assertAlmostEqual(0.75, stats.marginal(0))
        self.assertAllClose([1, 3], stats.parent_counts(0))
        self.assertAllClose([2.0 / 3.0, 0.6],
                            stats.conditional(1, 0, smoothing=True))
        self.assertAllClose([1.0, 2.0 / 3.0],
                            stats.conditional(1, 0, smoothing=False))

    def test_unobserved_parent_value(self):
        X = np.array([[1, 0], [1, 1]], dtype=np.uint8)
        stats = chow_liu.PairwiseStats.from_samples(X)
        self.assertAllClose([0.5, 0.5],
                            stats.conditional(1, 0, smoothing=False))

    def test_shards_merge(self):
        net = constructors.random_tree(5, 2)
        X = model.ancestral_sample(net, 4, 1000)
        whole = chow_liu.PairwiseStats.from_samples(X)
        merged = chow_liu.PairwiseStats.from_shards([X[:300], X[300:700],
                                                     X[700:]])
        self.assertAllClose(whole.counts, merged.counts)
        self.assertEqual(whole.m, merged.m)

    def test_rejects_bad_input(self):
        self.assertRaises(exceptions.InvalidInput,
                          chow_liu.PairwiseStats.from_samples, [[0, 2]])
        self.assertRaises(exceptions.ShapeMismatch,
                          chow_liu.PairwiseStats.from_samples,
                          np.zeros((0, 3)))
        a = chow_liu.PairwiseStats.from_samples([[0, 1]])
        b = chow_liu.PairwiseStats.from_samples([[0, 1, 1]])
        self.assertRaises(exceptions.ShapeMismatch, a.merge, b)

    def test_from_net(self):
        net = constructors.make_constant_chain(3, 0.3, 0.6)
        stats = chow_liu.PairwiseStats.from_net(net, m=10.0)
        self.assertEqual(10.0, stats.m)
        self.assertAllClose([0.3, 0.6], stats.conditional(1, 0, False))


class TestSampleFiles(base.TestCase):

    def setUp(self):
        super(TestSampleFiles, self).setUp()
        self.tempdir = self.useFixture(fixtures.TempDir()).path

    def _write(self, text):
        path = os.path.join(self.tempdir, 'samples.csv')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_header_is_skipped(self):
        X = chow_liu.load_samples_csv(self._write('x0,x1\n0,1\n1,1\n'))
        self.assertEqual((2, 2), X.shape)
        self.assertEqual(np.uint8, X.dtype)

    def test_no_header(self):
        X = chow_liu.load_samples_csv(self._write('0,1,1\n'))
        self.assertEqual([[0, 1, 1]], X.tolist())

    def test_bad_values(self):
        self.assertRaises(exceptions.InvalidInput, chow_liu.load_samples_csv,
                          self._write('0,1\n2,1\n'))
        self.assertRaises(exceptions.InvalidInput, chow_liu.load_samples_csv,
                          self._write('0,1\n1,x\n'))


class TestBaseline(base.TestCase):

    def test_recovers_chain_from_exact_stats(self):
        net = constructors.make_constant_chain(4, 0.2, 0.8)
        stats = chow_liu.PairwiseStats.from_net(net)
        tree, learned = chow_liu.chow_liu_baseline(stats, smoothing=False)
        self.assertEqual([(0, 1), (1, 2), (2, 3)], tree.undirected_edges())
        self.assertAlmostEqual(0.0, model.kl_between(net, learned))

    def test_recovers_chain_from_samples(self):
        net = constructors.make_constant_chain(5, 0.2, 0.8).relabel(
            [3, 0, 4, 1, 2])
        X = model.ancestral_sample(net, 6, 20000)
        tree, _ = chow_liu.chow_liu_baseline(
            chow_liu.PairwiseStats.from_samples(X))
        expected = sorted(tuple(sorted((ps[0], v)))
                          for v, ps in enumerate(net.parents) if ps)
        self.assertEqual(expected, tree.undirected_edges())

    def test_single_variable(self):
        stats = chow_liu.PairwiseStats.from_samples([[1], [0], [1]])
        tree, learned = chow_liu.chow_liu_baseline(stats)
        self.assertEqual([0], tree.roots)
        self.assertAlmostEqual(0.6, learned.cpt[0][0])


class TestDiffRestricted(base.TestCase):

    @base.SLOW_PROPERTY
    @hypothesis.given(st.integers(min_value=2, max_value=6),
                      st.integers(min_value=0, max_value=2 ** 32 - 1),
                      st.sampled_from([0.1, 0.2, 0.4]))
    def test_output_is_difference_bounded(self, n, seed, c):
        net = constructors.random_dag(n, seed, max_parents=2)
        X = model.ancestral_sample(net, seed, 2000)
        forest, learned = chow_liu.chow_liu_diff_restricted(
            chow_liu.PairwiseStats.from_samples(X), c, 0.1)
        report = model.validate(learned)
        bound = 0.5 - c / 2.0
        self.assertLessEqual(report.alpha_mu, bound + 1e-12)
        self.assertLessEqual(report.alpha_sigma, bound + 1e-12)
        self.assertNotEqual(constants.GENERAL, report.structure)
        for p, v in forest.edges():
            self.assertTrue(all(c / 2.0 <= q <= 1.0 - c / 2.0
                                for q in learned.cpt[v]))

    def test_everything_filtered(self):
        net = constructors.make_constant_chain(3, 0.1, 0.9)
        stats = chow_liu.PairwiseStats.from_net(net, m=1000.0)
        forest, learned = chow_liu.chow_liu_diff_restricted(stats, 0.4, 0.1)
        self.assertEqual([], forest.edges())
        self.assertEqual(constants.PRODUCT, model.classify(learned))

    def test_keeps_bounded_chain(self):
        net = constructors.make_constant_chain(3, 0.3, 0.6)
        stats = chow_liu.PairwiseStats.from_net(net, m=10 ** 6)
        forest, _ = chow_liu.chow_liu_diff_restricted(stats, 0.2, 0.1)
        self.assertEqual([(0, 1), (1, 2)], forest.undirected_edges())

    def test_c_range(self):
        stats = chow_liu.PairwiseStats.from_samples([[0, 1], [1, 0]])
        self.assertRaises(exceptions.InvalidInput,
                          chow_liu.chow_liu_diff_restricted, stats, 0.5, 0.1)

    def test_realizable_min_count(self):
        self.assertAlmostEqual(8.0 / 0.01 * np.log(16.0 * 4 / 0.1),
                               chow_liu.realizable_min_count(0.1, 4, 0.1))


class TestLpEdgeCost(base.TestCase):

    def _stats(self, mu0, mu1, root=0.4):
        net = constructors.make_chain([(root, root), (mu0, mu1)])
        return chow_liu.PairwiseStats.from_net(net)

    def test_unconstrained(self):
        fit = chow_liu.lp_edge_cost(self._stats(0.3, 0.6), 1, 0, 0.1, 0.5)
        self.assertAlmostEqual(0.3, fit.q0)
        self.assertAlmostEqual(0.6, fit.q1)
        self.assertAlmostEqual(0.0, fit.kl)
        self.assertEqual([], fit.active)

    def test_box_constraint(self):
        fit = chow_liu.lp_edge_cost(self._stats(0.05, 0.3), 1, 0, 0.1, 0.5)
        self.assertAlmostEqual(0.1, fit.q0)
        self.assertEqual(['box_q0'], fit.active)

    def test_difference_constraint_matches_grid(self):
        for mu0, mu1, c, alpha in ((0.3, 0.9, 0.1, 0.3),
                                   (0.8, 0.15, 0.1, 0.2),
                                   (0.02, 0.97, 0.05, 0.5)):
            stats = self._stats(mu0, mu1)
            fit = chow_liu.lp_edge_cost(stats, 1, 0, c, alpha)
            self.assertIn('difference', fit.active)
            self.assertAlmostEqual(alpha, abs(fit.q1 - fit.q0), places=9)
            w = stats.parent_counts(0) / stats.m
            p = stats.conditional(1, 0, smoothing=False)
            _, _, grid_kl = oracles.grid_edge_fit(w, p, c, alpha)
            self.assertLessEqual(fit.kl, grid_kl + 1e-9)
            self.assertAlmostEqual(grid_kl, fit.kl, delta=1e-4)

    def test_cost_subtracts_information(self):
        stats = self._stats(0.3, 0.6)
        fit = chow_liu.lp_edge_cost(stats, 1, 0, 0.1, 0.5)
        self.assertLess(fit.cost, 0.0)

    def test_constraints(self):
        stats = self._stats(0.3, 0.6)
        self.assertRaises(exceptions.ContractViolation,
                          chow_liu.lp_edge_cost, stats, 1, 0, 0.5, 0.1)
        self.assertRaises(exceptions.ContractViolation,
                          chow_liu.lp_edge_cost, stats, 1, 0, 0.2, 0.7)

    def test_root_fit(self):
        stats = self._stats(0.3, 0.6, root=0.02)
        q, kl = chow_liu.root_fit(stats, 0, 0.1)
        self.assertAlmostEqual(0.1, q)
        self.assertAlmostEqual(oracles.bernoulli_kl(0.02, 0.1), kl)


class TestLpChowLiu(base.TestCase):

    @base.SLOW_PROPERTY
    @hypothesis.given(base.nets(min_n=2, max_n=3, max_parents=2),
                      st.sampled_from([(0.1, 0.3), (0.2, 0.2), (0.05, 0.6)]))
    def test_matches_brute_force(self, net, constraint):
        c, alpha = constraint
        stats = chow_liu.PairwiseStats.from_net(net)
        tree, learned = chow_liu.lp_chow_liu(stats, c, alpha)
        kl = model.kl_between(net, learned)
        best = oracles.best_bounded_tree_kl(net, c, alpha, step=0.01)
        self.assertLessEqual(kl, best + 1e-6)
        self.assertLessEqual(best, kl + 0.05)
        report = model.validate(learned)
        self.assertGreaterEqual(report.c_star, c - 1e-12)
        self.assertLessEqual(report.alpha_mu, alpha + 1e-9)
        self.assertNotEqual(constants.GENERAL, report.structure)

    def test_sigma_follows_mean_bound(self):
        # sqrt(q (1 - q)) is 1-Lipschitz on [0.15, 0.85]
        net = constructors.make_constant_chain(4, 0.1, 0.9)
        stats = chow_liu.PairwiseStats.from_net(net)
        _, learned = chow_liu.lp_chow_liu(stats, 0.2, 0.2)
        report = model.validate(learned)
        self.assertLessEqual(report.alpha_mu, 0.2 + 1e-9)
        self.assertLessEqual(report.alpha_sigma, 0.2 + 1e-9)

    def test_independent_samples_give_a_forest(self):
        stats = chow_liu.PairwiseStats.from_samples(utils.cube(3))
        tree, learned = chow_liu.lp_chow_liu(stats, 0.1, 0.3)
        self.assertEqual([0, 1, 2], tree.roots)
        self.assertEqual([], tree.edges())
        self.assertEqual(constants.PRODUCT, model.classify(learned))
