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

import hypothesis
from hypothesis import strategies as st
import numpy as np

from bayesnet_fourier.bn import constructors
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.learning import formulas
from bayesnet_fourier.learning import km
from bayesnet_fourier.spectral import basis
from bayesnet_fourier.tests import base


def _parity01():
    # phi_0 phi_1 under the uniform distribution
    return basis.BooleanFunction(
        lambda X: (2.0 * X[:, 0] - 1.0) * (2.0 * X[:, 1] - 1.0),
        range=constants.RANGE_PM1, vectorized=True, name='parity01')


class TestKmParams(base.TestCase):

    def test_ranges(self):
        self.assertRaises(exceptions.InvalidInput, km.KmParams, 0.0, 0.5, 0.5)
        self.assertRaises(exceptions.InvalidInput, km.KmParams, 0.5, 1.5, 0.5)
        self.assertRaises(exceptions.InvalidInput, km.KmParams, 0.5, 0.5, 1.0)
        km.KmParams(1.0, 1.0, 0.5)

    def test_sample_budget(self):
        budget = km.sample_budget(km.KmParams(0.5, 0.5, 0.5), 4)
        self.assertEqual(51200, budget.m1)
        self.assertEqual(640, budget.m2)
        self.assertAlmostEqual(0.5 / 80.0, budget.delta_prime)

    def test_sample_budget_exceeded(self):
        e = self.assertRaises(exceptions.SampleBudgetExceeded,
                              km.sample_budget, km.KmParams(0.01, 0.5, 0.1),
                              10)
        self.assertEqual(constants.MAX_SAMPLE_BUDGET, e.limit)
        self.assertIsInstance(e, exceptions.CapacityExceeded)

    def test_evaluation_cap(self):
        self.assertEqual(2 * 4 * 5 * 4 + 1,
                         km.g_evaluation_cap(km.KmParams(0.5, 0.5, 0.5), 5))


class TestExactKm(base.TestCase):

    def test_finds_parity(self):
        net = constructors.make_product([0.5] * 3)
        out = km.km_run(net, _parity01(), km.KmParams(0.5, 0.5, 0.5),
                        mode=constants.MODE_EXACT)
        self.assertEqual([0b011], out.sets)
        self.assertAlmostEqual(1.0, out.coeffs[0b011])
        self.assertEqual(constants.MODE_EXACT, out.mode)
        self.assertIsNone(out.budget)

    @base.PROPERTY
    @hypothesis.given(base.nets(max_n=6), st.data(),
                      st.sampled_from([0.1, 0.2, 0.3]))
    def test_returns_heavy_sets(self, net, data, theta):
        table = np.array(data.draw(st.lists(
            st.sampled_from([-1.0, 1.0]), min_size=1 << net.n,
            max_size=1 << net.n)))
        weights = 1 << np.arange(net.n)
        f = basis.BooleanFunction(
            lambda X: table[np.asarray(X, dtype=np.int64) @ weights],
            vectorized=True)
        dense = basis.spectrum_vector(net, f)
        # stay clear of the threshold itself
        hypothesis.assume(np.all(np.abs(np.abs(dense) - theta) > 1e-9))
        out = km.km_run(net, f, km.KmParams(theta, theta, 0.5),
                        mode=constants.MODE_EXACT)
        heavy = [int(m) for m in np.nonzero(np.abs(dense) >= theta)[0]]
        self.assertEqual(heavy, out.sets)
        for mask in heavy:
            self.assertAlmostEqual(dense[mask], out.coeffs[mask])

    def test_recovers_planted_sparse_spectrum(self):
        net = constructors.random_tree(8, 4, c=0.2, alpha=0.1)
        planted = basis.SparseSpectrum(8, {0b00000001: 0.6,
                                           0b00010100: -0.4,
                                           0b11000000: 0.3})
        f = basis.BooleanFunction(
            lambda X: basis.evaluate_spectrum(net, planted, X),
            vectorized=True, name='planted')
        out = km.km_run(net, f, km.KmParams(0.2, 0.2, 0.5),
                        mode=constants.MODE_EXACT)
        self.assertEqual(planted.sets, out.sets)
        for mask, value in planted.items():
            self.assertAlmostEqual(value, out.coeffs[mask])

    def test_g_alpha(self):
        net = constructors.make_product([0.5] * 3)
        f = _parity01()
        self.assertAlmostEqual(1.0, km.estimate_g_alpha_sq(
            net, f, [0], None, None, mode=constants.MODE_EXACT))
        self.assertAlmostEqual(0.0, km.estimate_g_alpha_sq(
            net, f, [1], None, None, mode=constants.MODE_EXACT))
        self.assertAlmostEqual(1.0, km.estimate_g_alpha_sq(
            net, f, [1, 0], None, None, mode=constants.MODE_EXACT))
        self.assertRaises(exceptions.InvalidInput, km.estimate_g_alpha_sq,
                          net, f, [2], None, None, constants.MODE_EXACT)

    def test_unknown_mode(self):
        net = constructors.make_product([0.5] * 2)
        self.assertRaises(exceptions.InvalidInput, km.km_run, net,
                          _parity01(), km.KmParams(0.5, 0.5, 0.5), 'guess')


class TestSampledKm(base.TestCase):

    def test_finds_parity(self):
        net = constructors.make_product([0.5] * 3)
        params = km.KmParams(0.5, 0.2, 0.1)
        out = km.km_run(net, _parity01(), params, rng=5)
        self.assertEqual([0b011], out.sets)
        self.assertAlmostEqual(1.0, out.coeffs[0b011], delta=0.2)
        self.assertGreater(out.stats.queries, 0)
        self.assertEqual(out.budget.m1 * 3 * out.stats.g_alpha_evaluations +
                         out.budget.m2 * out.stats.coefficient_estimates,
                         out.stats.samples)
        self.assertEqual(2 * out.budget.m1 * out.stats.g_alpha_evaluations +
                         out.budget.m2 * out.stats.coefficient_estimates,
                         out.stats.queries)
        dense = basis.spectrum_vector(net, _parity01())
        for mask in out.sets:
            self.assertGreaterEqual(abs(dense[mask]), params.theta / 2.0)
        doc = out.to_dict()
        self.assertEqual([[[0, 1], out.coeffs[0b011]]], doc['coefficients'])

    def test_g_alpha_estimate(self):
        net = constructors.make_constant_chain(3, 0.3, 0.6)
        f = _parity01()
        exact = km.estimate_g_alpha_sq(net, f, [0], None, None,
                                       mode=constants.MODE_EXACT)
        draws = km.z3_samples(net, f, [0], 200000, 3)
        self.assertAlmostEqual(exact, float(np.mean(draws)), delta=0.02)

    def test_z3_variance(self):
        net = constructors.random_tree(6, 8, c=0.2, alpha=0.1)
        f = formulas.mq_adapter(formulas.loads('+1 -3\n+2 +5\n', n=6),
                                constants.RANGE_PM1)
        for alpha in ([1], [0, 1], [1, 1]):
            draws = km.z3_samples(net, f, alpha, 50000, 6)
            self.assertLessEqual(float(np.var(draws)),
                                 constants.KM_Z3_VARIANCE + 0.1)

    def test_seeded(self):
        net = constructors.make_product([0.5] * 3)
        params = km.KmParams(0.5, 0.5, 0.5)
        a = km.km_run(net, _parity01(), params, rng=11)
        b = km.km_run(net, _parity01(), params, rng=11)
        self.assertEqual(a.coeffs.items(), b.coeffs.items())


class TestEvalSparse(base.TestCase):

    def test_single_and_batch(self):
        net = constructors.make_product([0.5] * 2)
        poly = basis.SparseSpectrum(2, {0: 0.5, 0b11: 1.0})
        self.assertAlmostEqual(1.5, km.eval_sparse(poly, net, [1, 1]))
        self.assertAllClose([1.5, -0.5],
                            km.eval_sparse(poly, net, [[0, 0], [0, 1]]))
