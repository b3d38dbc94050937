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
from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.spectral import basis
from bayesnet_fourier.spectral import bounds
from bayesnet_fourier.spectral import conjunction
from bayesnet_fourier.tests import base


class TestFixedConstructors(base.TestCase):

    def test_product(self):
        net = constructors.make_product([0.2, 0.7])
        self.assertEqual(((), ()), net.parents)
        self.assertRaises(exceptions.InvalidInput, constructors.make_product,
                          [])
        self.assertRaises(exceptions.InvalidInput, constructors.make_product,
                          [0.0])

    def test_chain_root_uses_first_row(self):
        net = constructors.make_chain([(0.2, 0.9), (0.3, 0.6)])
        self.assertAllClose([0.2], net.cpt[0])
        self.assertEqual(((), (0,)), net.parents)

    def test_chain_rejects_bad_pairs(self):
        self.assertRaises(exceptions.ShapeMismatch, constructors.make_chain,
                          [(0.2, 0.3, 0.4)])

    def test_gstar_shape(self):
        net = constructors.make_gstar(3, 2, 0.01, 0.49, 0.07, 0.56)
        ys, vs = constructors.gstar_layout(3, 2)
        self.assertEqual(3 * 2 + 2, net.n)
        self.assertEqual([[0, 1], [2, 3], [4, 5]], ys)
        self.assertEqual([6, 7], vs)
        # V_1 has V_2 and the leaf of chain 1 as parents
        self.assertEqual((7, 1), net.parents[6])
        self.assertEqual((3, 5), net.parents[7])
        self.assertAllClose([0.5, 0.01, 0.01, 0.5], net.cpt[6])
        self.assertEqual(constants.GENERAL, model.classify(net))

    def test_gstar_rejects_small_n(self):
        self.assertRaises(exceptions.InvalidInput, constructors.make_gstar,
                          1, 2, 0.01, 0.49, 0.07, 0.56)


class TestRandomConstructors(base.TestCase):

    @base.PROPERTY
    @hypothesis.given(st.integers(min_value=1, max_value=8),
                      st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_random_chain_is_bounded(self, n, seed):
        net = constructors.random_chain(n, seed, c=0.1, alpha=0.3)
        report = model.validate(net)
        self.assertGreaterEqual(report.c_star, 0.1 - 1e-12)
        self.assertLessEqual(report.alpha, 0.3 + 1e-12)
        self.assertIn(report.structure, (constants.PRODUCT, constants.CHAIN))

    @base.PROPERTY
    @hypothesis.given(st.integers(min_value=2, max_value=8),
                      st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_random_tree_is_tree(self, n, seed):
        net = constructors.random_tree(n, seed, c=0.1, alpha=0.3)
        self.assertEqual(1, sum(1 for ps in net.parents if not ps))
        self.assertLessEqual(model.validate(net).alpha, 0.3 + 1e-12)

    def test_random_forest_roots(self):
        net = constructors.random_forest(6, 4, roots=3)
        self.assertEqual(3, sum(1 for ps in net.parents if not ps))
        self.assertRaises(exceptions.InvalidInput,
                          constructors.random_forest, 3, 4, roots=4)

    def test_random_dag_in_degree(self):
        net = constructors.random_dag(8, 5, max_parents=2)
        self.assertLessEqual(max(len(ps) for ps in net.parents), 2)

    def test_seeded(self):
        self.assertEqual(constructors.random_tree(6, 9),
                         constructors.random_tree(6, 9))

    def test_kjunta_parents(self):
        net = constructors.make_kjunta(6, [1, 3], 2)
        for v in (0, 2, 4, 5):
            self.assertEqual((1, 3), net.parents[v])
        for v in (1, 3):
            self.assertTrue(set(net.parents[v]) <= set([1, 3]))

    def test_kjunta_conditional_independence(self):
        net = constructors.make_kjunta(4, [0], 2)
        p = net.probabilities().reshape((2,) * 4)
        # axes are reversed: axis 3 is x_0
        for j in (0, 1):
            block = p[:, :, :, j]
            block = block / block.sum()
            # x_3 and x_2 given x_0
            self.assertAllClose(np.outer(block.sum(axis=(1, 2)),
                                         block.sum(axis=(0, 2))),
                                block.sum(axis=2), atol=1e-12)

    @base.PROPERTY
    @hypothesis.given(st.data(), st.integers(min_value=0, max_value=2 ** 16))
    def test_kjunta_conjunction_sparsity(self, data, seed):
        n = 6
        junta = data.draw(st.lists(st.integers(0, n - 1), min_size=1,
                                   max_size=3, unique=True))
        literals = data.draw(st.lists(st.integers(0, n - 1), min_size=1,
                                      max_size=3, unique=True))
        signs = data.draw(st.lists(st.booleans(), min_size=len(literals),
                                   max_size=len(literals)))
        net = constructors.make_kjunta(n, junta, seed, c=0.2)
        f = conjunction.Conjunction.from_indices(
            [v for v, s in zip(literals, signs) if s],
            [v for v, s in zip(literals, signs) if not s])
        k, d = len(junta), f.d
        dense = basis.spectrum_vector(net, f)
        # only subsets of the junta and the literals survive
        self.assertLessEqual(np.count_nonzero(np.abs(dense) > 1e-9),
                             2 ** (k + d))
        self.assertLessEqual(float(np.sum(np.abs(dense))),
                             bounds.kjunta_bound(k, d) + 1e-9)

    def test_bad_ranges(self):
        self.assertRaises(exceptions.InvalidInput,
                          constructors.random_chain, 3, 1, c=0.6)
        self.assertRaises(exceptions.InvalidInput,
                          constructors.make_kjunta, 3, [0, 0], 1)
