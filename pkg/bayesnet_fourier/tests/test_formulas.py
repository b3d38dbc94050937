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
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils
from bayesnet_fourier.learning import formulas
from bayesnet_fourier.spectral import conjunction
from bayesnet_fourier.tests import base

DNF_TEXT = """\
# two exclusive terms
disjoint
+1 +2
-1 +3   # trailing comment
"""


def _tree():
    leaf = formulas.DecisionTree.leaf
    return formulas.DecisionTree.node(
        0, formulas.DecisionTree.node(2, leaf(0), leaf(1)),
        formulas.DecisionTree.node(1, leaf(1), leaf(0)))


class TestDnfText(base.TestCase):

    def test_loads(self):
        f = formulas.loads(DNF_TEXT)
        self.assertTrue(f.disjoint)
        self.assertEqual(3, f.n)
        self.assertEqual(2, f.s)
        self.assertEqual(conjunction.Conjunction.from_literals([1, 2]),
                         f.terms[0])

    def test_dumps_then_loads(self):
        f = formulas.loads(DNF_TEXT, n=5)
        self.assertEqual('disjoint\n+1 +2\n-1 +3\n', formulas.dumps(f))
        self.assertEqual(f, formulas.loads(formulas.dumps(f), n=5))

    def test_true_term(self):
        f = formulas.loads('true\n', n=2)
        self.assertEqual(1.0, f([0, 0]))
        self.assertEqual('true\n', formulas.dumps(f))

    def test_bad_term(self):
        e = self.assertRaises(exceptions.InvalidInput, formulas.loads,
                              '+1\n+2 x\n')
        self.assertIn('line 2', str(e))

    def test_overlapping_terms_are_not_disjoint(self):
        self.assertRaises(exceptions.InvalidStructure, formulas.loads,
                          'disjoint\n+1\n+2\n')

    def test_disjointness_checks(self):
        # the two terms are exclusive through x1
        f = formulas.DnfFormula(
            [conjunction.Conjunction.from_indices([0, 1]),
             conjunction.Conjunction.from_indices([0, 2], [1])],
            disjoint=True)
        self.assertTrue(f.syntactically_disjoint())
        g = formulas.DnfFormula(
            [conjunction.Conjunction.from_indices([0]),
             conjunction.Conjunction.from_indices([1])])
        self.assertFalse(g.is_disjoint())

    def test_terms_beyond_n(self):
        self.assertRaises(exceptions.InvalidInput, formulas.loads, '+4\n',
                          n=2)

    def test_file_round_trip(self):
        path = os.path.join(self.useFixture(fixtures.TempDir()).path,
                            'f.dnf')
        f = formulas.loads(DNF_TEXT)
        formulas.dump(f, path)
        self.assertEqual(f, formulas.load(path))

    def test_evaluate(self):
        f = formulas.loads(DNF_TEXT)
        self.assertAllClose([1.0, 1.0, 0.0, 0.0],
                            f.evaluate_many([[1, 1, 0], [0, 0, 1],
                                             [1, 0, 1], [0, 1, 0]]))
        self.assertRaises(exceptions.ShapeMismatch, f.evaluate_many,
                          [[1, 1]])


class TestDecisionTree(base.TestCase):

    def test_shape(self):
        tree = _tree()
        self.assertEqual(2, tree.depth)
        self.assertEqual(3, tree.n)
        self.assertEqual(4, len(list(tree.paths())))

    def test_rejects_repeated_variable(self):
        leaf = formulas.DecisionTree.leaf
        inner = formulas.DecisionTree.node(0, leaf(0), leaf(1))
        self.assertRaises(exceptions.InvalidStructure,
                          formulas.DecisionTree.node, 0, inner, leaf(1))
        self.assertRaises(exceptions.InvalidInput, leaf, 2)

    def test_to_dnf_agrees(self):
        tree = _tree()
        dnf = tree.to_dnf()
        self.assertTrue(dnf.disjoint)
        X = utils.cube(3)
        self.assertAllClose(tree.evaluate_many(X), dnf.evaluate_many(X))

    @base.PROPERTY
    @hypothesis.given(st.integers(min_value=1, max_value=6),
                      st.integers(min_value=0, max_value=4),
                      st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_random_tree_to_dnf(self, n, depth, seed):
        tree = formulas.random_decision_tree(n, depth, seed)
        self.assertLessEqual(tree.depth, min(depth, n))
        dnf = tree.to_dnf(n)
        X = utils.cube(n)
        self.assertAllClose(tree.evaluate_many(X), dnf.evaluate_many(X))


class TestRandomDnf(base.TestCase):

    @base.PROPERTY
    @hypothesis.given(st.integers(min_value=2, max_value=8),
                      st.integers(min_value=1, max_value=4),
                      st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_disjoint_terms_conflict(self, n, s, seed):
        try:
            f = formulas.random_dnf(n, s, 2, seed, disjoint=True)
        except exceptions.InvalidInput:
            # n too small to separate every earlier term
            return
        self.assertTrue(f.syntactically_disjoint())
        self.assertEqual(s, f.s)

    def test_term_lengths(self):
        f = formulas.random_dnf(10, 5, 3, 7)
        self.assertEqual([3] * 5, [t.d for t in f.terms])
        self.assertFalse(f.disjoint)

    def test_term_length_too_long(self):
        self.assertRaises(exceptions.InvalidInput, formulas.random_dnf, 3, 2,
                          4, 1)


class TestHelpers(base.TestCase):

    def test_truncate(self):
        f = formulas.loads('+1\n+1 +2 +3\n-2 +4\n')
        g = formulas.truncate_dnf(f, 2)
        self.assertEqual([1, 2], [t.d for t in g.terms])
        self.assertEqual(f.n, g.n)

    def test_mq_adapter(self):
        tree = _tree()
        pm = formulas.mq_adapter(tree)
        zo = formulas.mq_adapter(tree, constants.RANGE_01)
        X = utils.cube(3)
        self.assertAllClose(2.0 * zo.evaluate_many(X) - 1.0,
                            pm.evaluate_many(X))
        self.assertRaises(exceptions.InvalidInput, formulas.mq_adapter, tree,
                          'bits')

    def test_term_expectations(self):
        net = constructors.make_product([0.5, 0.25, 0.5])
        f = formulas.loads('+1 +2\n-3\n')
        self.assertAllClose([0.125, 0.5],
                            formulas.term_expectations(net, f))

    def test_disjoint_expectations_add_up(self):
        net = constructors.make_constant_chain(3, 0.3, 0.6)
        f = _tree().to_dnf()
        X = utils.cube(3)
        self.assertAlmostEqual(
            float(np.dot(net.probabilities(X), f.evaluate_many(X))),
            sum(formulas.term_expectations(net, f)))
