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

"""DNF formulas and decision trees used as learning targets.

The text form of a DNF has one term per line, each literal a signed
1-based variable index (``+3 -7`` is x_2 AND NOT x_6), ``true`` for the
empty term, ``#`` comments, and an optional ``disjoint`` line marking the
terms as mutually exclusive::

    # two exclusive terms
    disjoint
    +1 +2
    -1 +3
"""

import itertools

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils
from bayesnet_fourier.spectral import basis
from bayesnet_fourier.spectral import conjunction

LOG = logging.getLogger(__name__)

DISJOINT_ENUMERATION_LIMIT = 12
_TRUE = 'true'
_DISJOINT = 'disjoint'


class DnfFormula(object):

    range = constants.RANGE_01

    def __init__(self, terms, n=None, disjoint=False):
        self.terms = list(terms)
        widest = max([t.mask.bit_length() for t in self.terms] or [0])
        self.n = widest if n is None else int(n)
        if widest > self.n:
            raise exceptions.InvalidInput(
                error_message='terms mention variables beyond n=%d' % self.n)
        self.disjoint = bool(disjoint)
        if self.disjoint and not self.is_disjoint():
            raise exceptions.InvalidStructure(
                reason='terms of a disjoint DNF must be mutually exclusive')

    @property
    def s(self):
        return len(self.terms)

    def syntactically_disjoint(self):
        """Every pair of terms shares a contradictory literal."""
        return all(a.conflicts_with(b)
                   for a, b in itertools.combinations(self.terms, 2))

    def is_disjoint(self, limit=DISJOINT_ENUMERATION_LIMIT):
        if self.syntactically_disjoint():
            return True
        if self.n > limit:
            LOG.warning('Cannot certify disjointness of %(f)r over %(n)d '
                        'variables', {'f': self, 'n': self.n})
            return False
        X = utils.cube(self.n)
        hits = sum(t.evaluate_many(X) for t in self.terms)
        return bool(np.all(hits <= 1.0))

    def evaluate_many(self, X):
        X = np.asarray(X)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] < self.n:
            raise exceptions.ShapeMismatch(
                expected='assignments of length >= %d' % self.n,
                actual=X.shape)
        out = np.zeros(X.shape[0])
        for term in self.terms:
            out = np.maximum(out, term.evaluate_many(X))
        return out

    def __call__(self, x):
        return float(self.evaluate_many(x)[0])

    def __eq__(self, other):
        return (isinstance(other, DnfFormula) and
                (self.terms, self.n, self.disjoint) ==
                (other.terms, other.n, other.disjoint))

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def __repr__(self):
        return '<DnfFormula n=%d s=%d%s>' % (
            self.n, self.s, ' disjoint' if self.disjoint else '')


def dumps(formula):
    lines = [_DISJOINT] if formula.disjoint else []
    for term in formula.terms:
        lits = term.to_literals()
        lines.append(' '.join('%+d' % lit for lit in lits) if lits else _TRUE)
    return '\n'.join(lines) + '\n'


def loads(text, n=None):
    terms = []
    disjoint = False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if line == _DISJOINT:
            disjoint = True
            continue
        if line == _TRUE:
            terms.append(conjunction.Conjunction())
            continue
        try:
            terms.append(conjunction.Conjunction.from_literals(line.split()))
        except (ValueError, exceptions.InvalidInput) as e:
            raise exceptions.InvalidInput(
                error_message='bad DNF term on line %d: %s' % (lineno, e))
    return DnfFormula(terms, n=n, disjoint=disjoint)


def load(path, n=None):
    with open(path) as f:
        return loads(f.read(), n=n)


def dump(formula, path):
    with open(path, 'w') as f:
        f.write(dumps(formula))


class DecisionTree(object):
    """Binary decision tree; a leaf has ``value`` in {0, 1}.

    An internal node tests ``var`` and follows ``low`` on 0 and ``high``
    on 1.
    """

    range = constants.RANGE_01

    def __init__(self, var=None, low=None, high=None, value=None):
        self.var = var
        self.low = low
        self.high = high
        self.value = value
        self._check(frozenset())

    @classmethod
    def leaf(cls, value):
        if value not in (0, 1):
            raise exceptions.InvalidInput(
                error_message='leaf labels must be 0 or 1, got %r' % (value,))
        return cls(value=value)

    @classmethod
    def node(cls, var, low, high):
        return cls(var=var, low=low, high=high)

    @property
    def is_leaf(self):
        return self.value is not None

    def _check(self, seen):
        if self.is_leaf:
            return
        if self.var in seen:
            raise exceptions.InvalidStructure(
                reason='variable %d tested twice on one path' % self.var)
        for child in (self.low, self.high):
            if not isinstance(child, DecisionTree):
                raise exceptions.InvalidStructure(
                    reason='internal node %d lacks a child' % self.var)
            child._check(seen | {self.var})

    @property
    def depth(self):
        if self.is_leaf:
            return 0
        return 1 + max(self.low.depth, self.high.depth)

    @property
    def n(self):
        if self.is_leaf:
            return 0
        return max(self.var + 1, self.low.n, self.high.n)

    def paths(self, prefix=()):
        """(positive, negative, label) for every root-to-leaf path."""
        if self.is_leaf:
            pos = [v for v, b in prefix if b]
            neg = [v for v, b in prefix if not b]
            yield pos, neg, self.value
            return
        for path in self.low.paths(prefix + ((self.var, 0),)):
            yield path
        for path in self.high.paths(prefix + ((self.var, 1),)):
            yield path

    def to_dnf(self, n=None):
        """Disjoint DNF of the paths reaching 1-leaves."""
        terms = [conjunction.Conjunction.from_indices(pos, neg)
                 for pos, neg, label in self.paths() if label == 1]
        return DnfFormula(terms, n=self.n if n is None else n, disjoint=True)

    def evaluate_many(self, X):
        X = np.asarray(X)
        if X.ndim == 1:
            X = X[None, :]
        if self.is_leaf:
            return np.full(X.shape[0], float(self.value))
        go_high = X[:, self.var] == 1
        return np.where(go_high, self.high.evaluate_many(X),
                        self.low.evaluate_many(X))

    def __call__(self, x):
        return float(self.evaluate_many(x)[0])

    def __repr__(self):
        if self.is_leaf:
            return '<Leaf %d>' % self.value
        return '<DecisionTree depth=%d root=x%d>' % (self.depth, self.var)


def mq_adapter(f, range=constants.RANGE_PM1):
    """Membership-query oracle for a formula in the requested range."""
    if isinstance(f, DecisionTree):
        f = f.to_dnf()
    if range == constants.RANGE_01:
        return basis.BooleanFunction(f.evaluate_many, range=range,
                                     vectorized=True, name=repr(f))
    if range == constants.RANGE_PM1:
        return basis.BooleanFunction(
            lambda X: 2.0 * f.evaluate_many(X) - 1.0, range=range,
            vectorized=True, name=repr(f))
    raise exceptions.InvalidInput(
        error_message='unknown range tag %r' % (range,))


def truncate_dnf(formula, d):
    """Drop terms with more than d literals."""
    kept = [t for t in formula.terms if t.d <= d]
    LOG.debug('Truncating %(f)r at %(d)d keeps %(k)d terms',
              {'f': formula, 'd': d, 'k': len(kept)})
    return DnfFormula(kept, n=formula.n, disjoint=formula.disjoint)


def term_expectations(net, formula, limit=None):
    """E_D[t_i] for every term, by enumeration."""
    X, p, _ = basis.enumerate_cube(net, None, limit)
    return [float(np.dot(p, t.evaluate_many(X))) for t in formula.terms]


def random_dnf(n, terms, term_length, rng, disjoint=False):
    """Random DNF with distinct variables per term and random signs.

    With ``disjoint`` every term after the first copies a literal of each
    earlier term with the opposite sign, which certifies exclusivity; such
    terms may end up longer than ``term_length``.
    """
    if term_length > n:
        raise exceptions.InvalidInput(
            error_message='term_length %d exceeds n=%d' % (term_length, n))
    rng = utils.make_rng(rng)
    built = []
    for _ in range(terms):
        pos, neg = set(), set()
        if disjoint:
            for other in built:
                if other.conflicts_with(conjunction.Conjunction.from_indices(
                        pos, neg)):
                    continue
                lits = [lit for lit in other.to_literals()
                        if abs(lit) - 1 not in pos | neg]
                if not lits:
                    raise exceptions.InvalidInput(
                        error_message='cannot make %r exclusive of the '
                                      'terms drawn so far' % (other,))
                lit = lits[int(rng.integers(len(lits)))]
                (neg if lit > 0 else pos).add(abs(lit) - 1)
        free = [v for v in range(n) if v not in pos and v not in neg]
        need = max(term_length - len(pos) - len(neg), 0)
        for v in rng.choice(free, size=min(need, len(free)), replace=False):
            (pos if rng.random() < 0.5 else neg).add(int(v))
        built.append(conjunction.Conjunction.from_indices(pos, neg))
    return DnfFormula(built, n=n, disjoint=disjoint)


def random_decision_tree(n, depth, rng):
    """Complete tree of the given depth; variables distinct along paths."""
    rng = utils.make_rng(rng)

    def grow(level, used):
        if level == depth:
            return DecisionTree.leaf(int(rng.integers(2)))
        free = [v for v in range(n) if v not in used]
        if not free:
            return DecisionTree.leaf(int(rng.integers(2)))
        var = int(free[int(rng.integers(len(free)))])
        return DecisionTree.node(var, grow(level + 1, used | {var}),
                                 grow(level + 1, used | {var}))

    return grow(0, frozenset())
