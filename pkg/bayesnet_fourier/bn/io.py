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

"""JSON file format for networks.

::

    {
      "cpt": [[0.5], [0.3, 0.7]],
      "n": 2,
      "name": "chain",
      "parents": [[], [0]],
      "provenance": {...}
    }

``cpt[v]`` lists P(X_v = 1 | row) for rows 0 .. 2^k - 1, the first parent
being the most significant bit of the row. ``name`` and ``provenance`` are
optional. The canonical serialization uses sorted keys, two-space indent
and a trailing newline, so load/dump round trips are byte-stable.
"""

import json

from oslo_log import log as logging

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import exceptions

LOG = logging.getLogger(__name__)


def to_dict(net, provenance=None):
    doc = {
        'n': net.n,
        'parents': [list(ps) for ps in net.parents],
        'cpt': [[float(p) for p in table] for table in net.cpt],
    }
    if net.name is not None:
        doc['name'] = net.name
    if provenance:
        doc['provenance'] = dict(provenance)
    return doc


def from_dict(doc):
    try:
        n = int(doc['n'])
        parents = doc['parents']
        cpt = doc['cpt']
    except (KeyError, TypeError, ValueError) as e:
        raise exceptions.InvalidInput(
            error_message='malformed network document: %s' % e)
    if len(parents) != n:
        raise exceptions.ShapeMismatch(expected='%d parent lists' % n,
                                       actual=len(parents))
    return model.BayesNet(parents, cpt, name=doc.get('name'))


def dumps(net, provenance=None):
    return json.dumps(to_dict(net, provenance), sort_keys=True,
                      indent=2) + '\n'


def loads(text):
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise exceptions.InvalidInput(
            error_message='network file is not JSON: %s' % e)
    return from_dict(doc)


def save(net, path, provenance=None):
    with open(path, 'w') as f:
        f.write(dumps(net, provenance))
    LOG.debug('Saved %(net)r to %(path)s', {'net': net, 'path': path})


def load(path):
    with open(path) as f:
        return loads(f.read())
