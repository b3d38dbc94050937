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

"""Result records and their CSV / JSON / JSON-lines renderings."""

import csv
import hashlib
import io
import json
import os

from oslo_log import log as logging

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions

LOG = logging.getLogger(__name__)

FORMATS = ('csv', 'json')
BASE_COLUMNS = ('experiment', 'seed', 'inputs_digest', 'constants_version',
                'passed')
TRAILING_COLUMNS = ('wall_time',)


def _round(value):
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    return float('%.*g' % (constants.FLOAT_DIGITS, value))


def _normalize(value):
    if isinstance(value, dict):
        return dict((str(k), _normalize(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if hasattr(value, 'item'):
        # numpy scalars
        value = value.item()
    return _round(value)


def canonical_json(doc):
    return json.dumps(_normalize(doc), sort_keys=True, separators=(',', ':'))


def inputs_digest(experiment, settings, seed):
    """SHA-256 of the canonical JSON of (experiment, settings, seed)."""
    payload = canonical_json({'experiment': experiment,
                              'settings': settings, 'seed': seed})
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


class ResultRecord(object):
    """One row of an experiment's output.

    ``metrics`` holds scalars only; floats are kept at 12 significant
    digits so CSV and JSON renderings agree. ``passed`` is None for rows
    that carry no threshold of their own, such as the per-seed rows of a
    statistical experiment judged by its summary row.
    """

    def __init__(self, experiment, seed, inputs_digest, metrics, passed,
                 wall_time=0.0):
        self.experiment = experiment
        self.seed = seed
        self.inputs_digest = inputs_digest
        self.metrics = _normalize(metrics)
        self.passed = None if passed is None else bool(passed)
        self.wall_time = _round(float(wall_time))
        self.constants_version = constants.CONSTANTS_VERSION

    def to_dict(self):
        return {'experiment': self.experiment, 'seed': self.seed,
                'inputs_digest': self.inputs_digest,
                'constants_version': self.constants_version,
                'passed': self.passed, 'metrics': self.metrics,
                'wall_time': self.wall_time}

    @classmethod
    def from_dict(cls, doc):
        return cls(doc['experiment'], doc['seed'], doc['inputs_digest'],
                   doc['metrics'], doc['passed'], doc.get('wall_time', 0.0))

    def __eq__(self, other):
        return (isinstance(other, ResultRecord) and
                self.to_dict() == other.to_dict())

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def __repr__(self):
        return '<ResultRecord %s seed=%s passed=%s>' % (
            self.experiment, self.seed, self.passed)


def columns(records):
    metric_names = sorted(set(k for r in records for k in r.metrics))
    return list(BASE_COLUMNS) + metric_names + list(TRAILING_COLUMNS)


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return '%.*g' % (constants.FLOAT_DIGITS, value)
    if isinstance(value, (list, dict)):
        return canonical_json(value)
    return str(value)


def render_csv(records):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    header = columns(records)
    writer.writerow(header)
    for record in records:
        row = dict(record.to_dict(), **record.metrics)
        writer.writerow([_cell(row.get(name)) for name in header])
    return out.getvalue()


def render_json(records):
    return json.dumps([r.to_dict() for r in records], sort_keys=True,
                      indent=2) + '\n'


def emit(records, fmt, path):
    """Write records to path, replacing any previous content."""
    if fmt not in FORMATS:
        raise exceptions.InvalidInput(
            error_message='unknown result format %r' % (fmt,))
    text = render_csv(records) if fmt == 'csv' else render_json(records)
    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        os.makedirs(directory)
    with open(path, 'w') as f:
        f.write(text)
    LOG.info('Wrote %(count)d records to %(path)s',
             {'count': len(records), 'path': path})


def load_json(path):
    with open(path) as f:
        return [ResultRecord.from_dict(doc) for doc in json.load(f)]


class ResultLog(object):
    """Append-only JSON-lines log of every record ever produced."""

    def __init__(self, path):
        self.path = path

    def append(self, records):
        with open(self.path, 'a') as f:
            for record in records:
                f.write(canonical_json(record.to_dict()) + '\n')

    def read(self):
        if not os.path.exists(self.path):
            return []
        with open(self.path) as f:
            return [ResultRecord.from_dict(json.loads(line))
                    for line in f if line.strip()]


def all_passed(records):
    """Conjunction of the threshold checks; rows without one are skipped."""
    return all(r.passed is not False for r in records)
